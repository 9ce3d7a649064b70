//! Edge extraction and the edge-preservation score.
//!
//! The score quantifies how much of the original image's edge structure an
//! augmentation keeps inside the pasted region. Depth-pasting scores high
//! because depth discontinuities sit at the same pixel positions as the
//! RGB edges they produce; fills and foreign patches score low.

use crate::error::{Error, Result};
use crate::image::{Plane, RgbImage};
use crate::region::{PixelMask, Region};

/// Default binarization threshold for gradient magnitudes of [0, 1] planes.
pub const DEFAULT_EDGE_THRESHOLD: f64 = 0.1;

/// 3x3 Sobel gradient magnitude, binarized at `threshold`. Border pixels
/// are always 0 (no valid 3x3 neighborhood).
pub fn edge_map(plane: &Plane, threshold: f64) -> Result<PixelMask> {
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "threshold",
            value: threshold,
            expected: "> 0",
        });
    }
    let (w, h) = (plane.width(), plane.height());
    Ok(PixelMask::from_fn(w, h, |x, y| {
        if x == 0 || y == 0 || x + 1 >= w || y + 1 >= h {
            return false;
        }
        let v = |dx: i64, dy: i64| plane.value((x as i64 + dx) as u32, (y as i64 + dy) as u32);
        let gx = v(1, -1) + 2.0 * v(1, 0) + v(1, 1) - v(-1, -1) - 2.0 * v(-1, 0) - v(-1, 1);
        let gy = v(-1, 1) + 2.0 * v(0, 1) + v(1, 1) - v(-1, -1) - 2.0 * v(0, -1) - v(1, -1);
        (gx * gx + gy * gy).sqrt() > threshold
    }))
}

/// Intersection-over-union of the luminance edge maps of `original` and
/// `augmented`, restricted to `region`. Returns 1 when neither image has an
/// edge pixel inside the region.
pub fn edge_preservation_score(
    original: &RgbImage,
    augmented: &RgbImage,
    region: Region,
    threshold: f64,
) -> Result<f64> {
    if original.width() != augmented.width() || original.height() != augmented.height() {
        return Err(Error::ShapeMismatch {
            left_width: original.width(),
            left_height: original.height(),
            right_width: augmented.width(),
            right_height: augmented.height(),
        });
    }
    region.validate_for(original.width(), original.height())?;
    let before = edge_map(&original.luminance(), threshold)?;
    let after = edge_map(&augmented.luminance(), threshold)?;
    let mut intersection = 0u64;
    let mut union = 0u64;
    for y in region.u..region.bottom() {
        for x in region.l..region.right() {
            let (a, b) = (before.get(x, y), after.get(x, y));
            if a && b {
                intersection += 1;
            }
            if a || b {
                union += 1;
            }
        }
    }
    if union == 0 {
        Ok(1.0)
    } else {
        Ok(intersection as f64 / union as f64)
    }
}
