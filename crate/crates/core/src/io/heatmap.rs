//! Depth visualization: near is blue, far is red.

use crate::error::{Error, Result};
use crate::image::{DepthMap, RgbImage};

/// Colors valid depth on a fixed blue-to-red map over [lo, hi] meters,
/// clamping values outside the range; invalid (0) pixels are black.
///
/// The map is piecewise linear through five anchors at t = 0, 1/4, 1/2,
/// 3/4, 1: blue (0,0,1), cyan (0,1,1), green (0,1,0), yellow (1,1,0),
/// red (1,0,0).
pub fn depth_heatmap(depth: &DepthMap, lo: f64, hi: f64) -> Result<RgbImage> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidParameter {
            name: "lo",
            value: lo,
            expected: "< hi (both finite)",
        });
    }
    RgbImage::from_fn(depth.width(), depth.height(), |x, y| {
        let d = depth.value(x, y);
        if d <= 0.0 {
            return [0.0; 3];
        }
        color_at(((d - lo) / (hi - lo)).clamp(0.0, 1.0))
    })
}

fn color_at(t: f64) -> [f64; 3] {
    if t < 0.25 {
        [0.0, t * 4.0, 1.0]
    } else if t < 0.5 {
        [0.0, 1.0, 1.0 - (t - 0.25) * 4.0]
    } else if t < 0.75 {
        [(t - 0.5) * 4.0, 1.0, 0.0]
    } else {
        [1.0, 1.0 - (t - 0.75) * 4.0, 0.0]
    }
}
