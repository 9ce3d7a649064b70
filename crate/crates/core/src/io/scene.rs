//! Synthetic RGB-D scenes for desk-scale experiments.
//!
//! A scene is a background plane drawn from the far 15% of the depth range
//! with `n_boxes` axis-aligned rectangles at random nearer depths, painted
//! far to near so closer boxes occlude farther ones. Box depths are
//! jittered on a lattice over the near 75% of the range, which keeps every
//! pair of surfaces at least `0.375 * range / n_boxes` meters apart (and
//! boxes at least `0.1 * range` from the background). RGB brightness falls
//! off with depth (shade 0.7 at the near bound, 0.15 at the far bound) and
//! a per-box chromatic albedo is normalized so that luminance equals the
//! shade exactly. The shade is a strictly monotone function of depth and
//! every surface has a distinct depth, so every depth discontinuity is also
//! a luminance edge — the property the edge analyzer relies on. With the
//! default edge threshold of 0.1 the implied luminance steps stay above
//! threshold for up to 8 boxes.

use crate::augment::SamplePair;
use crate::error::{Error, Result};
use crate::image::{DepthMap, RgbImage};
use crate::rng::RngStream;

/// Shade (luminance) of the nearest / farthest surface.
const SHADE_NEAR: f64 = 0.7;
const SHADE_FAR: f64 = 0.15;

/// Parameters for [`generate_scene`]. The same spec always yields the same
/// scene, bit for bit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SceneSpec {
    pub width: u32,
    pub height: u32,
    pub n_boxes: u32,
    /// (near, far) depth bounds in meters; boxes sit at distinct levels in
    /// this interval and the background at the far bound.
    pub depth_range: (f64, f64),
    pub seed: u64,
}

impl SceneSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width < 2 || self.height < 2 {
            return Err(Error::EmptyDimensions {
                width: self.width,
                height: self.height,
            });
        }
        if self.n_boxes == 0 {
            return Err(Error::InvalidParameter {
                name: "n_boxes",
                value: 0.0,
                expected: ">= 1",
            });
        }
        let (lo, hi) = self.depth_range;
        if !lo.is_finite() || lo <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "depth_range.near",
                value: lo,
                expected: "> 0",
            });
        }
        if !hi.is_finite() || hi <= lo {
            return Err(Error::InvalidParameter {
                name: "depth_range.far",
                value: hi,
                expected: "> near",
            });
        }
        Ok(())
    }
}

struct SceneBox {
    l: u32,
    u: u32,
    w: u32,
    h: u32,
    depth: f64,
    albedo: [f64; 3],
}

/// Generates a scene. Draw order: one background-depth draw, then seven
/// draws per box (depth jitter, width, height, column, row, two albedo
/// factors), boxes nearest first; painting happens afterwards, farthest
/// first.
pub fn generate_scene(spec: &SceneSpec) -> Result<SamplePair> {
    spec.validate()?;
    let (near, far) = spec.depth_range;
    let range = far - near;
    let n = spec.n_boxes;
    let mut rng = RngStream::new(spec.seed);

    let shade = |depth: f64| SHADE_FAR + (SHADE_NEAR - SHADE_FAR) * (far - depth) / range;

    let bg_depth = near + range * rng.uniform_in(0.85, 1.0);

    let min_w = (spec.width / 6).max(1);
    let max_w = (spec.width / 2).max(1);
    let min_h = (spec.height / 6).max(1);
    let max_h = (spec.height / 2).max(1);

    let mut boxes = Vec::with_capacity(n as usize);
    for i in 0..n {
        // jittered lattice slot keeps surface depths distinct and separated
        let depth = near + 0.75 * range * (i as f64 + rng.uniform_in(0.25, 0.75)) / n as f64;
        let w = min_w + rng.index_below((max_w - min_w + 1) as usize) as u32;
        let h = min_h + rng.index_below((max_h - min_h + 1) as usize) as u32;
        let l = rng.index_below((spec.width - w + 1) as usize) as u32;
        let u = rng.index_below((spec.height - h + 1) as usize) as u32;
        // albedo factors sum to 3 so luminance stays equal to the shade
        let cr = rng.uniform_in(0.8, 1.2);
        let cg = rng.uniform_in(0.8, 1.2);
        boxes.push(SceneBox {
            l,
            u,
            w,
            h,
            depth,
            albedo: [cr, cg, 3.0 - cr - cg],
        });
    }

    let bg_shade = shade(bg_depth);
    let mut depth_data = vec![bg_depth; spec.width as usize * spec.height as usize];
    let mut rgb_data = vec![bg_shade; spec.width as usize * spec.height as usize * 3];

    // painter's algorithm: farthest (largest depth) first
    boxes.sort_by(|a, b| b.depth.partial_cmp(&a.depth).expect("finite depths"));
    for bx in &boxes {
        let s = shade(bx.depth);
        for y in bx.u..bx.u + bx.h {
            for x in bx.l..bx.l + bx.w {
                let i = y as usize * spec.width as usize + x as usize;
                depth_data[i] = bx.depth;
                for k in 0..3 {
                    rgb_data[i * 3 + k] = s * bx.albedo[k];
                }
            }
        }
    }

    let rgb = RgbImage::new(spec.width, spec.height, rgb_data)?;
    let depth = DepthMap::new(spec.width, spec.height, depth_data)?;
    SamplePair::new(rgb, depth)
}
