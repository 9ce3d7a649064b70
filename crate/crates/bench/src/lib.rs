//! Shared input builders for the benchmarks.

use cutdepth_core::io::{generate_scene, SceneSpec};
use cutdepth_core::{DepthMap, RgbImage, RngStream, SamplePair};

/// Training-resolution synthetic pair (416 rows x 544 columns).
pub fn training_size_pair(seed: u64) -> SamplePair {
    scene_pair(544, 416, seed)
}

/// Test-resolution synthetic pair (480 rows x 640 columns).
pub fn test_size_pair(seed: u64) -> SamplePair {
    scene_pair(640, 480, seed)
}

pub fn scene_pair(width: u32, height: u32, seed: u64) -> SamplePair {
    generate_scene(&SceneSpec {
        width,
        height,
        n_boxes: 8,
        depth_range: (1.0, 10.0),
        seed,
    })
    .expect("valid scene spec")
}

/// Noisy prediction derived from a ground-truth depth map.
pub fn perturbed_depth(gt: &DepthMap, seed: u64) -> DepthMap {
    let mut rng = RngStream::new(seed);
    DepthMap::new(
        gt.width(),
        gt.height(),
        gt.data()
            .iter()
            .map(|&d| {
                if d > 0.0 {
                    d * (0.9 + 0.2 * rng.uniform_draw())
                } else {
                    0.0
                }
            })
            .collect(),
    )
    .expect("perturbation preserves validity")
}

/// Dense random image for photometric benchmarks.
pub fn random_rgb(width: u32, height: u32, seed: u64) -> RgbImage {
    let mut rng = RngStream::new(seed);
    RgbImage::from_fn(width, height, |_, _| {
        [rng.uniform_draw(), rng.uniform_draw(), rng.uniform_draw()]
    })
    .expect("valid dimensions")
}
