//! `cutdepth synth`: generate a deterministic synthetic RGB-D dataset.

use std::fs;
use std::path::PathBuf;

use cutdepth_core::io::{generate_scene, save_pair, Manifest, ManifestEntry, SceneSpec};
use cutdepth_core::rng::derive_seed;

use crate::summary::RunSummary;

use super::run_indexed;

#[derive(Clone, Debug)]
pub struct SynthParams {
    pub count: usize,
    pub width: u32,
    pub height: u32,
    pub boxes: u32,
    /// (near, far) scene depth bounds in meters.
    pub depth_range: (f64, f64),
    pub seed: u64,
    pub workers: usize,
    pub depth_scale: f64,
    pub out_dir: PathBuf,
}

/// Writes `count` scenes (ids `scene_00000`..) plus `manifest.jsonl` under
/// `out_dir`. Scene `i` is generated from seed `derive_seed(seed, i)`, so
/// the whole tree is a pure function of the parameters.
pub fn synth(params: &SynthParams) -> anyhow::Result<RunSummary> {
    let images_dir = params.out_dir.join("images");
    fs::create_dir_all(&images_dir)?;

    let results = run_indexed(params.workers, params.count, |i| {
        let id = format!("scene_{i:05}");
        let spec = SceneSpec {
            width: params.width,
            height: params.height,
            n_boxes: params.boxes,
            depth_range: params.depth_range,
            seed: derive_seed(params.seed, i as u64),
        };
        let rgb_rel = format!("images/{id}_rgb.png");
        let depth_rel = format!("images/{id}_depth.png");
        let outcome = generate_scene(&spec).and_then(|pair| {
            save_pair(
                &pair,
                params.out_dir.join(&rgb_rel),
                params.out_dir.join(&depth_rel),
                params.depth_scale,
            )
        });
        match outcome {
            Ok(()) => Ok(ManifestEntry {
                id,
                rgb_path: rgb_rel,
                depth_path: depth_rel,
            }),
            Err(e) => Err((id, e.to_string())),
        }
    })?;

    let mut summary = RunSummary::default();
    let mut manifest = Manifest::new(params.depth_scale, &params.out_dir)?;
    for result in results {
        match result {
            Ok(entry) => {
                manifest.push(entry)?;
                summary.record_ok();
            }
            Err((id, error)) => summary.record_error(id, error),
        }
    }
    manifest.save(params.out_dir.join("manifest.jsonl"))?;
    Ok(summary)
}
