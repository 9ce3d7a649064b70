//! `cutdepth heatmap`: render every depth map of a manifest as a
//! blue-(near)-to-red-(far) PNG.

use std::fs;
use std::path::PathBuf;

use cutdepth_core::io::{depth_heatmap, load_depth, save_rgb, Manifest};

use crate::summary::RunSummary;

use super::run_indexed;

#[derive(Clone, Debug)]
pub struct HeatmapParams {
    pub manifest_path: PathBuf,
    /// Color range in meters; depths outside clamp to the end colors.
    pub lo: f64,
    pub hi: f64,
    pub workers: usize,
    pub out_dir: PathBuf,
}

/// Writes `<id>_heatmap.png` per entry under `out_dir`.
pub fn heatmap(params: &HeatmapParams) -> anyhow::Result<RunSummary> {
    let manifest = Manifest::load(&params.manifest_path)?;
    fs::create_dir_all(&params.out_dir)?;
    let results = run_indexed(params.workers, manifest.len(), |i| {
        let entry = &manifest.entries()[i];
        let outcome = load_depth(manifest.depth_path(entry), manifest.depth_scale())
            .and_then(|depth| depth_heatmap(&depth, params.lo, params.hi))
            .and_then(|rgb| {
                save_rgb(
                    &rgb,
                    params.out_dir.join(format!("{}_heatmap.png", entry.id)),
                )
            });
        outcome.map_err(|e| (entry.id.clone(), e.to_string()))
    })?;

    let mut summary = RunSummary::default();
    for result in results {
        match result {
            Ok(()) => summary.record_ok(),
            Err((id, error)) => summary.record_error(id, error),
        }
    }
    Ok(summary)
}
