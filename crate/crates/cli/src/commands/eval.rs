//! `cutdepth eval`: score predicted depth maps against ground truth.

use std::collections::HashMap;
use std::path::PathBuf;

use anyhow::bail;

use cutdepth_core::io::{load_depth, write_depth_reports, Manifest};
use cutdepth_core::metrics::{valid_mask, DepthEvalAccumulator, DepthEvalReport};
use cutdepth_core::region::Region;

use crate::summary::RunSummary;

#[derive(Clone, Debug)]
pub struct EvalParams {
    pub pred_manifest: PathBuf,
    pub gt_manifest: PathBuf,
    /// Valid ground-truth range in meters (exclusive bounds).
    pub min_depth: f64,
    pub max_depth: f64,
    /// Optional evaluation crop; pixels outside never count.
    pub crop: Option<Region>,
    /// Aggregate as the mean of per-image metrics instead of pooling all
    /// valid pixels (the default).
    pub per_image: bool,
    pub report_path: PathBuf,
}

/// Writes one CSV row per item plus a final `aggregate` row.
pub fn eval(params: &EvalParams) -> anyhow::Result<RunSummary> {
    let pred = Manifest::load(&params.pred_manifest)?;
    let gt = Manifest::load(&params.gt_manifest)?;

    let pred_by_id: HashMap<&str, usize> = pred
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.as_str(), i))
        .collect();
    let missing: Vec<&str> = gt
        .entries()
        .iter()
        .filter(|e| !pred_by_id.contains_key(e.id.as_str()))
        .map(|e| e.id.as_str())
        .collect();
    let gt_ids: std::collections::HashSet<&str> =
        gt.entries().iter().map(|e| e.id.as_str()).collect();
    let extra: Vec<&str> = pred
        .entries()
        .iter()
        .filter(|e| !gt_ids.contains(e.id.as_str()))
        .map(|e| e.id.as_str())
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        bail!(
            "manifest ids differ; missing from predictions: {missing:?}; not in ground truth: {extra:?}"
        );
    }

    let mut summary = RunSummary::default();
    let mut rows: Vec<(String, DepthEvalReport)> = Vec::new();
    let mut pooled = DepthEvalAccumulator::new();
    let mut per_image_reports: Vec<DepthEvalReport> = Vec::new();

    for entry in gt.entries() {
        let outcome = (|| -> cutdepth_core::Result<DepthEvalReport> {
            let gt_depth = load_depth(gt.depth_path(entry), gt.depth_scale())?;
            let pred_entry = &pred.entries()[pred_by_id[entry.id.as_str()]];
            let pred_depth = load_depth(pred.depth_path(pred_entry), pred.depth_scale())?;
            let mut mask = valid_mask(&gt_depth, params.min_depth, params.max_depth)?;
            if let Some(crop) = params.crop {
                mask = mask.restrict_to_region(crop)?;
            }
            let mut acc = DepthEvalAccumulator::new();
            acc.add(&pred_depth, &gt_depth, &mask)?;
            let report = acc.finalize()?;
            pooled.add(&pred_depth, &gt_depth, &mask)?;
            Ok(report)
        })();
        match outcome {
            Ok(report) => {
                rows.push((entry.id.clone(), report));
                per_image_reports.push(report);
                summary.record_ok();
            }
            Err(e) => summary.record_error(entry.id.clone(), e),
        }
    }

    if !rows.is_empty() {
        let aggregate = if params.per_image {
            mean_of_reports(&per_image_reports)
        } else {
            pooled.finalize()?
        };
        rows.push(("aggregate".into(), aggregate));
        write_depth_reports(&rows, &params.report_path)?;
    }
    Ok(summary)
}

fn mean_of_reports(reports: &[DepthEvalReport]) -> DepthEvalReport {
    let n = reports.len() as f64;
    let mut sum = DepthEvalReport {
        abs_rel: 0.0,
        log10: 0.0,
        rmse: 0.0,
        rmse_log: 0.0,
        d1: 0.0,
        d2: 0.0,
        d3: 0.0,
        n_valid: 0,
    };
    for r in reports {
        sum.abs_rel += r.abs_rel;
        sum.log10 += r.log10;
        sum.rmse += r.rmse;
        sum.rmse_log += r.rmse_log;
        sum.d1 += r.d1;
        sum.d2 += r.d2;
        sum.d3 += r.d3;
        sum.n_valid += r.n_valid;
    }
    DepthEvalReport {
        abs_rel: sum.abs_rel / n,
        log10: sum.log10 / n,
        rmse: sum.rmse / n,
        rmse_log: sum.rmse_log / n,
        d1: sum.d1 / n,
        d2: sum.d2 / n,
        d3: sum.d3 / n,
        n_valid: sum.n_valid,
    }
}
