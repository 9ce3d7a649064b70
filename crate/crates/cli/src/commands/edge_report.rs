//! `cutdepth edge-report`: how much edge structure each method preserves.
//!
//! Every item gets one sampled region shared by all requested methods, so
//! the scores are directly comparable. Draw order per item: the four
//! region draws; one partner draw iff `cutmix` is requested (and the
//! dataset has more than one entry); one raw output to seed the
//! random-erasing pixel stream iff `random-erasing` is requested.

use std::fs;
use std::path::PathBuf;

use cutdepth_core::augment::{
    cut_depth, cut_mix, cut_out, random_erasing, sample_region, FillMode, Method, SamplePair,
};
use cutdepth_core::edge::edge_preservation_score;
use cutdepth_core::image::DepthNormStrategy;
use cutdepth_core::io::{load_pair, Manifest};
use cutdepth_core::{Region, RngStream};

use crate::summary::RunSummary;

use super::{pick_partner, run_indexed};

#[derive(Clone, Debug)]
pub struct EdgeReportParams {
    pub manifest_path: PathBuf,
    pub methods: Vec<Method>,
    pub p: f64,
    pub seed: u64,
    pub threshold: f64,
    pub fill: FillMode,
    pub depth_norm: DepthNormStrategy,
    pub workers: usize,
    pub report_path: PathBuf,
}

#[derive(Clone, Debug)]
pub struct EdgeReportOutcome {
    pub summary: RunSummary,
    /// Mean score per method over the items that succeeded, in the order
    /// the methods were requested.
    pub method_means: Vec<(Method, f64)>,
}

/// Writes a CSV of `id,method,score` rows plus one `mean` row per method.
pub fn edge_report(params: &EdgeReportParams) -> anyhow::Result<EdgeReportOutcome> {
    let manifest = Manifest::load(&params.manifest_path)?;
    let n = manifest.len();
    let results = run_indexed(params.workers, n, |i| {
        let entry = &manifest.entries()[i];
        score_item(params, &manifest, i, n).map_err(|e| (entry.id.clone(), e.to_string()))
    })?;

    let mut summary = RunSummary::default();
    let mut out = String::from("id,method,score\n");
    let mut totals = vec![0.0f64; params.methods.len()];
    let mut scored = 0usize;
    for (i, result) in results.into_iter().enumerate() {
        let id = &manifest.entries()[i].id;
        match result {
            Ok(scores) => {
                for (method, score) in params.methods.iter().zip(&scores) {
                    out.push_str(&format!("{id},{method},{score:.6}\n"));
                }
                for (k, score) in scores.iter().enumerate() {
                    totals[k] += score;
                }
                scored += 1;
                summary.record_ok();
            }
            Err((id, error)) => summary.record_error(id, error),
        }
    }

    let mut method_means = Vec::with_capacity(params.methods.len());
    if scored > 0 {
        for (k, method) in params.methods.iter().enumerate() {
            let mean = totals[k] / scored as f64;
            out.push_str(&format!("mean,{method},{mean:.6}\n"));
            method_means.push((*method, mean));
        }
    }
    fs::write(&params.report_path, out)?;
    Ok(EdgeReportOutcome {
        summary,
        method_means,
    })
}

fn score_item(
    params: &EdgeReportParams,
    manifest: &Manifest,
    index: usize,
    n: usize,
) -> cutdepth_core::Result<Vec<f64>> {
    let entry = &manifest.entries()[index];
    let pair = load_pair(
        manifest.rgb_path(entry),
        manifest.depth_path(entry),
        manifest.depth_scale(),
    )?;
    let mut rng = RngStream::for_item(params.seed, index as u64);
    let region = sample_region(&mut rng, pair.width(), pair.height(), params.p)?;

    let partner = if params.methods.contains(&Method::CutMix) {
        let j = pick_partner(&mut rng, index, n);
        let pe = &manifest.entries()[j];
        Some(load_pair(
            manifest.rgb_path(pe),
            manifest.depth_path(pe),
            manifest.depth_scale(),
        )?)
    } else {
        None
    };
    let erase_seed = if params.methods.contains(&Method::RandomErasing) {
        Some(rng.next_u64())
    } else {
        None
    };

    params
        .methods
        .iter()
        .map(|&method| {
            let augmented =
                augment_with(&pair, partner.as_ref(), method, region, params, erase_seed)?;
            edge_preservation_score(&pair.rgb, &augmented, region, params.threshold)
        })
        .collect()
}

fn augment_with(
    pair: &SamplePair,
    partner: Option<&SamplePair>,
    method: Method,
    region: Region,
    params: &EdgeReportParams,
    erase_seed: Option<u64>,
) -> cutdepth_core::Result<cutdepth_core::RgbImage> {
    match method {
        Method::CutDepth => cut_depth(pair, region, params.depth_norm),
        Method::CutOut => cut_out(&pair.rgb, region, params.fill),
        Method::RandomErasing => {
            let seed = erase_seed.expect("seed drawn when random-erasing is requested");
            random_erasing(&pair.rgb, region, &mut RngStream::new(seed))
        }
        Method::CutMix => {
            let partner = partner.ok_or(cutdepth_core::Error::MissingPartner)?;
            cut_mix(&pair.rgb, &partner.rgb, region)
        }
        Method::None => Ok(pair.rgb.clone()),
    }
}
