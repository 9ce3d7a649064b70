//! `cutdepth quality`: affinity/diversity rows from externally supplied
//! training metrics.
//!
//! Input formats (CSV with headers):
//!   losses: `method,step,loss` — the training-loss series recorded while
//!           training under each augmentation; rows may arrive unsorted.
//!   evals:  `method,clean,aug,orientation` — a clean-trained model's
//!           metric on clean (`clean`) and augmented (`aug`) validation
//!           data; `orientation` is `higher-better` or `lower-better`.
//!
//! Output: one `name,affinity,diversity` row per method, in the evals
//! file's row order.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};

use cutdepth_core::io::write_quality_reports;
use cutdepth_core::metrics::{affinity, diversity, Orientation, QualityReport};

use crate::summary::RunSummary;

#[derive(Clone, Debug)]
pub struct QualityParams {
    pub losses_path: PathBuf,
    pub evals_path: PathBuf,
    /// Trailing-loss window for diversity.
    pub window: usize,
    pub report_path: PathBuf,
}

pub fn quality(params: &QualityParams) -> anyhow::Result<RunSummary> {
    let losses = read_losses(&params.losses_path)?;
    let evals = read_evals(&params.evals_path)?;

    let missing: Vec<&str> = evals
        .iter()
        .filter(|e| !losses.contains_key(&e.method))
        .map(|e| e.method.as_str())
        .collect();
    if !missing.is_empty() {
        bail!(
            "methods present in {} but missing from {}: {missing:?}",
            params.evals_path.display(),
            params.losses_path.display()
        );
    }

    let mut rows = Vec::with_capacity(evals.len());
    for eval in &evals {
        let series = &losses[&eval.method];
        let report = QualityReport {
            affinity: affinity(eval.clean, eval.aug, eval.orientation),
            diversity: diversity(series, params.window)?,
        };
        rows.push((eval.method.clone(), report));
    }
    write_quality_reports(&rows, &params.report_path)?;
    Ok(RunSummary {
        items_ok: rows.len(),
        ..RunSummary::default()
    })
}

/// Loss series per method, ordered by step.
fn read_losses(path: &Path) -> anyhow::Result<HashMap<String, Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    expect_headers(&mut reader, &["method", "step", "loss"], path)?;
    let mut series: HashMap<String, Vec<(u64, f64)>> = HashMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2; // header is line 1
        let record = record.with_context(|| format!("{}, line {line}", path.display()))?;
        if record.len() != 3 {
            bail!("{}, line {line}: expected 3 fields", path.display());
        }
        let step: u64 = record[1].parse().with_context(|| {
            format!("{}, line {line}: bad step {:?}", path.display(), &record[1])
        })?;
        let loss: f64 = record[2].parse().with_context(|| {
            format!("{}, line {line}: bad loss {:?}", path.display(), &record[2])
        })?;
        series
            .entry(record[0].to_string())
            .or_default()
            .push((step, loss));
    }
    Ok(series
        .into_iter()
        .map(|(method, mut points)| {
            points.sort_by_key(|&(step, _)| step);
            (method, points.into_iter().map(|(_, loss)| loss).collect())
        })
        .collect())
}

struct EvalRow {
    method: String,
    clean: f64,
    aug: f64,
    orientation: Orientation,
}

fn read_evals(path: &Path) -> anyhow::Result<Vec<EvalRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    expect_headers(
        &mut reader,
        &["method", "clean", "aug", "orientation"],
        path,
    )?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.with_context(|| format!("{}, line {line}", path.display()))?;
        if record.len() != 4 {
            bail!("{}, line {line}: expected 4 fields", path.display());
        }
        let clean: f64 = record[1].parse().with_context(|| {
            format!(
                "{}, line {line}: bad clean value {:?}",
                path.display(),
                &record[1]
            )
        })?;
        let aug: f64 = record[2].parse().with_context(|| {
            format!(
                "{}, line {line}: bad aug value {:?}",
                path.display(),
                &record[2]
            )
        })?;
        let orientation: Orientation = record[3]
            .parse()
            .map_err(|e| anyhow::anyhow!("{}, line {line}: {e}", path.display()))?;
        rows.push(EvalRow {
            method: record[0].to_string(),
            clean,
            aug,
            orientation,
        });
    }
    if rows.is_empty() {
        bail!("{} contains no data rows", path.display());
    }
    Ok(rows)
}

fn expect_headers(
    reader: &mut csv::Reader<std::fs::File>,
    expected: &[&str],
    path: &Path,
) -> anyhow::Result<()> {
    let headers = reader
        .headers()
        .with_context(|| format!("{}, line 1", path.display()))?;
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        bail!(
            "{}, line 1: expected header {expected:?}, found {got:?}",
            path.display()
        );
    }
    Ok(())
}
