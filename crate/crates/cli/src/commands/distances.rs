//! `cutdepth distances`: row-wise and pooled distance reports between two
//! CSV files of vectors.
//!
//! Inputs are headerless numeric CSVs, one vector per row. Row `i` of file
//! A is compared against row `i` of file B; the `aggregate` row compares
//! the concatenation of all rows. Rows that fail (zero-norm cosine) are
//! recorded as item errors and skipped.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};

use cutdepth_core::io::write_distance_reports;
use cutdepth_core::metrics::{vector_distance, DistanceReport};

use crate::summary::RunSummary;

#[derive(Clone, Debug)]
pub struct DistancesParams {
    pub a_path: PathBuf,
    pub b_path: PathBuf,
    pub report_path: PathBuf,
}

pub fn distances(params: &DistancesParams) -> anyhow::Result<RunSummary> {
    let a_rows = read_vectors(&params.a_path)?;
    let b_rows = read_vectors(&params.b_path)?;
    if a_rows.len() != b_rows.len() {
        bail!(
            "row counts differ: {} has {}, {} has {}",
            params.a_path.display(),
            a_rows.len(),
            params.b_path.display(),
            b_rows.len()
        );
    }
    if a_rows.is_empty() {
        bail!("input files contain no vectors");
    }
    for (i, (a, b)) in a_rows.iter().zip(&b_rows).enumerate() {
        if a.len() != b.len() {
            bail!("row {i} widths differ: {} vs {}", a.len(), b.len());
        }
    }

    let mut summary = RunSummary::default();
    let mut rows: Vec<(String, DistanceReport)> = Vec::new();
    for (i, (a, b)) in a_rows.iter().zip(&b_rows).enumerate() {
        match vector_distance(a, b) {
            Ok(report) => {
                rows.push((format!("row_{i:05}"), report));
                summary.record_ok();
            }
            Err(e) => summary.record_error(format!("row_{i:05}"), e),
        }
    }

    let a_all: Vec<f64> = a_rows.iter().flatten().copied().collect();
    let b_all: Vec<f64> = b_rows.iter().flatten().copied().collect();
    match vector_distance(&a_all, &b_all) {
        Ok(report) => rows.push(("aggregate".into(), report)),
        Err(e) => summary.record_error("aggregate", e),
    }

    if !rows.is_empty() {
        write_distance_reports(&rows, &params.report_path)?;
    }
    Ok(summary)
}

fn read_vectors(path: &Path) -> anyhow::Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("{}, row {i}", path.display()))?;
        let mut row = Vec::with_capacity(record.len());
        for (j, field) in record.iter().enumerate() {
            let value: f64 = field.parse().with_context(|| {
                format!(
                    "{}, row {i}, column {j}: not a number: {field:?}",
                    path.display()
                )
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    Ok(rows)
}
