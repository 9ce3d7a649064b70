//! Depth-estimation error metrics, latent-vector distances, and the
//! affinity/diversity measures of augmentation quality.
//!
//! Conventions: `rmse_log` uses natural logarithms while the `log10` column
//! is base-10 (the two-column convention of standard indoor-depth
//! benchmarks); the delta accuracies d1..d3 count pixels whose two-sided
//! ratio `max(pred/gt, gt/pred)` stays under 1.25^k.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::DepthMap;
use crate::region::PixelMask;

/// Default valid-depth caps in meters.
pub const DEFAULT_MIN_DEPTH_M: f64 = 0.001;
pub const DEFAULT_MAX_DEPTH_M: f64 = 10.0;

/// Base of the delta-accuracy thresholds.
pub const DELTA_BASE: f64 = 1.25;

/// Number of trailing loss entries averaged by [`diversity`] by default.
pub const DEFAULT_DIVERSITY_WINDOW: usize = 10;

/// The seven standard depth-estimation metrics over the valid pixels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthEvalReport {
    pub abs_rel: f64,
    pub log10: f64,
    /// Meters.
    pub rmse: f64,
    pub rmse_log: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub n_valid: u64,
}

/// Elementwise distances between two vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub rmse: f64,
    pub mae: f64,
    /// Cosine similarity in [-1, 1] (larger = more aligned).
    pub cosine: f64,
}

/// Augmentation-quality summary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub affinity: f64,
    pub diversity: f64,
}

/// Whether a larger metric value is better (accuracy) or worse (loss).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    HigherBetter,
    LowerBetter,
}

impl std::str::FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "higher-better" => Ok(Orientation::HigherBetter),
            "lower-better" => Ok(Orientation::LowerBetter),
            other => Err(format!(
                "unknown orientation {other:?}; expected higher-better or lower-better"
            )),
        }
    }
}

/// Marks pixels whose ground truth lies strictly inside (min_depth,
/// max_depth). Pixels at 0 (missing depth) are never valid.
pub fn valid_mask(gt: &DepthMap, min_depth: f64, max_depth: f64) -> Result<PixelMask> {
    if !min_depth.is_finite() || min_depth < 0.0 {
        return Err(Error::InvalidParameter {
            name: "min_depth",
            value: min_depth,
            expected: ">= 0",
        });
    }
    if !max_depth.is_finite() || max_depth <= min_depth {
        return Err(Error::InvalidParameter {
            name: "max_depth",
            value: max_depth,
            expected: "> min_depth",
        });
    }
    Ok(PixelMask::from_fn(gt.width(), gt.height(), |x, y| {
        let d = gt.value(x, y);
        d > min_depth && d < max_depth
    }))
}

/// Streaming accumulator behind [`eval_depth`]; lets a batch pipeline pool
/// pixels across many images before finalizing one report.
#[derive(Clone, Debug, Default)]
pub struct DepthEvalAccumulator {
    sum_abs_rel: f64,
    sum_log10: f64,
    sum_sq: f64,
    sum_sq_log: f64,
    d_counts: [u64; 3],
    n: u64,
}

impl DepthEvalAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn n_valid(&self) -> u64 {
        self.n
    }

    /// Accumulates every masked pixel of one prediction/ground-truth pair.
    pub fn add(&mut self, pred: &DepthMap, gt: &DepthMap, mask: &PixelMask) -> Result<()> {
        if pred.width() != gt.width() || pred.height() != gt.height() {
            return Err(Error::ShapeMismatch {
                left_width: pred.width(),
                left_height: pred.height(),
                right_width: gt.width(),
                right_height: gt.height(),
            });
        }
        if mask.width() != gt.width() || mask.height() != gt.height() {
            return Err(Error::ShapeMismatch {
                left_width: mask.width(),
                left_height: mask.height(),
                right_width: gt.width(),
                right_height: gt.height(),
            });
        }
        let thresholds = [
            DELTA_BASE,
            DELTA_BASE * DELTA_BASE,
            DELTA_BASE * DELTA_BASE * DELTA_BASE,
        ];
        for y in 0..gt.height() {
            for x in 0..gt.width() {
                if !mask.get(x, y) {
                    continue;
                }
                let p = pred.value(x, y);
                let g = gt.value(x, y);
                if p <= 0.0 {
                    return Err(Error::NonPositiveDepth {
                        plane: "predicted",
                        x,
                        y,
                        value: p,
                    });
                }
                if g <= 0.0 {
                    return Err(Error::NonPositiveDepth {
                        plane: "ground-truth",
                        x,
                        y,
                        value: g,
                    });
                }
                let diff = p - g;
                self.sum_abs_rel += diff.abs() / g;
                self.sum_log10 += (p.log10() - g.log10()).abs();
                self.sum_sq += diff * diff;
                let dlog = p.ln() - g.ln();
                self.sum_sq_log += dlog * dlog;
                let ratio = (p / g).max(g / p);
                for (k, &t) in thresholds.iter().enumerate() {
                    if ratio < t {
                        self.d_counts[k] += 1;
                    }
                }
                self.n += 1;
            }
        }
        Ok(())
    }

    pub fn finalize(&self) -> Result<DepthEvalReport> {
        if self.n == 0 {
            return Err(Error::EmptyEvaluation);
        }
        let n = self.n as f64;
        Ok(DepthEvalReport {
            abs_rel: self.sum_abs_rel / n,
            log10: self.sum_log10 / n,
            rmse: (self.sum_sq / n).sqrt(),
            rmse_log: (self.sum_sq_log / n).sqrt(),
            d1: self.d_counts[0] as f64 / n,
            d2: self.d_counts[1] as f64 / n,
            d3: self.d_counts[2] as f64 / n,
            n_valid: self.n,
        })
    }
}

/// Evaluates a prediction against ground truth over the masked pixels.
pub fn eval_depth(pred: &DepthMap, gt: &DepthMap, mask: &PixelMask) -> Result<DepthEvalReport> {
    let mut acc = DepthEvalAccumulator::new();
    acc.add(pred, gt, mask)?;
    acc.finalize()
}

/// RMSE, MAE and cosine similarity between two equal-length vectors.
pub fn vector_distance(a: &[f64], b: &[f64]) -> Result<DistanceReport> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptySeries);
    }
    let n = a.len() as f64;
    let mut sum_sq = 0.0;
    let mut sum_abs = 0.0;
    let mut dot = 0.0;
    let mut norm_a = 0.0;
    let mut norm_b = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        let d = x - y;
        sum_sq += d * d;
        sum_abs += d.abs();
        dot += x * y;
        norm_a += x * x;
        norm_b += y * y;
    }
    if norm_a == 0.0 || norm_b == 0.0 {
        return Err(Error::ZeroNormVector);
    }
    Ok(DistanceReport {
        rmse: (sum_sq / n).sqrt(),
        mae: sum_abs / n,
        cosine: (dot / (norm_a.sqrt() * norm_b.sqrt())).clamp(-1.0, 1.0),
    })
}

/// Shift of a clean-trained model's metric when evaluated on augmented data,
/// signed so that a larger value always means a smaller harmful deviation.
pub fn affinity(clean_metric: f64, aug_metric: f64, orientation: Orientation) -> f64 {
    match orientation {
        Orientation::HigherBetter => aug_metric - clean_metric,
        Orientation::LowerBetter => clean_metric - aug_metric,
    }
}

/// Spread proxy: mean of the final `window` entries of the training-loss
/// series recorded under the augmentation. A window longer than the series
/// averages the whole series.
pub fn diversity(aug_train_losses: &[f64], window: usize) -> Result<f64> {
    if aug_train_losses.is_empty() {
        return Err(Error::EmptySeries);
    }
    if window == 0 {
        return Err(Error::InvalidParameter {
            name: "window",
            value: 0.0,
            expected: ">= 1",
        });
    }
    let k = window.min(aug_train_losses.len());
    let tail = &aug_train_losses[aug_train_losses.len() - k..];
    Ok(tail.iter().sum::<f64>() / k as f64)
}
