//! Command implementations behind the `cutdepth` binary.
//!
//! Every command is a plain function over a params struct so integration
//! tests can drive the exact code the binary runs. Batch commands process
//! work items on a rayon pool sized by `workers`; each item gets an
//! independent stream derived from (seed, item index), so output bytes are
//! identical for any worker count.

pub mod commands;
pub mod summary;

pub use commands::augment::{augment, AugmentParams};
pub use commands::distances::{distances, DistancesParams};
pub use commands::edge_report::{edge_report, EdgeReportOutcome, EdgeReportParams};
pub use commands::eval::{eval, EvalParams};
pub use commands::heatmap::{heatmap, HeatmapParams};
pub use commands::quality::{quality, QualityParams};
pub use commands::region_stats::{region_stats, RegionStatsParams};
pub use commands::synth::{synth, SynthParams};
pub use summary::{ItemError, RunSummary};
