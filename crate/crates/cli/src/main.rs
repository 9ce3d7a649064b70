//! `cutdepth` — deterministic RGB-D augmentation and evaluation runs.
//!
//! Every flag can also be set through an environment variable with the
//! `CUTDEPTH_` prefix (a flag on the command line wins). Exit codes:
//! 0 = clean run, 1 = some work items failed (JSON summary on stderr),
//! 2 = fatal error (JSON object with an `error` field on stderr).

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use cutdepth_cli::{
    augment, distances, edge_report, eval, heatmap, quality, region_stats, synth, AugmentParams,
    DistancesParams, EdgeReportParams, EvalParams, HeatmapParams, QualityParams, RegionStatsParams,
    RunSummary, SynthParams,
};
use cutdepth_core::augment::{AugmentSpec, FillMode, Method};
use cutdepth_core::edge::DEFAULT_EDGE_THRESHOLD;
use cutdepth_core::image::DepthNormStrategy;
use cutdepth_core::io::DEFAULT_DEPTH_SCALE;
use cutdepth_core::metrics::{DEFAULT_DIVERSITY_WINDOW, DEFAULT_MAX_DEPTH_M, DEFAULT_MIN_DEPTH_M};
use cutdepth_core::Region;

#[derive(Parser)]
#[command(
    name = "cutdepth",
    version,
    about = "Deterministic RGB-D augmentation and evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate synthetic RGB-D scenes plus a manifest
    Synth(SynthArgs),
    /// Augment every entry of a manifest
    Augment(AugmentArgs),
    /// Score predicted depth maps against ground truth
    Eval(EvalArgs),
    /// Sample paste regions and report their statistics
    RegionStats(RegionStatsArgs),
    /// Distance reports between two CSV files of vectors
    Distances(DistancesArgs),
    /// Edge-preservation scores per augmentation method
    EdgeReport(EdgeReportArgs),
    /// Affinity/diversity from recorded training metrics
    Quality(QualityArgs),
    /// Render depth maps as blue-(near)-to-red-(far) PNGs
    Heatmap(HeatmapArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Number of scenes
    #[arg(short = 'n', long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 160)]
    width: u32,
    #[arg(long, default_value_t = 120)]
    height: u32,
    /// Rectangles per scene
    #[arg(long, default_value_t = 6)]
    boxes: u32,
    /// Nearest scene depth in meters
    #[arg(long, default_value_t = 1.0)]
    depth_near: f64,
    /// Farthest scene depth in meters (background plane)
    #[arg(long, default_value_t = 10.0)]
    depth_far: f64,
    #[arg(long, env = "CUTDEPTH_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "CUTDEPTH_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Raw-to-meters divisor for stored depth
    #[arg(long, default_value_t = DEFAULT_DEPTH_SCALE)]
    depth_scale: f64,
    /// Output directory
    #[arg(long, env = "CUTDEPTH_OUT")]
    out: PathBuf,
}

#[derive(Args)]
struct AugmentArgs {
    /// Input manifest (JSONL)
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, env = "CUTDEPTH_METHOD", value_parser = Method::from_str, default_value = "cutdepth")]
    method: Method,
    #[arg(long, env = "CUTDEPTH_P", default_value_t = 0.5)]
    p: f64,
    #[arg(
        long = "apply-prob",
        env = "CUTDEPTH_APPLY_PROB",
        default_value_t = 1.0
    )]
    apply_prob: f64,
    /// CutOut fill: "mean" or a constant between 0 and 1
    #[arg(long, default_value = "mean", value_parser = parse_fill)]
    fill: FillMode,
    /// CutDepth depth normalization: "minmax" or "fixed:LO:HI" (meters)
    #[arg(long = "depth-norm", default_value = "minmax", value_parser = parse_norm)]
    depth_norm: DepthNormStrategy,
    /// Also swap the depth-target region from the CutMix partner
    #[arg(long, default_value_t = false)]
    cutmix_swap_depth: bool,
    #[arg(long, env = "CUTDEPTH_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "CUTDEPTH_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Output directory
    #[arg(long, env = "CUTDEPTH_OUT")]
    out: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    /// Manifest of predicted depth maps
    #[arg(long)]
    pred: PathBuf,
    /// Manifest of ground-truth depth maps
    #[arg(long)]
    gt: PathBuf,
    #[arg(long = "min-depth", env = "CUTDEPTH_MIN_DEPTH", default_value_t = DEFAULT_MIN_DEPTH_M)]
    min_depth: f64,
    #[arg(long = "max-depth", env = "CUTDEPTH_MAX_DEPTH", default_value_t = DEFAULT_MAX_DEPTH_M)]
    max_depth: f64,
    /// Evaluation crop as "l,u,w,h" (off by default)
    #[arg(long, value_parser = parse_region)]
    crop: Option<Region>,
    /// Aggregate as the mean of per-image metrics instead of pooling pixels
    #[arg(long, default_value_t = false)]
    per_image: bool,
    /// Report CSV path
    #[arg(long, env = "CUTDEPTH_REPORT")]
    report: PathBuf,
}

#[derive(Args)]
struct RegionStatsArgs {
    #[arg(long, default_value_t = 544)]
    width: u32,
    #[arg(long, default_value_t = 416)]
    height: u32,
    #[arg(long, env = "CUTDEPTH_P", default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 100_000)]
    draws: usize,
    #[arg(long, env = "CUTDEPTH_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "CUTDEPTH_REPORT")]
    report: PathBuf,
}

#[derive(Args)]
struct DistancesArgs {
    /// First vectors CSV (headerless, one vector per row)
    #[arg(long = "a")]
    a_path: PathBuf,
    /// Second vectors CSV, same shape
    #[arg(long = "b")]
    b_path: PathBuf,
    #[arg(long, env = "CUTDEPTH_REPORT")]
    report: PathBuf,
}

#[derive(Args)]
struct EdgeReportArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Comma-separated methods to score with one shared region per item
    #[arg(long, value_delimiter = ',', value_parser = Method::from_str,
          default_value = "cutdepth,cutout,random-erasing,cutmix")]
    methods: Vec<Method>,
    #[arg(long, env = "CUTDEPTH_P", default_value_t = 0.5)]
    p: f64,
    #[arg(long, env = "CUTDEPTH_SEED", default_value_t = 0)]
    seed: u64,
    /// Edge binarization threshold on unit-range luminance gradients
    #[arg(long, default_value_t = DEFAULT_EDGE_THRESHOLD)]
    threshold: f64,
    /// CutOut fill: "mean" or a constant between 0 and 1
    #[arg(long, default_value = "mean", value_parser = parse_fill)]
    fill: FillMode,
    /// CutDepth depth normalization: "minmax" or "fixed:LO:HI"
    #[arg(long = "depth-norm", default_value = "minmax", value_parser = parse_norm)]
    depth_norm: DepthNormStrategy,
    #[arg(long, env = "CUTDEPTH_WORKERS", default_value_t = 1)]
    workers: usize,
    #[arg(long, env = "CUTDEPTH_REPORT")]
    report: PathBuf,
}

#[derive(Args)]
struct QualityArgs {
    /// Training-loss CSV: method,step,loss
    #[arg(long)]
    losses: PathBuf,
    /// Clean-model metrics CSV: method,clean,aug,orientation
    #[arg(long)]
    evals: PathBuf,
    /// Trailing-loss window for diversity
    #[arg(long, default_value_t = DEFAULT_DIVERSITY_WINDOW)]
    window: usize,
    #[arg(long, env = "CUTDEPTH_REPORT")]
    report: PathBuf,
}

#[derive(Args)]
struct HeatmapArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Near end of the color range in meters
    #[arg(long, default_value_t = 1.0)]
    lo: f64,
    /// Far end of the color range in meters
    #[arg(long, default_value_t = 10.0)]
    hi: f64,
    #[arg(long, env = "CUTDEPTH_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Output directory
    #[arg(long, env = "CUTDEPTH_OUT")]
    out: PathBuf,
}

fn parse_fill(s: &str) -> Result<FillMode, String> {
    if s == "mean" {
        return Ok(FillMode::ImageMean);
    }
    let value: f64 = s
        .parse()
        .map_err(|_| format!("fill must be \"mean\" or a number in [0,1], got {s:?}"))?;
    Ok(FillMode::Constant { value })
}

fn parse_norm(s: &str) -> Result<DepthNormStrategy, String> {
    if s == "minmax" {
        return Ok(DepthNormStrategy::PerImageMinMax);
    }
    if let Some(rest) = s.strip_prefix("fixed:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 2 {
            let lo = parts[0].parse().map_err(|_| format!("bad lo in {s:?}"))?;
            let hi = parts[1].parse().map_err(|_| format!("bad hi in {s:?}"))?;
            return Ok(DepthNormStrategy::FixedRange { lo, hi });
        }
    }
    Err(format!(
        "depth-norm must be \"minmax\" or \"fixed:<lo>:<hi>\", got {s:?}"
    ))
}

fn parse_region(s: &str) -> Result<Region, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected \"l,u,w,h\", got {s:?}"));
    }
    let nums: Vec<u32> = parts
        .iter()
        .map(|p| p.trim().parse().map_err(|_| format!("bad number in {s:?}")))
        .collect::<Result<_, String>>()?;
    Region::new(nums[0], nums[1], nums[2], nums[3]).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> anyhow::Result<RunSummary> {
    match cli.command {
        Cmd::Synth(args) => synth(&SynthParams {
            count: args.count,
            width: args.width,
            height: args.height,
            boxes: args.boxes,
            depth_range: (args.depth_near, args.depth_far),
            seed: args.seed,
            workers: args.workers,
            depth_scale: args.depth_scale,
            out_dir: args.out,
        }),
        Cmd::Augment(args) => {
            let spec = AugmentSpec {
                method: args.method,
                p: args.p,
                apply_probability: args.apply_prob,
                fill_mode: args.fill,
                depth_norm: args.depth_norm,
                cutmix_swap_depth: args.cutmix_swap_depth,
            };
            augment(&AugmentParams {
                manifest_path: args.manifest,
                out_dir: args.out,
                spec,
                seed: args.seed,
                workers: args.workers,
            })
        }
        Cmd::Eval(args) => eval(&EvalParams {
            pred_manifest: args.pred,
            gt_manifest: args.gt,
            min_depth: args.min_depth,
            max_depth: args.max_depth,
            crop: args.crop,
            per_image: args.per_image,
            report_path: args.report,
        }),
        Cmd::RegionStats(args) => region_stats(&RegionStatsParams {
            width: args.width,
            height: args.height,
            p: args.p,
            draws: args.draws,
            seed: args.seed,
            report_path: args.report,
        }),
        Cmd::Distances(args) => distances(&DistancesParams {
            a_path: args.a_path,
            b_path: args.b_path,
            report_path: args.report,
        }),
        Cmd::EdgeReport(args) => edge_report(&EdgeReportParams {
            manifest_path: args.manifest,
            methods: args.methods,
            p: args.p,
            seed: args.seed,
            threshold: args.threshold,
            fill: args.fill,
            depth_norm: args.depth_norm,
            workers: args.workers,
            report_path: args.report,
        })
        .map(|outcome| outcome.summary),
        Cmd::Quality(args) => quality(&QualityParams {
            losses_path: args.losses,
            evals_path: args.evals,
            window: args.window,
            report_path: args.report,
        }),
        Cmd::Heatmap(args) => heatmap(&HeatmapParams {
            manifest_path: args.manifest,
            lo: args.lo,
            hi: args.hi,
            workers: args.workers,
            out_dir: args.out,
        }),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(summary) if summary.is_clean() => {}
        Ok(summary) => {
            eprintln!(
                "{}",
                serde_json::to_string(&summary).expect("summary serializes")
            );
            std::process::exit(1);
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": format!("{e:#}") }));
            std::process::exit(2);
        }
    }
}
