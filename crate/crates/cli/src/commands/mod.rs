pub mod augment;
pub mod distances;
pub mod edge_report;
pub mod eval;
pub mod heatmap;
pub mod quality;
pub mod region_stats;
pub mod synth;

use cutdepth_core::RngStream;
use rayon::prelude::*;

/// Runs `f` over `0..n` on a pool of `workers` threads, preserving index
/// order in the result.
pub(crate) fn run_indexed<T, F>(workers: usize, n: usize, f: F) -> anyhow::Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let workers = workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()?;
    Ok(pool.install(|| (0..n).into_par_iter().map(f).collect()))
}

/// Partner index for CutMix: drawn uniformly from the other entries (one
/// draw); a single-entry dataset pairs with itself and consumes no draw.
pub(crate) fn pick_partner(rng: &mut RngStream, item: usize, n: usize) -> usize {
    if n <= 1 {
        return item;
    }
    let j = rng.index_below(n - 1);
    if j >= item {
        j + 1
    } else {
        j
    }
}
