//! `cutdepth augment`: apply one augmentation policy to a whole dataset.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use cutdepth_core::augment::{apply, AugmentSpec, Method, ProvenanceRecord, SamplePair};
use cutdepth_core::io::{load_pair, save_pair, write_jsonl, Manifest, ManifestEntry};
use cutdepth_core::rng::derive_seed;
use cutdepth_core::RngStream;

use crate::summary::RunSummary;

use super::{pick_partner, run_indexed};

#[derive(Clone, Debug)]
pub struct AugmentParams {
    pub manifest_path: PathBuf,
    pub out_dir: PathBuf,
    pub spec: AugmentSpec,
    pub seed: u64,
    pub workers: usize,
}

/// One provenance line per processed item.
///
/// `seed` is the item's derived stream seed; together with the recorded
/// draws and the documented draw order this replays the item exactly.
#[derive(Clone, Debug, Serialize)]
pub struct ItemProvenance {
    pub id: String,
    pub seed: u64,
    pub partner_id: Option<String>,
    #[serde(flatten)]
    pub record: ProvenanceRecord,
}

/// Augments every manifest entry into `out_dir` (augmented manifest plus
/// `provenance.jsonl`).
///
/// Item `i` runs on a stream seeded with `derive_seed(seed, i)`. For CutMix
/// the first draw of that stream picks the partner entry; the rest of the
/// draw order is the one documented by [`apply`]. Output bytes are
/// independent of `workers`. Failed items are reported in the summary and
/// omitted from both output files.
pub fn augment(params: &AugmentParams) -> anyhow::Result<RunSummary> {
    params.spec.validate()?;
    let manifest = Manifest::load(&params.manifest_path)?;
    let images_dir = params.out_dir.join("images");
    fs::create_dir_all(&images_dir)?;

    let n = manifest.len();
    let results = run_indexed(params.workers, n, |i| {
        let entry = &manifest.entries()[i];
        process_item(params, &manifest, entry, i, n).map_err(|e| (entry.id.clone(), e.to_string()))
    })?;

    let mut summary = RunSummary::default();
    let mut out_manifest = Manifest::new(manifest.depth_scale(), &params.out_dir)?;
    let mut provenance = Vec::new();
    for result in results {
        match result {
            Ok((entry, line)) => {
                out_manifest.push(entry)?;
                provenance.push(line);
                summary.record_ok();
            }
            Err((id, error)) => summary.record_error(id, error),
        }
    }
    out_manifest.save(params.out_dir.join("manifest.jsonl"))?;
    write_jsonl(&provenance, params.out_dir.join("provenance.jsonl"))?;
    Ok(summary)
}

fn process_item(
    params: &AugmentParams,
    manifest: &Manifest,
    entry: &ManifestEntry,
    index: usize,
    n: usize,
) -> cutdepth_core::Result<(ManifestEntry, ItemProvenance)> {
    let item_seed = derive_seed(params.seed, index as u64);
    let mut rng = RngStream::new(item_seed);

    let (partner, partner_id) = if params.spec.method == Method::CutMix {
        let j = pick_partner(&mut rng, index, n);
        let partner_entry = &manifest.entries()[j];
        let pair = load_sample(manifest, partner_entry)?;
        (Some(pair), Some(partner_entry.id.clone()))
    } else {
        (None, None)
    };

    let pair = load_sample(manifest, entry)?;
    let (augmented, record) = apply(&pair, partner.as_ref(), &params.spec, &mut rng)?;

    let rgb_rel = format!("images/{}_rgb.png", entry.id);
    let depth_rel = format!("images/{}_depth.png", entry.id);
    save_pair(
        &augmented,
        params.out_dir.join(&rgb_rel),
        params.out_dir.join(&depth_rel),
        manifest.depth_scale(),
    )?;

    Ok((
        ManifestEntry {
            id: entry.id.clone(),
            rgb_path: rgb_rel,
            depth_path: depth_rel,
        },
        ItemProvenance {
            id: entry.id.clone(),
            seed: item_seed,
            partner_id,
            record,
        },
    ))
}

fn load_sample(manifest: &Manifest, entry: &ManifestEntry) -> cutdepth_core::Result<SamplePair> {
    load_pair(
        manifest.rgb_path(entry),
        manifest.depth_path(entry),
        manifest.depth_scale(),
    )
}
