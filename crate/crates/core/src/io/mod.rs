//! Dataset files: JSONL manifests, 8-bit RGB / 16-bit depth PNG pairs,
//! CSV reports, and JSONL provenance logs.
//!
//! Depth is stored as a single-channel 16-bit PNG holding
//! `round(meters * depth_scale)` (default scale 1000, i.e. millimeters);
//! raw value 0 is the invalid marker. RGB is 8-bit with
//! `byte = round(value * 255)`. Both roundings are half-up, so one
//! save/load round trip moves an RGB value by at most 1/510 and a depth by
//! at most 0.5/depth_scale meters.
//!
//! A manifest is JSON Lines: a header object `{"depth_scale": ...}` on the
//! first line, then one entry object per line. Entry paths are resolved
//! relative to the manifest's directory unless absolute, which keeps output
//! trees relocatable and byte-reproducible.

mod heatmap;
mod scene;

pub use heatmap::depth_heatmap;
pub use scene::{generate_scene, SceneSpec};

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::augment::SamplePair;
use crate::error::{Error, Result};
use crate::image::{DepthMap, RgbImage};
use crate::metrics::{DepthEvalReport, DistanceReport, QualityReport};

/// Default raw-to-meters divisor for stored depth.
pub const DEFAULT_DEPTH_SCALE: f64 = 1000.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub rgb_path: String,
    pub depth_path: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestHeader {
    depth_scale: f64,
}

/// Ordered list of RGB/depth pairs with the dataset's depth scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    depth_scale: f64,
    entries: Vec<ManifestEntry>,
    base_dir: PathBuf,
}

impl Manifest {
    /// Empty manifest whose relative entry paths resolve against `base_dir`.
    pub fn new(depth_scale: f64, base_dir: impl Into<PathBuf>) -> Result<Self> {
        if !depth_scale.is_finite() || depth_scale <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "depth_scale",
                value: depth_scale,
                expected: "> 0",
            });
        }
        Ok(Self {
            depth_scale,
            entries: Vec::new(),
            base_dir: base_dir.into(),
        })
    }

    pub fn depth_scale(&self) -> f64 {
        self.depth_scale
    }

    pub fn entries(&self) -> &[ManifestEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, entry: ManifestEntry) -> Result<()> {
        if self.entries.iter().any(|e| e.id == entry.id) {
            return Err(Error::DuplicateId { id: entry.id });
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn rgb_path(&self, entry: &ManifestEntry) -> PathBuf {
        self.resolve(&entry.rgb_path)
    }

    pub fn depth_path(&self, entry: &ManifestEntry) -> PathBuf {
        self.resolve(&entry.depth_path)
    }

    fn resolve(&self, stored: &str) -> PathBuf {
        let p = Path::new(stored);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = fs::File::open(path).map_err(|source| map_open_error(path, source))?;
        let reader = BufReader::new(file);
        let mut lines = reader.lines().enumerate();

        let (_, first) = lines.next().ok_or_else(|| Error::Manifest {
            path: path.to_path_buf(),
            line: 1,
            message: "missing header line".into(),
        })?;
        let first = first.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let header: ManifestHeader = serde_json::from_str(&first).map_err(|e| Error::Manifest {
            path: path.to_path_buf(),
            line: 1,
            message: format!("bad header: {e}"),
        })?;

        let base_dir = path
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .to_path_buf();
        let mut manifest =
            Manifest::new(header.depth_scale, base_dir).map_err(|_| Error::Manifest {
                path: path.to_path_buf(),
                line: 1,
                message: format!("depth_scale {} must be > 0", header.depth_scale),
            })?;
        for (idx, line) in lines {
            let line = line.map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let entry: ManifestEntry =
                serde_json::from_str(&line).map_err(|e| Error::Manifest {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    message: e.to_string(),
                })?;
            manifest.push(entry)?;
        }
        Ok(manifest)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = String::new();
        out.push_str(
            &serde_json::to_string(&ManifestHeader {
                depth_scale: self.depth_scale,
            })
            .expect("header serializes"),
        );
        out.push('\n');
        for entry in &self.entries {
            out.push_str(&serde_json::to_string(entry).expect("entry serializes"));
            out.push('\n');
        }
        write_bytes(path, out.as_bytes())
    }
}

fn map_open_error(path: &Path, source: std::io::Error) -> Error {
    if source.kind() == std::io::ErrorKind::NotFound {
        Error::MissingFile {
            path: path.to_path_buf(),
            source,
        }
    } else {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut file = fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads an 8-bit 3-channel PNG into a [0, 1] image.
pub fn load_rgb(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let reader = image::ImageReader::open(path).map_err(|source| map_open_error(path, source))?;
    let decoded = reader.decode().map_err(|source| Error::ImageDecode {
        path: path.to_path_buf(),
        source,
    })?;
    let buf = match decoded {
        image::DynamicImage::ImageRgb8(buf) => buf,
        other => {
            return Err(Error::PixelFormat {
                path: path.to_path_buf(),
                expected: "8-bit 3-channel rgb",
                found: format!("{:?}", other.color()),
            })
        }
    };
    let (w, h) = (buf.width(), buf.height());
    let data = buf.into_raw().iter().map(|&b| b as f64 / 255.0).collect();
    RgbImage::new(w, h, data)
}

/// Loads a 16-bit single-channel PNG into metric depth (`raw / depth_scale`).
pub fn load_depth(path: impl AsRef<Path>, depth_scale: f64) -> Result<DepthMap> {
    let path = path.as_ref();
    if !depth_scale.is_finite() || depth_scale <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "depth_scale",
            value: depth_scale,
            expected: "> 0",
        });
    }
    let reader = image::ImageReader::open(path).map_err(|source| map_open_error(path, source))?;
    let decoded = reader.decode().map_err(|source| Error::ImageDecode {
        path: path.to_path_buf(),
        source,
    })?;
    let buf = match decoded {
        image::DynamicImage::ImageLuma16(buf) => buf,
        other => {
            return Err(Error::PixelFormat {
                path: path.to_path_buf(),
                expected: "16-bit single-channel grayscale",
                found: format!("{:?}", other.color()),
            })
        }
    };
    let (w, h) = (buf.width(), buf.height());
    let data = buf
        .into_raw()
        .iter()
        .map(|&r| r as f64 / depth_scale)
        .collect();
    DepthMap::new(w, h, data)
}

/// Loads an RGB/depth pair, requiring identical dimensions.
pub fn load_pair(
    rgb_path: impl AsRef<Path>,
    depth_path: impl AsRef<Path>,
    depth_scale: f64,
) -> Result<SamplePair> {
    let rgb = load_rgb(rgb_path)?;
    let depth = load_depth(depth_path, depth_scale)?;
    SamplePair::new(rgb, depth)
}

/// Saves a [0, 1] image as an 8-bit PNG (`byte = round(value * 255)`).
pub fn save_rgb(rgb: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes: Vec<u8> = rgb
        .data()
        .iter()
        .map(|&v| (v * 255.0).round() as u8)
        .collect();
    let buf: image::ImageBuffer<image::Rgb<u8>, Vec<u8>> =
        image::ImageBuffer::from_raw(rgb.width(), rgb.height(), bytes)
            .expect("buffer length matches dimensions");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|source| Error::ImageEncode {
            path: path.to_path_buf(),
            source,
        })
}

/// Saves metric depth as a 16-bit PNG (`raw = round(meters * depth_scale)`,
/// half-up, clamped to the u16 range).
pub fn save_depth(depth: &DepthMap, path: impl AsRef<Path>, depth_scale: f64) -> Result<()> {
    let path = path.as_ref();
    if !depth_scale.is_finite() || depth_scale <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "depth_scale",
            value: depth_scale,
            expected: "> 0",
        });
    }
    let raw: Vec<u16> = depth
        .data()
        .iter()
        .map(|&d| (d * depth_scale).round().clamp(0.0, u16::MAX as f64) as u16)
        .collect();
    let buf: image::ImageBuffer<image::Luma<u16>, Vec<u16>> =
        image::ImageBuffer::from_raw(depth.width(), depth.height(), raw)
            .expect("buffer length matches dimensions");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|source| Error::ImageEncode {
            path: path.to_path_buf(),
            source,
        })
}

/// Saves both planes of a pair.
pub fn save_pair(
    pair: &SamplePair,
    rgb_path: impl AsRef<Path>,
    depth_path: impl AsRef<Path>,
    depth_scale: f64,
) -> Result<()> {
    save_rgb(&pair.rgb, rgb_path)?;
    save_depth(&pair.depth, depth_path, depth_scale)
}

fn check_report_names<T>(rows: &[(String, T)]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptyReportList);
    }
    for (name, _) in rows {
        if name.contains(',') || name.contains('\n') || name.contains('\r') {
            return Err(Error::UnwritableReportName { name: name.clone() });
        }
    }
    Ok(())
}

/// Writes depth-evaluation rows as CSV with the frozen column order
/// `name,abs_rel,log10,rmse,rmse_log,d1,d2,d3,n_valid` (floats at six
/// decimals, so the bytes are deterministic).
pub fn write_depth_reports(
    rows: &[(String, DepthEvalReport)],
    path: impl AsRef<Path>,
) -> Result<()> {
    check_report_names(rows)?;
    let mut out = String::from("name,abs_rel,log10,rmse,rmse_log,d1,d2,d3,n_valid\n");
    for (name, r) in rows {
        out.push_str(&format!(
            "{name},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{}\n",
            r.abs_rel, r.log10, r.rmse, r.rmse_log, r.d1, r.d2, r.d3, r.n_valid
        ));
    }
    write_bytes(path.as_ref(), out.as_bytes())
}

/// Writes distance rows as CSV: `name,rmse,mae,cosine`.
pub fn write_distance_reports(
    rows: &[(String, DistanceReport)],
    path: impl AsRef<Path>,
) -> Result<()> {
    check_report_names(rows)?;
    let mut out = String::from("name,rmse,mae,cosine\n");
    for (name, r) in rows {
        out.push_str(&format!(
            "{name},{:.6},{:.6},{:.6}\n",
            r.rmse, r.mae, r.cosine
        ));
    }
    write_bytes(path.as_ref(), out.as_bytes())
}

/// Writes quality rows as CSV: `name,affinity,diversity`.
pub fn write_quality_reports(
    rows: &[(String, QualityReport)],
    path: impl AsRef<Path>,
) -> Result<()> {
    check_report_names(rows)?;
    let mut out = String::from("name,affinity,diversity\n");
    for (name, r) in rows {
        out.push_str(&format!("{name},{:.6},{:.6}\n", r.affinity, r.diversity));
    }
    write_bytes(path.as_ref(), out.as_bytes())
}

/// Writes one JSON object per line (provenance logs).
pub fn write_jsonl<T: Serialize>(items: &[T], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item).expect("item serializes"));
        out.push('\n');
    }
    write_bytes(path, out.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_depth_to_meters() {
        // raw 5000 at scale 1000 reads back as 5 m
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("d.png");
        let depth = DepthMap::new(1, 1, vec![5.0]).unwrap();
        save_depth(&depth, &p, 1000.0).unwrap();
        let back = load_depth(&p, 1000.0).unwrap();
        assert_eq!(back.value(0, 0), 5.0);
    }

    #[test]
    fn rgb_byte_255_is_one() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("rgb.png");
        let rgb = RgbImage::filled(1, 1, [1.0; 3]).unwrap();
        save_rgb(&rgb, &p).unwrap();
        let back = load_rgb(&p).unwrap();
        assert_eq!(back.pixel(0, 0), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn depth_rounding_is_half_up() {
        // 9.9995 m at scale 1000 -> raw 9999.5 -> 10000
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("d.png");
        let depth = DepthMap::new(1, 1, vec![9.9995]).unwrap();
        save_depth(&depth, &p, 1000.0).unwrap();
        let back = load_depth(&p, 1000.0).unwrap();
        assert_eq!(back.value(0, 0), 10.0);
    }

    #[test]
    fn two_saves_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let (p1, p2) = (dir.path().join("a.png"), dir.path().join("b.png"));
        let rgb = RgbImage::from_fn(7, 5, |x, y| [x as f64 / 6.0, y as f64 / 4.0, 0.5]).unwrap();
        save_rgb(&rgb, &p1).unwrap();
        save_rgb(&rgb, &p2).unwrap();
        assert_eq!(fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    }

    #[test]
    fn load_rejects_wrong_formats_and_missing_files() {
        let dir = tempfile::tempdir().unwrap();

        let missing = dir.path().join("nope.png");
        assert!(matches!(load_rgb(&missing), Err(Error::MissingFile { .. })));

        // 16-bit gray where rgb is expected, and vice versa
        let gray = dir.path().join("gray.png");
        save_depth(&DepthMap::new(2, 2, vec![1.0; 4]).unwrap(), &gray, 1000.0).unwrap();
        assert!(matches!(load_rgb(&gray), Err(Error::PixelFormat { .. })));

        let rgb = dir.path().join("rgb.png");
        save_rgb(&RgbImage::filled(2, 2, [0.5; 3]).unwrap(), &rgb).unwrap();
        assert!(matches!(
            load_depth(&rgb, 1000.0),
            Err(Error::PixelFormat { .. })
        ));
    }

    #[test]
    fn load_pair_rejects_dimension_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let rgb_path = dir.path().join("rgb.png");
        let depth_path = dir.path().join("depth.png");
        save_rgb(&RgbImage::filled(3, 2, [0.5; 3]).unwrap(), &rgb_path).unwrap();
        save_depth(
            &DepthMap::new(2, 2, vec![1.0; 4]).unwrap(),
            &depth_path,
            1000.0,
        )
        .unwrap();
        assert!(matches!(
            load_pair(&rgb_path, &depth_path, 1000.0),
            Err(Error::PairDimensionMismatch { .. })
        ));
    }

    #[test]
    fn manifest_round_trip_and_duplicate_ids() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.jsonl");
        let mut m = Manifest::new(1000.0, dir.path()).unwrap();
        m.push(ManifestEntry {
            id: "a".into(),
            rgb_path: "images/a_rgb.png".into(),
            depth_path: "images/a_depth.png".into(),
        })
        .unwrap();
        assert!(matches!(
            m.push(ManifestEntry {
                id: "a".into(),
                rgb_path: "x".into(),
                depth_path: "y".into(),
            }),
            Err(Error::DuplicateId { .. })
        ));
        m.save(&path).unwrap();
        let back = Manifest::load(&path).unwrap();
        assert_eq!(back.depth_scale(), 1000.0);
        assert_eq!(back.entries(), m.entries());
        assert_eq!(
            back.rgb_path(&back.entries()[0]),
            dir.path().join("images/a_rgb.png")
        );
    }

    #[test]
    fn manifest_bad_lines_report_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.jsonl");
        fs::write(&path, "{\"depth_scale\":1000.0}\n{broken\n").unwrap();
        match Manifest::load(&path) {
            Err(Error::Manifest { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected manifest error, got {other:?}"),
        }
    }

    #[test]
    fn depth_report_file_has_header_and_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.csv");
        let report = DepthEvalReport {
            abs_rel: 0.1122,
            log10: 0.048,
            rmse: 0.406,
            rmse_log: 0.145,
            d1: 0.878,
            d2: 0.979,
            d3: 0.995,
            n_valid: 1234,
        };
        write_depth_reports(&[("baseline".into(), report)], &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0],
            "name,abs_rel,log10,rmse,rmse_log,d1,d2,d3,n_valid"
        );
        assert_eq!(
            lines[1],
            "baseline,0.112200,0.048000,0.406000,0.145000,0.878000,0.979000,0.995000,1234"
        );

        // numeric round trip at the formatting precision
        for (field, expect) in lines[1]
            .split(',')
            .skip(1)
            .zip([0.1122, 0.048, 0.406, 0.145, 0.878, 0.979, 0.995, 1234.0])
        {
            assert!((field.parse::<f64>().unwrap() - expect).abs() < 1e-6);
        }
    }

    #[test]
    fn report_writers_reject_empty_and_unwritable_names() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.csv");
        let empty: Vec<(String, DistanceReport)> = vec![];
        assert!(matches!(
            write_distance_reports(&empty, &path),
            Err(Error::EmptyReportList)
        ));
        let bad = vec![(
            "a,b".to_string(),
            DistanceReport {
                rmse: 0.0,
                mae: 0.0,
                cosine: 1.0,
            },
        )];
        assert!(matches!(
            write_distance_reports(&bad, &path),
            Err(Error::UnwritableReportName { .. })
        ));
    }
}
