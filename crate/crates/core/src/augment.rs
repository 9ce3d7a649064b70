//! Augmentation operations.
//!
//! The flagship operation is [`cut_depth`]: a sampled rectangle of the
//! ground-truth depth map, normalized to [0, 1] and replicated across the
//! RGB channels, is pasted into the input image at the same position. The
//! training target (the depth map) is never modified. [`cut_out`],
//! [`random_erasing`] and [`cut_mix`] are the usual region-replacement
//! baselines, and [`horizontal_flip`], [`color_jitter`] and [`rotate_pair`]
//! cover the classic photometric/geometric transforms.
//!
//! Every stochastic operation takes an [`RngStream`] and consumes draws in
//! a frozen, documented order so that a logged seed replays bit-exactly:
//!
//! * [`sample_region`]: a, b, c, d (origin fractions, then extent fractions)
//! * [`random_erasing`]: one draw per pixel per channel, rows outer,
//!   columns inner, channels innermost
//! * [`color_jitter`]: gamma, brightness, then one factor per channel (r, g, b)
//! * [`apply`]: one gate draw, then the four region draws, then whatever the
//!   dispatched method consumes

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{normalize_depth, DepthMap, DepthNormStrategy, RgbImage};
use crate::region::Region;
use crate::rng::RngStream;

/// Default cap on random rotation angles, in degrees.
pub const DEFAULT_MAX_ROTATION_DEG: f64 = 2.5;

/// Region-replacement method selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "cutdepth")]
    CutDepth,
    #[serde(rename = "cutout")]
    CutOut,
    #[serde(rename = "random-erasing")]
    RandomErasing,
    #[serde(rename = "cutmix")]
    CutMix,
    #[serde(rename = "none")]
    None,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::CutDepth,
        Method::CutOut,
        Method::RandomErasing,
        Method::CutMix,
        Method::None,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::CutDepth => "cutdepth",
            Method::CutOut => "cutout",
            Method::RandomErasing => "random-erasing",
            Method::CutMix => "cutmix",
            Method::None => "none",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cutdepth" => Ok(Method::CutDepth),
            "cutout" => Ok(Method::CutOut),
            "random-erasing" => Ok(Method::RandomErasing),
            "cutmix" => Ok(Method::CutMix),
            "none" => Ok(Method::None),
            other => Err(format!(
                "unknown method {other:?}; expected one of cutdepth, cutout, random-erasing, cutmix, none"
            )),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Fill source for [`cut_out`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "fill", rename_all = "kebab-case")]
pub enum FillMode {
    /// Per-channel mean of the whole input image.
    ImageMean,
    /// Fixed value in [0, 1] on every channel.
    Constant { value: f64 },
}

impl FillMode {
    fn validate(&self) -> Result<()> {
        if let FillMode::Constant { value } = *self {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidParameter {
                    name: "fill value",
                    value,
                    expected: "in [0,1]",
                });
            }
        }
        Ok(())
    }
}

/// Full configuration of one augmentation policy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AugmentSpec {
    pub method: Method,
    /// Region-extent hyperparameter in (0, 1]; bounds the sampled rectangle
    /// relative to the span remaining right/below its origin.
    pub p: f64,
    /// Chance that the method fires at all; 1 applies it to every sample.
    pub apply_probability: f64,
    /// CutOut fill source.
    pub fill_mode: FillMode,
    /// CutDepth normalization of pasted depth.
    pub depth_norm: DepthNormStrategy,
    /// When true, CutMix also swaps the region of the depth target from the
    /// partner sample. Off by default: the usual formulation replaces only
    /// the input image.
    pub cutmix_swap_depth: bool,
}

impl AugmentSpec {
    pub fn new(method: Method, p: f64) -> Result<Self> {
        let spec = Self {
            method,
            p,
            apply_probability: 1.0,
            fill_mode: FillMode::ImageMean,
            depth_norm: DepthNormStrategy::PerImageMinMax,
            cutmix_swap_depth: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.p.is_finite() || self.p <= 0.0 || self.p > 1.0 {
            return Err(Error::InvalidParameter {
                name: "p",
                value: self.p,
                expected: "in (0,1]",
            });
        }
        if !self.apply_probability.is_finite() || !(0.0..=1.0).contains(&self.apply_probability) {
            return Err(Error::InvalidParameter {
                name: "apply_probability",
                value: self.apply_probability,
                expected: "in [0,1]",
            });
        }
        self.fill_mode.validate()
    }
}

/// One RGB image with its depth target; dimensions always agree.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePair {
    pub rgb: RgbImage,
    pub depth: DepthMap,
}

impl SamplePair {
    pub fn new(rgb: RgbImage, depth: DepthMap) -> Result<Self> {
        if rgb.width() != depth.width() || rgb.height() != depth.height() {
            return Err(Error::PairDimensionMismatch {
                rgb_width: rgb.width(),
                rgb_height: rgb.height(),
                depth_width: depth.width(),
                depth_height: depth.height(),
            });
        }
        Ok(Self { rgb, depth })
    }

    pub fn width(&self) -> u32 {
        self.rgb.width()
    }

    pub fn height(&self) -> u32 {
        self.rgb.height()
    }
}

/// Per-sample log of what [`apply`] did, sufficient to replay the item
/// together with its stream seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceRecord {
    pub method: Method,
    pub applied: bool,
    /// The gate draw compared against `apply_probability`; absent for
    /// method `none`, which consumes no draws.
    pub gate_draw: Option<f64>,
    pub region: Option<Region>,
    /// The a, b, c, d draws behind `region`.
    pub region_draws: Option<[f64; 4]>,
    /// Number of additional per-pixel draws consumed (random erasing).
    pub pixel_draws: u64,
}

impl ProvenanceRecord {
    fn skipped(method: Method, gate_draw: Option<f64>) -> Self {
        Self {
            method,
            applied: false,
            gate_draw,
            region: None,
            region_draws: None,
            pixel_draws: 0,
        }
    }
}

/// Converts four unit draws into a paste rectangle for a `width` x `height`
/// image.
///
/// The origin is `(floor(a*W), floor(b*H))` and the extent is
/// `(floor((W-l)*c*p), floor((H-u)*d*p))`, lower-clamped to 1 pixel, so the
/// rectangle always fits: `p` bounds the extent relative to the span that
/// remains right of/below the origin.
pub fn region_from_draws(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    width: u32,
    height: u32,
    p: f64,
) -> Result<Region> {
    if !p.is_finite() || p <= 0.0 || p > 1.0 {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            expected: "in (0,1]",
        });
    }
    if width == 0 || height == 0 {
        return Err(Error::EmptyDimensions { width, height });
    }
    for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if !v.is_finite() || !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter {
                name,
                value: v,
                expected: "in [0,1]",
            });
        }
    }
    let l = ((a * width as f64) as u32).min(width - 1);
    let u = ((b * height as f64) as u32).min(height - 1);
    let w = ((((width - l) as f64) * c * p) as u32).max(1);
    let h = ((((height - u) as f64) * d * p) as u32).max(1);
    let region = Region { l, u, w, h };
    region.validate_for(width, height)?;
    Ok(region)
}

/// Samples a paste rectangle, consuming exactly four draws (a, b, c, d).
pub fn sample_region(rng: &mut RngStream, width: u32, height: u32, p: f64) -> Result<Region> {
    let a = rng.uniform_draw();
    let b = rng.uniform_draw();
    let c = rng.uniform_draw();
    let d = rng.uniform_draw();
    region_from_draws(a, b, c, d, width, height, p)
}

/// Pastes normalized, channel-replicated depth into the RGB image inside
/// `region`. Pixels outside the region are returned bit-identical; the
/// depth target itself is not part of the output and remains untouched.
pub fn cut_depth(
    pair: &SamplePair,
    region: Region,
    strategy: DepthNormStrategy,
) -> Result<RgbImage> {
    region.validate_for(pair.width(), pair.height())?;
    let plane = normalize_depth(&pair.depth, strategy)?;
    let mut out = pair.rgb.clone();
    for y in region.u..region.bottom() {
        for x in region.l..region.right() {
            let v = plane.value(x, y);
            out.set_pixel(x, y, [v, v, v]);
        }
    }
    Ok(out)
}

/// Replaces the region with the image mean or a constant.
pub fn cut_out(rgb: &RgbImage, region: Region, fill: FillMode) -> Result<RgbImage> {
    region.validate_for(rgb.width(), rgb.height())?;
    fill.validate()?;
    let fill_px = match fill {
        FillMode::ImageMean => rgb.channel_means(),
        FillMode::Constant { value } => [value; 3],
    };
    let mut out = rgb.clone();
    for y in region.u..region.bottom() {
        for x in region.l..region.right() {
            out.set_pixel(x, y, fill_px);
        }
    }
    Ok(out)
}

/// Replaces every channel of every pixel in the region with an independent
/// uniform draw. Draw order is row-major with channels innermost.
pub fn random_erasing(rgb: &RgbImage, region: Region, rng: &mut RngStream) -> Result<RgbImage> {
    region.validate_for(rgb.width(), rgb.height())?;
    let mut out = rgb.clone();
    for y in region.u..region.bottom() {
        for x in region.l..region.right() {
            let px = [rng.uniform_draw(), rng.uniform_draw(), rng.uniform_draw()];
            out.set_pixel(x, y, px);
        }
    }
    Ok(out)
}

/// Copies the region from `src` into `dst`; everything else stays `dst`.
pub fn cut_mix(dst: &RgbImage, src: &RgbImage, region: Region) -> Result<RgbImage> {
    if dst.width() != src.width() || dst.height() != src.height() {
        return Err(Error::ShapeMismatch {
            left_width: dst.width(),
            left_height: dst.height(),
            right_width: src.width(),
            right_height: src.height(),
        });
    }
    region.validate_for(dst.width(), dst.height())?;
    let mut out = dst.clone();
    for y in region.u..region.bottom() {
        for x in region.l..region.right() {
            out.set_pixel(x, y, src.pixel(x, y));
        }
    }
    Ok(out)
}

/// Mirrors both planes about the vertical axis, jointly.
pub fn horizontal_flip(pair: &SamplePair) -> SamplePair {
    let w = pair.width();
    let rgb = RgbImage::from_fn(w, pair.height(), |x, y| pair.rgb.pixel(w - 1 - x, y))
        .expect("flip preserves validity");
    let depth = DepthMap::from_fn(w, pair.height(), |x, y| pair.depth.value(w - 1 - x, y))
        .expect("flip preserves validity");
    SamplePair { rgb, depth }
}

/// Parameter ranges for [`color_jitter`]; each is a positive interval the
/// corresponding factor is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JitterRanges {
    pub gamma: (f64, f64),
    pub brightness: (f64, f64),
    pub per_channel: (f64, f64),
}

impl Default for JitterRanges {
    fn default() -> Self {
        Self {
            gamma: (0.9, 1.1),
            brightness: (0.9, 1.1),
            per_channel: (0.9, 1.1),
        }
    }
}

impl JitterRanges {
    fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [
            ("gamma range", self.gamma),
            ("brightness range", self.brightness),
            ("per-channel range", self.per_channel),
        ] {
            if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi < lo {
                return Err(Error::InvalidParameter {
                    name,
                    value: lo,
                    expected: "a positive interval (lo > 0, hi >= lo)",
                });
            }
        }
        Ok(())
    }
}

/// Photometric jitter: `out = clamp(rgb^gamma * brightness * c_k, 0, 1)`
/// with gamma and brightness drawn once per image and one factor per
/// channel. Draw order: gamma, brightness, c_r, c_g, c_b. Depth untouched.
pub fn color_jitter(
    rgb: &RgbImage,
    rng: &mut RngStream,
    ranges: &JitterRanges,
) -> Result<RgbImage> {
    ranges.validate()?;
    let gamma = rng.uniform_in(ranges.gamma.0, ranges.gamma.1);
    let brightness = rng.uniform_in(ranges.brightness.0, ranges.brightness.1);
    let factors = [
        rng.uniform_in(ranges.per_channel.0, ranges.per_channel.1),
        rng.uniform_in(ranges.per_channel.0, ranges.per_channel.1),
        rng.uniform_in(ranges.per_channel.0, ranges.per_channel.1),
    ];
    RgbImage::from_fn(rgb.width(), rgb.height(), |x, y| {
        let px = rgb.pixel(x, y);
        [0, 1, 2].map(|k| (px[k].powf(gamma) * brightness * factors[k]).clamp(0.0, 1.0))
    })
}

/// Rotates both planes by `angle_deg` about the image center. RGB is
/// resampled bilinearly; depth uses nearest-neighbor so metric values are
/// preserved. Each border pixel owns a half-pixel footprint: sources more
/// than half a pixel outside the grid become 0 (invalid, for depth), and
/// sources within the footprint clamp onto the grid.
pub fn rotate_pair(pair: &SamplePair, angle_deg: f64, max_angle_deg: f64) -> Result<SamplePair> {
    if !max_angle_deg.is_finite() || max_angle_deg < 0.0 {
        return Err(Error::InvalidParameter {
            name: "max_angle_deg",
            value: max_angle_deg,
            expected: ">= 0",
        });
    }
    if !angle_deg.is_finite() || angle_deg.abs() > max_angle_deg {
        return Err(Error::InvalidParameter {
            name: "angle_deg",
            value: angle_deg,
            expected: "within +/- max_angle_deg",
        });
    }
    let (w, h) = (pair.width(), pair.height());
    let theta = angle_deg.to_radians();
    let (sin, cos) = theta.sin_cos();
    let cx = (w - 1) as f64 / 2.0;
    let cy = (h - 1) as f64 / 2.0;
    // inverse map: source position for each output pixel
    let source = |x: u32, y: u32| -> (f64, f64) {
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        (cx + cos * dx + sin * dy, cy - sin * dx + cos * dy)
    };
    let in_support = |sx: f64, sy: f64| {
        sx >= -0.5 && sx <= (w - 1) as f64 + 0.5 && sy >= -0.5 && sy <= (h - 1) as f64 + 0.5
    };
    let clamp_to_grid =
        |sx: f64, sy: f64| (sx.clamp(0.0, (w - 1) as f64), sy.clamp(0.0, (h - 1) as f64));

    let rgb = RgbImage::from_fn(w, h, |x, y| {
        let (sx, sy) = source(x, y);
        if !in_support(sx, sy) {
            return [0.0; 3];
        }
        let (sx, sy) = clamp_to_grid(sx, sy);
        let x0 = sx.floor() as u32;
        let y0 = sy.floor() as u32;
        let x1 = (x0 + 1).min(w - 1);
        let y1 = (y0 + 1).min(h - 1);
        let fx = sx - x0 as f64;
        let fy = sy - y0 as f64;
        let p00 = pair.rgb.pixel(x0, y0);
        let p10 = pair.rgb.pixel(x1, y0);
        let p01 = pair.rgb.pixel(x0, y1);
        let p11 = pair.rgb.pixel(x1, y1);
        [0, 1, 2].map(|k| {
            let top = p00[k] * (1.0 - fx) + p10[k] * fx;
            let bot = p01[k] * (1.0 - fx) + p11[k] * fx;
            (top * (1.0 - fy) + bot * fy).clamp(0.0, 1.0)
        })
    })?;
    let depth = DepthMap::from_fn(w, h, |x, y| {
        let (sx, sy) = source(x, y);
        if !in_support(sx, sy) {
            return 0.0;
        }
        let (sx, sy) = clamp_to_grid(sx, sy);
        pair.depth.value(sx.round() as u32, sy.round() as u32)
    })?;
    Ok(SamplePair { rgb, depth })
}

/// Draws an angle in [-max_angle_deg, max_angle_deg] (one draw) and rotates.
pub fn random_rotation(
    pair: &SamplePair,
    rng: &mut RngStream,
    max_angle_deg: f64,
) -> Result<SamplePair> {
    if !max_angle_deg.is_finite() || max_angle_deg < 0.0 {
        return Err(Error::InvalidParameter {
            name: "max_angle_deg",
            value: max_angle_deg,
            expected: ">= 0",
        });
    }
    let angle = rng.uniform_in(-max_angle_deg, max_angle_deg);
    rotate_pair(pair, angle, max_angle_deg)
}

/// Runs one augmentation policy on one sample.
///
/// For any method other than `none`, one gate draw is consumed and the
/// method fires iff `gate < apply_probability`; a fired method then consumes
/// four region draws plus whatever it needs. Method `none` consumes nothing
/// and returns the input unchanged. CutMix requires `partner`; other methods
/// ignore it. The returned pair shares the input's depth target except for
/// CutMix with `cutmix_swap_depth` enabled.
pub fn apply(
    pair: &SamplePair,
    partner: Option<&SamplePair>,
    spec: &AugmentSpec,
    rng: &mut RngStream,
) -> Result<(SamplePair, ProvenanceRecord)> {
    spec.validate()?;
    if spec.method == Method::None {
        return Ok((pair.clone(), ProvenanceRecord::skipped(Method::None, None)));
    }
    let gate = rng.uniform_draw();
    if gate >= spec.apply_probability {
        return Ok((
            pair.clone(),
            ProvenanceRecord::skipped(spec.method, Some(gate)),
        ));
    }
    let a = rng.uniform_draw();
    let b = rng.uniform_draw();
    let c = rng.uniform_draw();
    let d = rng.uniform_draw();
    let region = region_from_draws(a, b, c, d, pair.width(), pair.height(), spec.p)?;

    let mut pixel_draws = 0u64;
    let mut depth = pair.depth.clone();
    let rgb = match spec.method {
        Method::CutDepth => cut_depth(pair, region, spec.depth_norm)?,
        Method::CutOut => cut_out(&pair.rgb, region, spec.fill_mode)?,
        Method::RandomErasing => {
            pixel_draws = region.area() * 3;
            random_erasing(&pair.rgb, region, rng)?
        }
        Method::CutMix => {
            let partner = partner.ok_or(Error::MissingPartner)?;
            if spec.cutmix_swap_depth {
                depth = DepthMap::from_fn(pair.width(), pair.height(), |x, y| {
                    if region.contains(x, y) {
                        partner.depth.value(x, y)
                    } else {
                        pair.depth.value(x, y)
                    }
                })?;
            }
            cut_mix(&pair.rgb, &partner.rgb, region)?
        }
        Method::None => unreachable!("handled above"),
    };

    let record = ProvenanceRecord {
        method: spec.method,
        applied: true,
        gate_draw: Some(gate),
        region: Some(region),
        region_draws: Some([a, b, c, d]),
        pixel_draws,
    };
    Ok((SamplePair::new(rgb, depth)?, record))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{replicate_channels, Plane};

    fn test_pair() -> SamplePair {
        // 2x2: distinguishable rgb, depths 1..4 row-major
        let rgb = RgbImage::new(
            2,
            2,
            vec![
                0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.15, 0.25, 0.35,
            ],
        )
        .unwrap();
        let depth = DepthMap::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        SamplePair::new(rgb, depth).unwrap()
    }

    #[test]
    fn region_from_draws_full_extent_corner() {
        let r = region_from_draws(0.0, 0.0, 1.0, 1.0, 100, 100, 1.0).unwrap();
        assert_eq!(
            r,
            Region {
                l: 0,
                u: 0,
                w: 100,
                h: 100
            }
        );
    }

    #[test]
    fn region_from_draws_hand_case() {
        // floor(0.5*100)=50; floor((100-50)*0.5*0.5)=floor(12.5)=12
        let r = region_from_draws(0.5, 0.5, 0.5, 0.5, 100, 100, 0.5).unwrap();
        assert_eq!(
            r,
            Region {
                l: 50,
                u: 50,
                w: 12,
                h: 12
            }
        );
    }

    #[test]
    fn region_from_draws_clamps_to_one_pixel() {
        let r = region_from_draws(0.999, 0.999, 0.7, 0.2, 100, 100, 1.0).unwrap();
        assert_eq!((r.l, r.u, r.w, r.h), (99, 99, 1, 1));
    }

    #[test]
    fn region_from_draws_rejects_bad_p() {
        for p in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(region_from_draws(0.5, 0.5, 0.5, 0.5, 10, 10, p).is_err());
        }
    }

    #[test]
    fn sample_region_consumes_four_draws() {
        let mut a = RngStream::new(11);
        let mut b = RngStream::new(11);
        sample_region(&mut a, 64, 48, 0.5).unwrap();
        for _ in 0..4 {
            b.uniform_draw();
        }
        assert_eq!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn cut_depth_replaces_single_pixel() {
        let pair = test_pair();
        let region = Region::new(0, 0, 1, 1).unwrap();
        let out = cut_depth(&pair, region, DepthNormStrategy::PerImageMinMax).unwrap();
        assert_eq!(out.pixel(0, 0), [0.0, 0.0, 0.0]); // depth 1.0 is the minimum
        for (x, y) in [(1, 0), (0, 1), (1, 1)] {
            assert_eq!(out.pixel(x, y), pair.rgb.pixel(x, y));
        }
    }

    #[test]
    fn cut_depth_full_region_equals_replicated_normalized_depth() {
        let pair = test_pair();
        let region = Region::new(0, 0, 2, 2).unwrap();
        let out = cut_depth(&pair, region, DepthNormStrategy::PerImageMinMax).unwrap();
        let plane = normalize_depth(&pair.depth, DepthNormStrategy::PerImageMinMax).unwrap();
        let expect = replicate_channels(&plane, 3).unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn cut_depth_right_column_hand_case() {
        // depths {1,2,3,4}: min-max maps d -> (d-1)/3; right column holds 2 and 4
        let pair = test_pair();
        let region = Region::new(1, 0, 1, 2).unwrap();
        let out = cut_depth(&pair, region, DepthNormStrategy::PerImageMinMax).unwrap();
        let third = (2.0 - 1.0) / 3.0;
        assert_eq!(out.pixel(1, 0), [third, third, third]);
        assert_eq!(out.pixel(1, 1), [1.0, 1.0, 1.0]);
        assert_eq!(out.pixel(0, 0), pair.rgb.pixel(0, 0));
        assert_eq!(out.pixel(0, 1), pair.rgb.pixel(0, 1));
    }

    #[test]
    fn cut_depth_rejects_mismatched_shapes() {
        let rgb = RgbImage::filled(3, 2, [0.5; 3]).unwrap();
        let depth = DepthMap::new(2, 2, vec![1.0; 4]).unwrap();
        assert!(SamplePair::new(rgb, depth).is_err());
    }

    #[test]
    fn cut_out_constant_zero_full_region() {
        let pair = test_pair();
        let region = Region::new(0, 0, 2, 2).unwrap();
        let out = cut_out(&pair.rgb, region, FillMode::Constant { value: 0.0 }).unwrap();
        assert!(out.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cut_out_mean_fill_is_identity_on_uniform_image() {
        let rgb = RgbImage::filled(4, 4, [0.5; 3]).unwrap();
        let region = Region::new(1, 1, 2, 2).unwrap();
        let out = cut_out(&rgb, region, FillMode::ImageMean).unwrap();
        assert_eq!(out, rgb);
    }

    #[test]
    fn cut_out_mean_fill_hand_case() {
        // 2x1 gray values {0.0, 1.0}: mean 0.5 fills the left pixel
        let rgb = RgbImage::new(2, 1, vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        let region = Region::new(0, 0, 1, 1).unwrap();
        let out = cut_out(&rgb, region, FillMode::ImageMean).unwrap();
        assert_eq!(out.pixel(0, 0), [0.5, 0.5, 0.5]);
        assert_eq!(out.pixel(1, 0), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn random_erasing_is_deterministic_and_local() {
        let pair = test_pair();
        let region = Region::new(0, 0, 1, 1).unwrap();
        let a = random_erasing(&pair.rgb, region, &mut RngStream::new(5)).unwrap();
        let b = random_erasing(&pair.rgb, region, &mut RngStream::new(5)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.pixel(0, 0), pair.rgb.pixel(0, 0));
        for (x, y) in [(1, 0), (0, 1), (1, 1)] {
            assert_eq!(a.pixel(x, y), pair.rgb.pixel(x, y));
        }
    }

    #[test]
    fn random_erasing_mean_is_half() {
        let rgb = RgbImage::filled(200, 167, [0.0; 3]).unwrap();
        let region = Region::new(0, 0, 200, 167).unwrap();
        let out = random_erasing(&rgb, region, &mut RngStream::new(77)).unwrap();
        let mean = out.data().iter().sum::<f64>() / out.data().len() as f64;
        assert!(
            (mean - 0.5).abs() < 0.005,
            "erased mean {mean} should be 0.5 +/- 0.005"
        );
    }

    #[test]
    fn cut_mix_identity_and_full_cases() {
        let pair = test_pair();
        let region = Region::new(0, 0, 1, 2).unwrap();
        let same = cut_mix(&pair.rgb, &pair.rgb, region).unwrap();
        assert_eq!(same, pair.rgb);

        let other = RgbImage::filled(2, 2, [0.9, 0.1, 0.2]).unwrap();
        let full = Region::new(0, 0, 2, 2).unwrap();
        let out = cut_mix(&pair.rgb, &other, full).unwrap();
        assert_eq!(out, other);
    }

    #[test]
    fn cut_mix_top_row_hand_case() {
        let dst = RgbImage::filled(2, 2, [0.2; 3]).unwrap();
        let src = RgbImage::filled(2, 2, [0.8; 3]).unwrap();
        let top = Region::new(0, 0, 2, 1).unwrap();
        let out = cut_mix(&dst, &src, top).unwrap();
        for x in 0..2 {
            assert_eq!(out.pixel(x, 0), [0.8; 3]);
            assert_eq!(out.pixel(x, 1), [0.2; 3]);
        }
    }

    #[test]
    fn cut_mix_rejects_shape_mismatch() {
        let a = RgbImage::filled(2, 2, [0.2; 3]).unwrap();
        let b = RgbImage::filled(3, 2, [0.8; 3]).unwrap();
        let region = Region::new(0, 0, 1, 1).unwrap();
        assert!(matches!(
            cut_mix(&a, &b, region),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn horizontal_flip_is_an_involution() {
        let pair = test_pair();
        let twice = horizontal_flip(&horizontal_flip(&pair));
        assert_eq!(twice.rgb, pair.rgb);
        assert_eq!(twice.depth, pair.depth);
    }

    #[test]
    fn horizontal_flip_swaps_columns_jointly() {
        let pair = test_pair();
        let flipped = horizontal_flip(&pair);
        for y in 0..2 {
            for x in 0..2 {
                assert_eq!(flipped.rgb.pixel(x, y), pair.rgb.pixel(1 - x, y));
                assert_eq!(flipped.depth.value(x, y), pair.depth.value(1 - x, y));
            }
        }
    }

    #[test]
    fn color_jitter_with_unit_ranges_is_identity() {
        let pair = test_pair();
        let ranges = JitterRanges {
            gamma: (1.0, 1.0),
            brightness: (1.0, 1.0),
            per_channel: (1.0, 1.0),
        };
        let out = color_jitter(&pair.rgb, &mut RngStream::new(3), &ranges).unwrap();
        assert_eq!(out, pair.rgb);
    }

    #[test]
    fn color_jitter_gamma_two_squares_values() {
        let rgb = RgbImage::filled(1, 1, [0.5; 3]).unwrap();
        let ranges = JitterRanges {
            gamma: (2.0, 2.0),
            brightness: (1.0, 1.0),
            per_channel: (1.0, 1.0),
        };
        let out = color_jitter(&rgb, &mut RngStream::new(3), &ranges).unwrap();
        for v in out.pixel(0, 0) {
            assert!((v - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn color_jitter_rejects_nonpositive_ranges() {
        let rgb = RgbImage::filled(1, 1, [0.5; 3]).unwrap();
        let ranges = JitterRanges {
            gamma: (1.0, 1.0),
            brightness: (0.0, 1.0),
            per_channel: (1.0, 1.0),
        };
        assert!(color_jitter(&rgb, &mut RngStream::new(3), &ranges).is_err());
    }

    #[test]
    fn rotate_zero_is_identity() {
        let pair = test_pair();
        let out = rotate_pair(&pair, 0.0, DEFAULT_MAX_ROTATION_DEG).unwrap();
        assert_eq!(out.depth, pair.depth);
        for (a, b) in out.rgb.data().iter().zip(pair.rgb.data()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rotate_half_turn_permutes_2x2() {
        let pair = test_pair();
        let out = rotate_pair(&pair, 180.0, 180.0).unwrap();
        for y in 0..2 {
            for x in 0..2 {
                assert_eq!(out.depth.value(x, y), pair.depth.value(1 - x, 1 - y));
                let got = out.rgb.pixel(x, y);
                let expect = pair.rgb.pixel(1 - x, 1 - y);
                for k in 0..3 {
                    assert!((got[k] - expect[k]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rotated_depth_only_contains_input_values_or_zero() {
        let pair = test_pair();
        let out = rotate_pair(&pair, 2.0, DEFAULT_MAX_ROTATION_DEG).unwrap();
        for &d in out.depth.data() {
            assert!(d == 0.0 || pair.depth.data().contains(&d));
        }
    }

    #[test]
    fn rotate_rejects_angle_beyond_cap() {
        let pair = test_pair();
        assert!(rotate_pair(&pair, 3.0, DEFAULT_MAX_ROTATION_DEG).is_err());
    }

    #[test]
    fn rotation_matches_independent_inverse_map_for_depth() {
        // oracle: recompute the nearest-neighbor source for every pixel
        let depth = DepthMap::from_fn(9, 7, |x, y| 1.0 + (x + 10 * y) as f64 * 0.01).unwrap();
        let rgb = RgbImage::filled(9, 7, [0.5; 3]).unwrap();
        let pair = SamplePair::new(rgb, depth).unwrap();
        let angle: f64 = 2.0;
        let out = rotate_pair(&pair, angle, DEFAULT_MAX_ROTATION_DEG).unwrap();
        let t = angle.to_radians();
        let (cx, cy) = (4.0, 3.0);
        for y in 0..7u32 {
            for x in 0..9u32 {
                let dx = x as f64 - cx;
                let dy = y as f64 - cy;
                let sx = cx + t.cos() * dx + t.sin() * dy;
                let sy = cy - t.sin() * dx + t.cos() * dy;
                let expect = if (-0.5..=8.5).contains(&sx) && (-0.5..=6.5).contains(&sy) {
                    pair.depth.value(
                        sx.clamp(0.0, 8.0).round() as u32,
                        sy.clamp(0.0, 6.0).round() as u32,
                    )
                } else {
                    0.0
                };
                assert_eq!(out.depth.value(x, y), expect, "pixel ({x},{y})");
            }
        }
    }

    #[test]
    fn apply_probability_zero_never_fires() {
        let pair = test_pair();
        let mut spec = AugmentSpec::new(Method::CutDepth, 0.5).unwrap();
        spec.apply_probability = 0.0;
        let (out, record) = apply(&pair, None, &spec, &mut RngStream::new(1)).unwrap();
        assert_eq!(out.rgb, pair.rgb);
        assert_eq!(out.depth, pair.depth);
        assert!(!record.applied);
        assert!(record.region.is_none());
    }

    #[test]
    fn apply_records_the_pasted_region() {
        let pair = test_pair();
        let spec = AugmentSpec::new(Method::CutDepth, 1.0).unwrap();
        let (out, record) = apply(&pair, None, &spec, &mut RngStream::new(9)).unwrap();
        assert!(record.applied);
        let region = record.region.unwrap();
        let plane = normalize_depth(&pair.depth, spec.depth_norm).unwrap();
        for y in 0..pair.height() {
            for x in 0..pair.width() {
                if region.contains(x, y) {
                    let v = plane.value(x, y);
                    assert_eq!(out.rgb.pixel(x, y), [v, v, v]);
                } else {
                    assert_eq!(out.rgb.pixel(x, y), pair.rgb.pixel(x, y));
                }
            }
        }
        // the depth target is never modified
        assert_eq!(out.depth, pair.depth);
    }

    #[test]
    fn apply_is_reproducible() {
        let pair = test_pair();
        let spec = AugmentSpec::new(Method::RandomErasing, 0.8).unwrap();
        let (out1, rec1) = apply(&pair, None, &spec, &mut RngStream::new(21)).unwrap();
        let (out2, rec2) = apply(&pair, None, &spec, &mut RngStream::new(21)).unwrap();
        assert_eq!(out1.rgb, out2.rgb);
        assert_eq!(rec1, rec2);
    }

    #[test]
    fn apply_none_method_is_identity_and_consumes_no_draws() {
        let pair = test_pair();
        let spec = AugmentSpec::new(Method::None, 0.5).unwrap();
        let mut rng = RngStream::new(33);
        let (out, record) = apply(&pair, None, &spec, &mut rng).unwrap();
        assert_eq!(out.rgb, pair.rgb);
        assert!(!record.applied);
        assert_eq!(record.gate_draw, None);
        assert_eq!(rng, RngStream::new(33));
    }

    #[test]
    fn apply_cutmix_requires_partner() {
        let pair = test_pair();
        let spec = AugmentSpec::new(Method::CutMix, 0.5).unwrap();
        assert!(matches!(
            apply(&pair, None, &spec, &mut RngStream::new(2)),
            Err(Error::MissingPartner)
        ));
    }

    #[test]
    fn apply_cutmix_swaps_depth_only_when_asked() {
        let pair = test_pair();
        let partner_rgb = RgbImage::filled(2, 2, [0.9; 3]).unwrap();
        let partner_depth = DepthMap::new(2, 2, vec![9.0; 4]).unwrap();
        let partner = SamplePair::new(partner_rgb, partner_depth).unwrap();

        let spec = AugmentSpec::new(Method::CutMix, 1.0).unwrap();
        let (out, rec) = apply(&pair, Some(&partner), &spec, &mut RngStream::new(4)).unwrap();
        assert!(rec.applied);
        assert_eq!(out.depth, pair.depth);

        let mut swap = spec.clone();
        swap.cutmix_swap_depth = true;
        let (out, rec) = apply(&pair, Some(&partner), &swap, &mut RngStream::new(4)).unwrap();
        let region = rec.region.unwrap();
        for y in 0..2 {
            for x in 0..2 {
                let expect = if region.contains(x, y) {
                    9.0
                } else {
                    pair.depth.value(x, y)
                };
                assert_eq!(out.depth.value(x, y), expect);
            }
        }
    }

    #[test]
    fn normalize_then_replicate_stays_in_unit_range() {
        let pair = test_pair();
        let plane = normalize_depth(&pair.depth, DepthNormStrategy::PerImageMinMax).unwrap();
        let rgb = replicate_channels(&plane, 3).unwrap();
        assert!(rgb.data().iter().all(|&v| (0.0..=1.0).contains(&v)));
        let _ = Plane::new(2, 2, plane.data().to_vec()).unwrap();
    }
}
