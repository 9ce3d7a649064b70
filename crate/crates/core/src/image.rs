//! In-memory image types.
//!
//! All pixel math happens on `f64` values: RGB channels live in [0, 1] and
//! depth is metric (meters, with 0 marking invalid/missing). Quantized 8/16
//! bit representations exist only at the file boundary in [`crate::io`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// RGB image, row-major with interleaved channels, every value in [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    data: Vec<f64>,
}

impl RgbImage {
    pub const CHANNELS: u32 = 3;

    pub fn new(width: u32, height: u32, data: Vec<f64>) -> Result<Self> {
        check_dims(width, height)?;
        let expect = width as usize * height as usize * 3;
        if data.len() != expect {
            return Err(Error::BufferSize {
                width,
                height,
                channels: 3,
                got: data.len(),
            });
        }
        for (index, &value) in data.iter().enumerate() {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(Error::PixelRange { index, value });
            }
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: u32, height: u32, rgb: [f64; 3]) -> Result<Self> {
        Self::from_fn(width, height, |_, _| rgb)
    }

    pub fn from_fn(
        width: u32,
        height: u32,
        mut f: impl FnMut(u32, u32) -> [f64; 3],
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width as usize * height as usize * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn index(&self, x: u32, y: u32) -> usize {
        debug_assert!(x < self.width && y < self.height);
        (y as usize * self.width as usize + x as usize) * 3
    }

    pub fn pixel(&self, x: u32, y: u32) -> [f64; 3] {
        let i = self.index(x, y);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub(crate) fn set_pixel(&mut self, x: u32, y: u32, rgb: [f64; 3]) {
        let i = self.index(x, y);
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    /// Per-channel mean over the whole image.
    pub fn channel_means(&self) -> [f64; 3] {
        let mut sums = [0.0f64; 3];
        for px in self.data.chunks_exact(3) {
            sums[0] += px[0];
            sums[1] += px[1];
            sums[2] += px[2];
        }
        let n = (self.width as usize * self.height as usize) as f64;
        [sums[0] / n, sums[1] / n, sums[2] / n]
    }

    /// Luminance plane, defined as the plain channel mean (r + g + b) / 3.
    pub fn luminance(&self) -> Plane {
        let data = self
            .data
            .chunks_exact(3)
            .map(|px| (px[0] + px[1] + px[2]) / 3.0)
            .collect();
        Plane {
            width: self.width,
            height: self.height,
            data,
        }
    }
}

/// Single-channel metric depth map. Values are meters, finite and >= 0;
/// 0 denotes invalid/missing depth.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthMap {
    width: u32,
    height: u32,
    data: Vec<f64>,
}

impl DepthMap {
    pub const CHANNELS: u32 = 1;

    pub fn new(width: u32, height: u32, data: Vec<f64>) -> Result<Self> {
        check_dims(width, height)?;
        let expect = width as usize * height as usize;
        if data.len() != expect {
            return Err(Error::BufferSize {
                width,
                height,
                channels: 1,
                got: data.len(),
            });
        }
        for (index, &value) in data.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::DepthRange { index, value });
            }
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> f64) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn value(&self, x: u32, y: u32) -> f64 {
        debug_assert!(x < self.width && y < self.height);
        self.data[y as usize * self.width as usize + x as usize]
    }

    /// Number of valid (> 0) pixels.
    pub fn valid_count(&self) -> u64 {
        self.data.iter().filter(|&&d| d > 0.0).count() as u64
    }
}

/// Free-form single-channel plane of finite values (normalized depth,
/// luminance, gradient magnitudes).
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    width: u32,
    height: u32,
    data: Vec<f64>,
}

impl Plane {
    pub fn new(width: u32, height: u32, data: Vec<f64>) -> Result<Self> {
        check_dims(width, height)?;
        let expect = width as usize * height as usize;
        if data.len() != expect {
            return Err(Error::BufferSize {
                width,
                height,
                channels: 1,
                got: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> f64) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn value(&self, x: u32, y: u32) -> f64 {
        debug_assert!(x < self.width && y < self.height);
        self.data[y as usize * self.width as usize + x as usize]
    }
}

fn check_dims(width: u32, height: u32) -> Result<()> {
    if width == 0 || height == 0 {
        Err(Error::EmptyDimensions { width, height })
    } else {
        Ok(())
    }
}

/// How metric depth is mapped into [0, 1] before being pasted into an image.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum DepthNormStrategy {
    /// Affine map of the valid (> 0) pixels onto [0, 1] using this image's
    /// own min/max. A constant valid depth (max == min) maps to 0.
    #[default]
    PerImageMinMax,
    /// Affine map of [lo, hi] meters onto [0, 1], clamping values outside.
    FixedRange { lo: f64, hi: f64 },
}

/// Maps depth into a [0, 1] plane. Invalid (0) pixels always map to 0.
pub fn normalize_depth(depth: &DepthMap, strategy: DepthNormStrategy) -> Result<Plane> {
    let (lo, hi) = match strategy {
        DepthNormStrategy::PerImageMinMax => {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &d in depth.data() {
                if d > 0.0 {
                    lo = lo.min(d);
                    hi = hi.max(d);
                }
            }
            if lo.is_infinite() {
                return Err(Error::DegenerateDepth);
            }
            (lo, hi)
        }
        DepthNormStrategy::FixedRange { lo, hi } => {
            if !lo.is_finite() || lo < 0.0 {
                return Err(Error::InvalidParameter {
                    name: "lo",
                    value: lo,
                    expected: "finite and >= 0",
                });
            }
            if !hi.is_finite() || hi <= lo {
                return Err(Error::InvalidParameter {
                    name: "hi",
                    value: hi,
                    expected: "finite and > lo",
                });
            }
            (lo, hi)
        }
    };
    let span = hi - lo;
    let data = depth
        .data()
        .iter()
        .map(|&d| {
            if d <= 0.0 || span == 0.0 {
                0.0
            } else {
                ((d - lo) / span).clamp(0.0, 1.0)
            }
        })
        .collect();
    Plane::new(depth.width(), depth.height(), data)
}

/// Replicates a [0, 1] plane across `channels` image channels.
/// The channel count is the RGB channel count, fixed at 3.
pub fn replicate_channels(plane: &Plane, channels: u32) -> Result<RgbImage> {
    if channels != RgbImage::CHANNELS {
        return Err(Error::InvalidParameter {
            name: "channels",
            value: channels as f64,
            expected: "exactly 3",
        });
    }
    let mut data = Vec::with_capacity(plane.data().len() * 3);
    for &v in plane.data() {
        data.extend_from_slice(&[v, v, v]);
    }
    RgbImage::new(plane.width(), plane.height(), data)
}
