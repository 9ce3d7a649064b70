use std::path::PathBuf;

use crate::region::Region;

/// Errors produced by the toolkit.
///
/// I/O failures carry the offending path; every contract violation gets its
/// own variant so callers can tell a bad region from a bad file.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("image dimensions must be at least 1x1, got {width}x{height}")]
    EmptyDimensions { width: u32, height: u32 },

    #[error("buffer length {got} does not match {width}x{height}x{channels}")]
    BufferSize {
        width: u32,
        height: u32,
        channels: u32,
        got: usize,
    },

    #[error("pixel value {value} at index {index} is outside [0,1] or not finite")]
    PixelRange { index: usize, value: f64 },

    #[error("depth value {value} at index {index} is negative or not finite")]
    DepthRange { index: usize, value: f64 },

    #[error("region {region:?} is out of bounds for a {width}x{height} image")]
    RegionOutOfBounds {
        region: Region,
        width: u32,
        height: u32,
    },

    #[error("shape mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    ShapeMismatch {
        left_width: u32,
        left_height: u32,
        right_width: u32,
        right_height: u32,
    },

    #[error("parameter {name} = {value} must be {expected}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("depth map has no valid pixel to normalize against")]
    DegenerateDepth,

    #[error("evaluation mask selects no pixels")]
    EmptyEvaluation,

    #[error("non-positive {plane} depth {value} at valid pixel ({x}, {y})")]
    NonPositiveDepth {
        plane: &'static str,
        x: u32,
        y: u32,
        value: f64,
    },

    #[error("cosine is undefined for a zero-norm vector")]
    ZeroNormVector,

    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("series is empty")]
    EmptySeries,

    #[error("cutmix requires a partner sample")]
    MissingPartner,

    #[error("report list is empty")]
    EmptyReportList,

    #[error("report name {name:?} must not contain commas or line breaks")]
    UnwritableReportName { name: String },

    #[error("file not found: {path}")]
    MissingFile {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("i/o error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to decode image {path}")]
    ImageDecode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("failed to encode image {path}")]
    ImageEncode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("{path}: expected {expected}, found {found}")]
    PixelFormat {
        path: PathBuf,
        expected: &'static str,
        found: String,
    },

    #[error("rgb is {rgb_width}x{rgb_height} but depth is {depth_width}x{depth_height}")]
    PairDimensionMismatch {
        rgb_width: u32,
        rgb_height: u32,
        depth_width: u32,
        depth_height: u32,
    },

    #[error("manifest {path}, line {line}: {message}")]
    Manifest {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate manifest id {id:?}")]
    DuplicateId { id: String },
}

pub type Result<T> = std::result::Result<T, Error>;
