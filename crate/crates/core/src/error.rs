use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("format error: {0}")]
    Format(String),

    #[error("truncated payload: expected {expected} values, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("validation error: non-finite value {value} at pixel {index}")]
    NonFinite { index: usize, value: f32 },

    #[error("invalid dimensions {width}x{height}: {reason}")]
    Dimensions {
        width: usize,
        height: usize,
        reason: &'static str,
    },

    #[error("shape mismatch: {left_w}x{left_h} vs {right_w}x{right_h}")]
    Shape {
        left_w: usize,
        left_h: usize,
        right_w: usize,
        right_h: usize,
    },

    #[error("unsupported shape {width}x{height}: {reason}")]
    UnsupportedShape {
        width: usize,
        height: usize,
        reason: &'static str,
    },

    #[error("out of bounds: {0}")]
    Bounds(String),

    #[error("class index {0} is not covered by the legend")]
    LegendCoverage(u16),

    #[error("invalid legend: {0}")]
    Legend(String),

    #[error("confusion matrices cover different pixel counts: {left} vs {right}")]
    SizeMismatch { left: u64, right: u64 },

    #[error("nothing to compare: every pixel is ignored")]
    EmptyComparison,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn shape(left: (usize, usize), right: (usize, usize)) -> Self {
        Error::Shape {
            left_w: left.0,
            left_h: left.1,
            right_w: right.0,
            right_h: right.1,
        }
    }
}
