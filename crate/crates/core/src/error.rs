use std::fmt;

use thiserror::Error;

/// A literal that failed to parse, with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("expected {expected} literal, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("empty {0} is not allowed")]
    Empty(&'static str),

    #[error("timestamps must be strictly increasing")]
    UnorderedTimestamps,

    #[error("invalid interpolation: {0}")]
    InvalidInterpolation(String),

    #[error("sequences of a sequence set must be disjoint and ordered in time")]
    OverlappingSequences,

    #[error("SRID mismatch: {left} vs {right}")]
    SridMismatch { left: SridDisplay, right: SridDisplay },

    #[error("box has no spatial dimension")]
    MissingSpatialDimension,

    #[error("box has no time dimension")]
    MissingTimeDimension,

    #[error("boxes have different dimensionality")]
    DimensionMismatch,

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn srid_mismatch(left: Option<i32>, right: Option<i32>) -> Self {
        Error::SridMismatch {
            left: SridDisplay(left),
            right: SridDisplay(right),
        }
    }
}

/// Renders an optional SRID for error messages (`none` when absent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SridDisplay(pub Option<i32>);

impl fmt::Display for SridDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(srid) => write!(f, "{srid}"),
            None => f.write_str("none"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Fails with [`Error::SridMismatch`] unless both SRIDs are equal (including both absent).
pub(crate) fn check_srid(left: Option<i32>, right: Option<i32>) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::srid_mismatch(left, right))
    }
}
