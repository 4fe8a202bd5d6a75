use std::fmt;

/// A parse failure, located by byte offset into the input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at byte {})", self.message, self.offset)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid inversion table: {0}")]
    InvalidInversionTable(String),
    #[error("invalid mesh pattern: {0}")]
    InvalidPattern(String),
    #[error("unknown builtin pattern `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("marking is not in the image of the insertion map: {0}")]
    NotInImage(String),
    #[error("element {index} out of range 1..={size}")]
    OutOfRange { index: usize, size: usize },
    #[error("truncation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
