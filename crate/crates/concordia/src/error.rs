//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index x{index} out of range for rank {rank}")]
    IndexOutOfRange { index: u32, rank: u32 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("expected {expected} generator images, got {got}")]
    ImageCountMismatch { expected: usize, got: usize },
}

/// A resource cap was hit. This signals a desk-scale limit, never a wrong
/// answer; raise `CONCORDIA_MAX_DEPTH` / `CONCORDIA_MAX_TERMS` to retry.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CapError {
    #[error("derived-series depth {requested} exceeds the cap {cap}")]
    Depth { requested: u32, cap: u32 },
    #[error("group-ring term count {requested} exceeds the cap {cap}")]
    Terms { requested: usize, cap: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoxError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Cap(#[from] CapError),
    #[error("level mismatch between ring operands")]
    LevelMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("not a valid Seifert matrix: {0}")]
    InvalidSeifert(String),
    #[error("matrix is not conjugate-transpose symmetric")]
    NotHermitian,
    #[error("evaluation point is not on the unit circle")]
    OffCircle,
    #[error("precision budget exceeded: {0}")]
    Precision(String),
    #[error("degenerate form of size {0} exceeds the minor-enumeration bound")]
    DegenerateTooLarge(usize),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("parse error at byte {at}: {message}")]
    Syntax { at: usize, message: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

impl ParseError {
    pub fn syntax(at: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            at,
            message: message.into(),
        }
    }
}
