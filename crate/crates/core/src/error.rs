//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("{path}:{line}: {msg}")]
    CorpusFormat {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("dictionary line {line}: {msg}")]
    Dictionary { line: usize, msg: String },

    #[error("parse tree error at byte {pos}: {msg}")]
    Tree { pos: usize, msg: String },

    #[error("vocabulary is empty after pruning (min_df too aggressive or no input terms)")]
    EmptyVocabulary,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("training data contains a single class only")]
    SingleClass,

    #[error("class {label} has {count} members, fewer than k = {k}")]
    ClassTooSmall {
        label: String,
        count: usize,
        k: usize,
    },

    #[error("lexicon is missing categories: {}", .0.join(", "))]
    MissingCategories(Vec<String>),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}
