use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown word `{0}`")]
    UnknownWord(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty shared vocabulary")]
    EmptyVocab,

    #[error("fewer than 2 usable anchors ({0} found in both vocabularies)")]
    TooFewAnchors(usize),

    #[error("loss diverged (non-finite) at iteration {0}")]
    Diverged(usize),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error("{0}")]
    Insufficient(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
