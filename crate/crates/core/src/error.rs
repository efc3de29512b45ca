//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system label `{0}`")]
    UnsupportedLabel(String),

    #[error("unknown form `{0}` (not a builtin, not a shipped data file, not a readable path)")]
    UnknownForm(String),

    #[error("data file {path}: {msg}")]
    FormParse { path: String, msg: String },

    #[error("{op}: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("{check} failed: {detail}")]
    CheckFailed { check: &'static str, detail: String },

    #[error("structure constants unavailable: {0}")]
    NotSplit(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub fn check(check: &'static str, detail: impl Into<String>) -> Self {
        Error::CheckFailed { check, detail: detail.into() }
    }
}
