use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the Chernoff laboratory.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration key failed validation.
    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },

    /// A measure composition would produce more atoms than allowed.
    #[error("atom cap exceeded: {requested} atoms requested, cap is {cap}")]
    AtomCap { requested: u64, cap: usize },

    /// Too few usable records for a fit or coefficient estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error class: 2 validation, 3 resource, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Validation { .. } => 2,
            Error::AtomCap { .. } | Error::InsufficientData(_) => 3,
            Error::Io { .. } | Error::Csv(_) | Error::Json(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
