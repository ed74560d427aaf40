use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid value for `{field}`: {message}")]
    InvalidField { field: &'static str, message: String },
    #[error("{algorithm} needs homogeneous decoding capabilities")]
    RequiresHomogeneous { algorithm: String },
    #[error("{algorithm} produced an invalid plan: {violation}")]
    InvalidPlan {
        algorithm: String,
        violation: noma_core::cluster::PlanViolation,
    },
    #[error(transparent)]
    Core(#[from] noma_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed experiment file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;

pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> SimError {
    SimError::InvalidField {
        field,
        message: message.into(),
    }
}
