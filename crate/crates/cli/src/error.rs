use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error in `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("missing inputs: {}", .0.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "))]
    MissingInputs(Vec<PathBuf>),

    #[error("malformed input {path}: {reason}")]
    Input { path: PathBuf, reason: String },

    #[error("{0}")]
    Core(curved_duality::Error),

    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Config { key: key.into(), reason: reason.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 2 for configuration and missing-input errors, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::MissingInputs(_) => 2,
            _ => 1,
        }
    }
}

impl From<curved_duality::Error> for CliError {
    fn from(e: curved_duality::Error) -> Self {
        match e {
            curved_duality::Error::InvalidParams { name, reason } => CliError::config(name, reason),
            other => CliError::Core(other),
        }
    }
}
