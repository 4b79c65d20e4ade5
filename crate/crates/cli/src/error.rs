use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] msdep::Error),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {what}: {source}")]
    Write { what: String, source: io::Error },

    #[error("cannot encode output: {0}")]
    Encode(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for anything the caller can fix by changing the invocation or the
    /// input data, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) | Self::Usage(_) | Self::Read { .. } => 2,
            Self::Write { .. } | Self::Encode(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
