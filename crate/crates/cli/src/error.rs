use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown monomer `{0}`")]
    UnknownMonomer(String),

    #[error("{}: {source}", path.display())]
    BadMonomerFile { path: PathBuf, source: polyband::Error },

    #[error("{0}")]
    Usage(String),

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error(transparent)]
    Numeric(#[from] polyband::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownMonomer(_) | CliError::BadMonomerFile { .. } | CliError::Usage(_) | CliError::Csv(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
