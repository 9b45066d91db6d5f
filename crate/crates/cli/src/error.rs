use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("numerical failure: {0}")]
    Numerical(lumen_core::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), source }
    }

    /// 2 for bad input, 3 for numerical or I/O failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Numerical(_) | Self::Io { .. } => 3,
        }
    }
}

impl From<lumen_core::Error> for CliError {
    fn from(e: lumen_core::Error) -> Self {
        use lumen_core::Error as E;
        match e {
            E::Accuracy { .. } | E::IntegratorFailure(_) | E::FitFailure(_) | E::UndefinedRatio => Self::Numerical(e),
            E::Domain(_) | E::Singularity | E::Unsupported(_) | E::Config(_) => Self::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
