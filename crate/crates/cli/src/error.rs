use std::path::PathBuf;

use qkt_core::QktError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] QktError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{failed} of {total} sweep points failed")]
    SweepFailed { failed: usize, total: usize, code: i32 },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                QktError::InvalidInput(_) | QktError::SeriesTooShort { .. } => EXIT_USAGE,
                QktError::ResourceCap { .. } => EXIT_RESOURCE,
                QktError::NumericalIntegrity(_)
                | QktError::Degenerate(_)
                | QktError::DimensionMismatch { .. } => EXIT_NUMERICAL,
            },
            CliError::Io { .. } | CliError::Csv { .. } | CliError::Json { .. } => EXIT_FAILURE,
            CliError::SweepFailed { code, .. } => *code,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
