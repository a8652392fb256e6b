use std::path::PathBuf;

use thiserror::Error;

/// Failures while reading inputs or writing artifacts.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{origin}: line {line}: {reason}")]
    Row {
        origin: String,
        line: usize,
        reason: String,
    },

    #[error("{origin}: expected header `bin_lower,bin_upper,returns,total_agi`, found `{found}`")]
    Header { origin: String, found: String },

    #[error("{origin}: {source}")]
    Csv {
        origin: String,
        #[source]
        source: csv::Error,
    },

    #[error("{origin}: {source}")]
    Json {
        origin: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{origin}: {source}")]
    Core {
        origin: String,
        #[source]
        source: mixfit_core::Error,
    },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn core(origin: impl Into<String>, source: mixfit_core::Error) -> Self {
        let origin = origin.into();
        match source {
            mixfit_core::Error::Schema { row, reason } => Error::Row {
                origin,
                line: row,
                reason,
            },
            source => Error::Core { origin, source },
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
