use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] person_index::Error),

    #[error("{}: {message}", path.display())]
    Data { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub(crate) fn data(path: &Path, message: impl Into<String>) -> Self {
        CliError::Data {
            path: path.to_path_buf(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 1 usage or configuration, 2 invalid data, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        use person_index::Error as E;
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(E::Config(_) | E::Usage(_) | E::Precondition(_)) => 1,
            CliError::Core(_) => 2,
            CliError::Data { .. } => 2,
            CliError::Io { .. } => 3,
        }
    }
}
