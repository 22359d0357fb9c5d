use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced to the command line, each with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("invalid scenario: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] tsunami_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub(crate) fn parse(line: usize, field: &str, message: &str) -> Self {
        CliError::Parse {
            line,
            field: field.to_string(),
            message: message.to_string(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for rejected input, 3 for a numerical failure, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation(_) => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}
