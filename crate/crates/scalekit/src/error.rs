use std::path::PathBuf;

use thiserror::Error;

/// Failures while reading, validating or writing files.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{origin}:{line}:{column}: {message}")]
    Json {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}:{line}: {message}")]
    Csv { origin: String, line: u64, message: String },
    #[error("{origin}: field `{field}`: {message}")]
    Field {
        origin: String,
        field: String,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl FormatError {
    pub(crate) fn field(origin: &str, field: impl Into<String>, message: impl ToString) -> Self {
        Self::Field {
            origin: origin.to_owned(),
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub(crate) fn csv(origin: &str, line: u64, message: impl ToString) -> Self {
        Self::Csv {
            origin: origin.to_owned(),
            line,
            message: message.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, FormatError>;
