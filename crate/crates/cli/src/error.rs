use std::path::{Path, PathBuf};

use nlw_core::NlwError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown key `{key}` at line {line}, column {column}")]
    UnknownKey {
        key: String,
        line: usize,
        column: usize,
    },

    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    #[error("sweep axis `{0}` does not name a scalar in the scenario schema")]
    Axis(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] NlwError),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Machine-readable error for manifests.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl CliError {
    pub(crate) fn field(field: &str, e: NlwError) -> Self {
        CliError::Validation {
            field: field.into(),
            message: match e {
                NlwError::Config(m) => m,
                other => other.to_string(),
            },
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn parse(text: &str, e: &toml::de::Error) -> Self {
        let (line, column) = e.span().map(|s| line_col(text, s.start)).unwrap_or((0, 0));
        CliError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::UnknownKey { .. } => "unknown_key",
            CliError::Validation { .. } => "validation",
            CliError::Axis(_) => "schema",
            CliError::Io { .. } => "io",
            CliError::Checkpoint { .. } => "checkpoint",
            CliError::Core(e) => e.kind(),
            CliError::Csv(_) => "csv",
            CliError::Json(_) => "json",
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord {
            kind: self.kind().into(),
            message: self.to_string(),
            detail: match self {
                CliError::Core(e) => serde_json::to_value(e.payload()).ok(),
                _ => None,
            },
        }
    }
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}
