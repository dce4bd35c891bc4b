use std::path::{Path, PathBuf};

use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{message}")]
    Validation { field: String, message: String },
    #[error(transparent)]
    Core(#[from] braggscat_core::Error),
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation { field: field.into(), message: message.into() }
    }

    pub fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError::Io { path: path.to_path_buf(), message: err.to_string() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } => 2,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "PARSE_ERROR",
            CliError::Validation { .. } => "VALIDATION_ERROR",
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "IO_ERROR",
        }
    }

    /// Machine-readable record for stderr.
    pub fn record(&self) -> Value {
        let mut record = json!({ "code": self.code(), "exit": self.exit_code(), "message": self.to_string() });
        match self {
            CliError::Parse { path, line, column, .. } => {
                record["path"] = json!(path);
                record["line"] = json!(line);
                record["column"] = json!(column);
            }
            CliError::Validation { field, .. } => record["field"] = json!(field),
            CliError::Core(braggscat_core::Error::InvalidConfig { field, .. }) => record["field"] = json!(field),
            CliError::Core(braggscat_core::Error::InvalidArgument { name, .. }) => record["field"] = json!(name),
            CliError::Io { path, .. } => record["path"] = json!(path),
            CliError::Core(_) => {}
        }
        json!({ "error": record })
    }
}
