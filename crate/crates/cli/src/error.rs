use std::path::PathBuf;

/// Failures surfaced by the command-line front end, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { message: String, line: usize, column: usize },

    #[error("schema error at line {line}, column {column}: {message}")]
    Schema { message: String, line: usize, column: usize },

    #[error("validation failed for `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown preset `{0}` (see `presets list`)")]
    UnknownPreset(String),
}

impl CliError {
    /// 1 validation, 2 internal inconsistency, 3 anything that stops the
    /// input from being read.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation { .. } => 1,
            CliError::Internal(_) => 2,
            CliError::Parse { .. } | CliError::Schema { .. } | CliError::Io { .. } | CliError::UnknownPreset(_) => 3,
        }
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Validation {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let (line, column) = (e.line(), e.column());
        let message = e.to_string();
        // serde_json appends " at line L column C"; the variant carries it already
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        match e.classify() {
            Category::Data => CliError::Schema { message, line, column },
            Category::Io | Category::Syntax | Category::Eof => CliError::Parse { message, line, column },
        }
    }
}
