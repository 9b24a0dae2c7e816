use thiserror::Error;

/// Exit code 1: the input could not be used.
pub const EXIT_INPUT: u8 = 1;
/// Exit code 2: the computation finished but a verification failed.
pub const EXIT_VERIFICATION: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    /// `message` already ends with the line and column.
    #[error("invalid JSON: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error(transparent)]
    Core(#[from] torsion_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema { path: path.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        EXIT_INPUT
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed(Vec<String>),
}

impl Status {
    pub fn from_failures(failures: Vec<String>) -> Self {
        if failures.is_empty() {
            Status::Passed
        } else {
            Status::Failed(failures)
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Status::Passed => 0,
            Status::Failed(_) => EXIT_VERIFICATION,
        }
    }
}
