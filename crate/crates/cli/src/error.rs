use std::fmt;
use std::io;

/// Harness-level errors, carrying the process exit code the CLI contract
/// assigns to each class.
#[derive(Debug)]
pub enum CliError {
    /// Bad config file or flag combination (exit code 2).
    Config { line: Option<usize>, message: String },
    /// Dataset loading or layout problems (exit code 3).
    Dataset(String),
    /// Numeric failure, e.g. non-convergence under --strict (exit code 4).
    Numeric(String),
    Io(io::Error),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config { line: None, message: message.into() }
    }

    pub fn config_at(line: usize, message: impl Into<String>) -> Self {
        CliError::Config { line: Some(line), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Dataset(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config { line: Some(line), message } => {
                write!(f, "config error at line {line}: {message}")
            }
            CliError::Config { line: None, message } => write!(f, "config error: {message}"),
            CliError::Dataset(message) => write!(f, "dataset error: {message}"),
            CliError::Numeric(message) => write!(f, "numeric failure: {message}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<robust_subspace::Error> for CliError {
    fn from(e: robust_subspace::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}
