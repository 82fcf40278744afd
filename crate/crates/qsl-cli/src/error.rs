//! CLI failure taxonomy and its mapping onto process exit codes.

use std::io;

use thiserror::Error;

/// Everything that can stop a CLI run.
///
/// The three classes mirror the exit-code contract: arguments that parse
/// but describe an impossible request (2), numerical domain boundaries
/// reported by the computation pipeline (3), and output I/O failures (4).
#[derive(Debug, Error)]
pub enum CliError {
    /// The request is invalid before any computation starts.
    #[error("invalid arguments: {0}")]
    Usage(String),
    /// The pipeline hit a numerical domain boundary (exceptional point,
    /// degenerate spectrum, out-of-domain functional, …).
    #[error("numerical domain error: {0}")]
    Numeric(#[from] qsl_core::Error),
    /// The report could not be written.
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// Process exit code for this failure class: 2 usage, 3 numerical, 4 i/o.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

/// Result alias for CLI plumbing.
pub type CliResult<T> = Result<T, CliError>;
