//! Command-line front end for `admissible-core`: evaluation, verification
//! suites, step-function data, convergence tables and timing.

pub mod bench;
pub mod cli;
pub mod converge;
pub mod dyadic;
pub mod output;
pub mod run;
pub mod verify;
pub mod walkdata;

use std::process::ExitCode;

/// Failure of a command, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// A check in a verification suite failed (exit 1).
    #[error("verification failed: {0}")]
    Verification(String),
    /// Bad arguments or a domain error from the library (exit 2).
    #[error("{0}")]
    Usage(String),
    /// Domain error from the library (exit 2).
    #[error(transparent)]
    Domain(#[from] admissible_core::Error),
    /// Could not write output (exit 2).
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Verification(_) => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

/// Result alias for commands.
pub type Result<T> = std::result::Result<T, CliError>;
