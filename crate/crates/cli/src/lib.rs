//! Command-line companion to `aos-core`: policy-file persistence, CSV
//! emission, and the implementations behind the five `aos` subcommands.
//!
//! Everything that writes data keeps stdout deterministic for fixed
//! flags and seed; timings and progress go to stderr.

pub mod commands;
pub mod policy_file;

/// Failure classes mapped onto the exit-status convention: usage and
/// parse problems exit 2, runtime failures (non-convergence, failed
/// verification, unusable or unwritable artifacts) exit 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }

    pub fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}
