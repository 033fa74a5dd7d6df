//! Command-line companion to `regmatch-core`: file formats, wall-clock
//! instrumentation, the grid experiment harness, and the `regmatch` binary's
//! argument handling. All algorithmic work lives in the core crate.

pub mod app;
pub mod experiment;
pub mod io;

use std::fmt;

/// Errors a command can hit: algorithmic/input errors from the core crate or
/// plain I/O failures. Both map to exit code 3.
#[derive(Debug)]
pub enum CliError {
    Core(regmatch_core::Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<regmatch_core::Error> for CliError {
    fn from(e: regmatch_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CliError>;
