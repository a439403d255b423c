//! Command-line front end for the `fclosure` toolkit: single claims, batch
//! sweeps and JSON certificates.

pub mod certificate;
pub mod commands;
pub mod config;

use thiserror::Error;

pub use commands::{execute, run, Job, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fclosure_core::Error),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("malformed input: {0}")]
    Format(String),
}
