//! Library side of the `relsync` binary: argument types, report format,
//! the randomized group audit and one function per subcommand.
//!
//! Every command returns a [`Report`]; the binary only renders it and maps
//! its verdict to the process exit status.

pub mod audit;
pub mod commands;
pub mod config;
pub mod report;

pub use report::{Assertion, Report, Verdict};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Kinematics(#[from] relsync_core::KinematicsError),

    #[error("{0}")]
    Usage(String),

    #[error("writing {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Exit status when every assertion passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status when the run completed but an assertion failed.
pub const EXIT_ASSERTION_FAILED: i32 = 1;
/// Exit status for invalid input or I/O failure.
pub const EXIT_ERROR: i32 = 2;
