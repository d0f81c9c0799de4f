//! Command-line front end for `iepoly`; the binary is a thin wrapper around [`run`].

mod args;
mod commands;
pub mod output;

use std::io;

pub use args::{Cli, Command, Format, GlobalOpts, MethodArg, ScanMode};
pub use commands::{configure_threads, run};

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const VALIDATION: u8 = 2;
    pub const CAPACITY: u8 = 3;
    pub const VERIFICATION: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] iepoly::Error),
    #[error("output: {0}")]
    Io(#[from] io::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_validation() => exit::VALIDATION,
            CliError::Core(e) if e.is_capacity() => exit::CAPACITY,
            CliError::Core(_) => exit::VERIFICATION,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) | CliError::Usage(_) => exit::USAGE,
        }
    }

    /// A closed pipe downstream (`| head`) is not an error.
    pub fn is_broken_pipe(&self) -> bool {
        let kind = match self {
            CliError::Io(e) => Some(e.kind()),
            CliError::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e.kind()),
                _ => None,
            },
            CliError::Json(e) => e.io_error_kind(),
            _ => None,
        };
        kind == Some(io::ErrorKind::BrokenPipe)
    }
}
