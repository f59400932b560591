//! The `sfloer` command line: configuration, the subcommands as library
//! functions, output rendering, and the `verify` pipeline.

mod coeff;
pub mod commands;
mod config;
pub mod verify;

pub use coeff::{Coeff, SUPPORTED_PRIMES};
pub use config::{parse_groups, parse_range, Format, Overrides, RunConfig, CONFIG_ENV, DEFAULT_GROUPS};
pub use verify::{run_verify, Check, Status, VerifyReport};

use thiserror::Error;

/// Version of the JSON layout emitted by every subcommand.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Floer(#[from] floer::FloerError),
    #[error(transparent)]
    Donaldson(#[from] donaldson::DonaldsonError),
    #[error(transparent)]
    McKay(#[from] mckay::McKayError),
    #[error(transparent)]
    Cs(#[from] cs::CsError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage errors, 1 for everything that failed while computing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// The result of one subcommand in every format it supports.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub dot: Option<String>,
    /// False when a check inside the command failed (exit code 1).
    pub pass: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("JSON values serialize") + "\n"),
            Format::Dot => self.dot.clone().ok_or_else(|| CliError::Usage("this command has no DOT output".into())),
        }
    }
}
