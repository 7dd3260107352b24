//! Command-line front end: arrangement files, analysis reports, enumeration
//! tables and the reproduction suite.
//!
//! Every command returns a [`Report`] (machine-readable, serialized with
//! `--json`) together with its human-readable rendering, so the binary only
//! chooses which one to print.

pub mod commands;
pub mod file;
pub mod json;

use serde::Serialize;

pub use commands::{analyze, enumerate, example, reproduce, window, AnalyzeArgs, EnumerateArgs};
pub use file::{ArrangementFile, FileError};

pub const TOOL: &str = "cubic-lines";

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Success = 0,
    /// Unreadable or invalid input (also used by the argument parser).
    Parse = 2,
    UnsupportedSingularity = 3,
    ReproductionFailure = 4,
    /// The input is well formed but the analysis does not apply to it
    /// (shared components, singular cubic components, degree too small, ...).
    NotApplicable = 5,
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn new(exit: Exit, message: impl Into<String>) -> Self {
        CliError { exit, message: message.into() }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::new(Exit::Parse, e.to_string())
    }
}

impl From<cubic_lines::Error> for CliError {
    fn from(e: cubic_lines::Error) -> Self {
        use cubic_lines::Error as E;
        let exit = match e {
            E::UnsupportedSingularity { .. } => Exit::UnsupportedSingularity,
            E::PolyParse(_) | E::NotHomogeneous { .. } | E::InvalidComponent(_) | E::UnknownExample(_) => Exit::Parse,
            _ => Exit::NotApplicable,
        };
        CliError::new(exit, e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    /// Numeric tolerance, for commands that use floating point.
    pub tol: Option<f64>,
}

impl Provenance {
    pub fn new(command: impl Into<String>, seed: u64, tol: Option<f64>) -> Self {
        Provenance { tool: TOOL, version: env!("CARGO_PKG_VERSION"), command: command.into(), seed, tol }
    }
}

/// Result of a command plus provenance. Serialization is deterministic:
/// fields are emitted in declaration order and all maps are lists.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<T> {
    pub provenance: Provenance,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn to_json(&self) -> String {
        crate::json::to_string(self)
    }
}

/// A report with its human-readable rendering and the exit status it calls
/// for.
#[derive(Debug, Clone)]
pub struct Output<T> {
    pub report: Report<T>,
    pub text: String,
    pub exit: Exit,
}
