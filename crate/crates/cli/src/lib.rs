//! The `ccspt` command line, callable in-process through [`run`].
//!
//! Exit codes: 0 feasible / yes / ok, 1 infeasible / no / verification
//! failed, 2 input error (bad file, bad flags, zero-weight cycle on shortest
//! paths, negative cycle), 3 internal invariant failure.

mod args;
mod commands;
mod output;

use std::ffi::OsString;
use std::panic::{self, AssertUnwindSafe};

use clap::Parser;
use thiserror::Error;

pub use args::Cli;
pub use output::{Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input. `report` carries any diagnostic payload (e.g. a cycle witness).
    #[error("{message}")]
    Input { message: String, report: Option<Report> },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input { message: message.into(), report: None }
    }
}

/// Runs one command. `stdin` is used when the instance path is `-`.
pub fn run<I, T>(args: I, stdin: &str) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code, stdout: String::new(), stderr: text }
            } else {
                Output { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let json = cli.json;
    let result = panic::catch_unwind(AssertUnwindSafe(|| commands::dispatch(cli.command, stdin)));
    let result = result.unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".to_string());
        Err(CliError::Internal(msg))
    });
    match result {
        Ok(report) => {
            let code = match report.status {
                Status::Ok => EXIT_OK,
                Status::Negative => EXIT_INFEASIBLE,
            };
            Output { code, stdout: report.render(json, code), stderr: String::new() }
        }
        Err(CliError::Input { message, report }) => {
            let stdout = report.map(|r| r.render(json, EXIT_INPUT)).unwrap_or_default();
            Output { code: EXIT_INPUT, stdout, stderr: format!("error: {message}\n") }
        }
        Err(CliError::Internal(message)) => {
            Output { code: EXIT_INTERNAL, stdout: String::new(), stderr: format!("internal error: {message}\n") }
        }
    }
}
