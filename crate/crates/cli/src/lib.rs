//! The `cuntzkit` command line, as a library: [`run`] takes the argument
//! vector and returns the exit code and both output streams, so tests can
//! drive it without spawning processes.

mod args;
mod commands;
pub mod input;
pub mod model;

use clap::Parser;

pub use args::Cli;

/// Exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const NEGATIVE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn json(code: i32, v: &serde_json::Value) -> Outcome {
        let mut stdout = serde_json::to_string_pretty(v).expect("values serialize");
        stdout.push('\n');
        Outcome { code, stdout, stderr: String::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

/// Settings normally read from the environment.
#[derive(Clone, Debug, Default)]
pub struct Env {
    /// `CUNTZKIT_MAX_DEPTH`: the default search depth.
    pub max_depth: Option<String>,
}

impl Env {
    pub fn from_process() -> Env {
        Env { max_depth: std::env::var("CUNTZKIT_MAX_DEPTH").ok() }
    }
}

/// Runs one command line (including the program name) with the process
/// environment.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &Env::from_process())
}

pub fn run_with<I, S>(argv: I, env: &Env) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::execute(cli.command, env) {
        Ok(out) => out,
        Err(e) => Outcome { code: exit::USAGE, stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}
