//! Command-line front end for the `gwcache` tool.

pub mod args;
pub mod commands;
pub mod error;
pub mod source;
pub mod svg;
pub mod sweep;

use std::path::PathBuf;

pub use args::Cli;
use args::Command;
pub use error::{CliError, CliResult};

/// Primary output of a command and where it should go.
pub struct Output {
    pub text: String,
    pub out: Option<PathBuf>,
}

fn json_text(v: serde_json::Value) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Runs a parsed command. Side files (`--svg`, `--transcripts`) are written
/// here; the primary output is returned for the caller to place.
pub fn execute(cli: &Cli) -> CliResult<Output> {
    let (text, out) = match &cli.command {
        Command::Sweep(a) => (commands::cmd_sweep(a)?, a.out.clone()),
        Command::Bounds(a) => (json_text(commands::cmd_bounds(a)?)?, a.out.clone()),
        Command::Achievable(a) => (json_text(commands::cmd_achievable(a)?)?, a.out.clone()),
        Command::Optimize(a) => (json_text(commands::cmd_optimize(a)?)?, a.out.clone()),
        Command::Simulate(a) => (json_text(commands::cmd_simulate(a)?)?, a.out.clone()),
    };
    Ok(Output { text, out })
}

/// Parses `argv`, runs the command and places its output. Returns the
/// process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cli).and_then(|o| match o.out {
        Some(path) => std::fs::write(&path, o.text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{}", o.text);
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
