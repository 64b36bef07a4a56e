//! Command-line front end and file formats for `whitney-core`.

pub mod builtins;
pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::cli::{Cli, Command};
use crate::error::CliResult;
use crate::report::Report;

/// Accepted for compatibility; every run is single-threaded.
pub const THREADS_VAR: &str = "WHITNEY_THREADS";

fn threads_requested() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(Some(t)),
            _ => Err(error::input(format!("{THREADS_VAR} must be a positive integer, got {s:?}"))),
        },
    }
}

/// Builds the report for a parsed command.
pub fn execute(command: &Command, warn: &mut dyn FnMut(String)) -> CliResult<Report> {
    let threads = threads_requested()?;
    let (results, mut provenance) = match command {
        Command::Norm(a) => commands::norm(a),
        Command::Extend(a) => commands::extend(a),
        Command::Jackson(a) => commands::jackson(a),
        Command::PredualNorm(a) => commands::predual(a),
        Command::Finiteness(a) => commands::finiteness(a),
        Command::Markov(a) => commands::markov(a, warn),
        Command::ValidateOmega(a) => commands::validate_omega(a),
    }?;
    provenance.insert("seed".into(), json!(command.common().seed));
    provenance.insert("threads".into(), json!({"requested": threads, "used": 1}));
    let mut config = command.config();
    report::extend(&mut config, serde_json::Map::from_iter([("subcommand".to_string(), json!(command.name()))]));
    Ok(Report {
        subcommand: command.name().to_string(),
        config,
        results,
        provenance: serde_json::Value::Object(provenance),
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

fn emit(report: &Report, out: &str, stdout: &mut dyn Write) -> CliResult<()> {
    let text = report.to_json();
    if out == "-" {
        stdout.write_all(text.as_bytes()).map_err(|e| error::input(format!("cannot write report: {e}")))
    } else {
        std::fs::write(out, text).map_err(|e| error::input(format!("cannot write {out}: {e}")))
    }
}

/// Runs the CLI and returns the exit code: 0 on success, 1 on input
/// errors, 2 on numerical errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut warnings = Vec::new();
    let outcome = execute(&cli.command, &mut |w| warnings.push(w))
        .and_then(|report| emit(&report, &cli.command.common().out, stdout));
    for w in warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}
