//! Command-line front end: `belltool value | graph | diew`.
//!
//! Every run prints one JSON report. Exit codes: 0 success, 2 usage error,
//! 3 invalid input, 4 resource or budget limit, 1 internal failure.

mod args;
mod commands;
mod source;

use args::{Cli, Command};
use belltool_core::values::{render_report, report_schema_version, to_report_json};
use belltool_core::Error;
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};
use std::ffi::OsString;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Unreadable input files.
    Input(String),
    Output(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INVALID,
            CliError::Output(_) => EXIT_INTERNAL,
            CliError::Core(Error::Resource(_)) => EXIT_RESOURCE,
            CliError::Core(Error::Internal(_) | Error::Convergence(_)) => EXIT_INTERNAL,
            CliError::Core(_) => EXIT_INVALID,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) | CliError::Output(m) => f.write_str(m),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

/// Drops null members so optional flags that were not given vanish from
/// the config echo.
fn compact(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(
            m.into_iter()
                .filter(|(_, x)| !x.is_null())
                .map(|(k, x)| (k, compact(x)))
                .collect(),
        ),
        other => other,
    }
}

fn execute(cli: Cli) -> Result<(String, Option<std::path::PathBuf>), CliError> {
    let (name, run) = match &cli.command {
        Command::Value(a) => ("value", &a.run),
        Command::Graph(a) => ("graph", &a.run),
        Command::Diew(a) => ("diew", &a.run),
    };
    if !(run.tol.is_finite() && run.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", run.tol)));
    }
    if run.restarts == 0 {
        return Err(CliError::Usage("--restarts must be at least 1".into()));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = run.workers {
        if w == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Core(Error::Resource(format!("starting workers: {e}"))))?;
    let out = pool.install(|| match &cli.command {
        Command::Value(a) => commands::value(a),
        Command::Graph(a) => commands::graph(a),
        Command::Diew(a) => commands::diew(a),
    })?;
    let report = json!({
        "tool": "belltool",
        "version": env!("CARGO_PKG_VERSION"),
        "schema_version": report_schema_version(),
        "command": name,
        "seed": run.seed,
        "config": compact(out.config),
        "game": source::describe(&out.game),
        "results": out.results,
    });
    let text = render_report(&to_report_json(&report)?)?;
    Ok((text, run.out.clone()))
}

/// Runs the tool on `argv` (including the program name), writing the
/// report to stdout or `--out` and diagnostics to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = execute(cli).and_then(|(text, out)| match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CliError::Output(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("belltool: {e}");
            e.exit_code()
        }
    }
}
