//! Command-line front end for `nilp2-core`: builds groups, runs checkers and
//! bundles the acceptance criteria. Reports are JSON (see [`report`]).
//!
//! Exit codes: 0 when every verdict is an expected outcome, 1 when some
//! verdict refutes a proven statement or identity (or a suite criterion
//! fails), 2 on usage, input and parse errors.

pub mod args;
pub mod checks;
pub mod construct;
pub mod input;
pub mod report;
pub mod suite;

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::input::{CliError, CliResult};
use crate::report::{echo_args, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command produced, before anything is written.
pub struct Outcome {
    /// Payload for `--out` or stdout.
    pub payload: String,
    /// Human-readable lines for stderr.
    pub summary: String,
    pub exit_code: i32,
}

/// Runs a parsed command. `raw` is the full argument list after the program name.
pub fn execute(cli: &Cli, raw: &[String]) -> CliResult<Outcome> {
    let start = Instant::now();
    let elapsed = || start.elapsed().as_millis() as u64;
    match &cli.command {
        Command::Construct { kind, params } => {
            let c = construct::construct(*kind, params, &cli.global)?;
            Ok(Outcome {
                payload: c.text,
                summary: c.summary,
                exit_code: if c.passed { EXIT_OK } else { EXIT_REFUTED },
            })
        }
        Command::Check(args) => {
            let out = checks::run_check(args, &cli.global)?;
            let exit_code = if out.verdicts.iter().any(|v| v.refutation) { EXIT_REFUTED } else { EXIT_OK };
            let summary = out
                .verdicts
                .iter()
                .map(|v| {
                    format!(
                        "{} [{}]: {}{} ({} cases)",
                        v.name,
                        v.subject,
                        if v.holds { "holds" } else { "fails" },
                        if v.refutation { ", REFUTATION" } else { "" },
                        v.cases_checked
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let report = RunReport::new(echo_args(raw), out.inputs, out.seed, out.verdicts, exit_code, elapsed());
            Ok(Outcome { payload: report.to_json(), summary, exit_code })
        }
        Command::Suite { name } => {
            let seed = cli.global.seed.unwrap_or(checks::DEFAULT_SEED);
            let verdicts = suite::run_suite(*name, seed)?;
            let all = verdicts.iter().all(|v| v.holds);
            let exit_code = if all { EXIT_OK } else { EXIT_REFUTED };
            let summary = suite::summary_table(&verdicts);
            let report = RunReport::new(echo_args(raw), vec![], Some(seed), verdicts, exit_code, elapsed());
            Ok(Outcome { payload: report.to_json(), summary, exit_code })
        }
    }
}

fn write_out(path: Option<&Path>, payload: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, payload).map_err(|source| CliError::Io { path: p.into(), source }),
        None => std::io::stdout()
            .write_all(payload.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

/// Full program behaviour; returns the process exit code.
pub fn main_with(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let raw = &argv[1.min(argv.len())..];
    let run = || execute(&cli, raw);
    let result = match cli.global.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(CliError::Usage(format!("thread pool: {e}"))),
        },
        None => run(),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = write_out(cli.global.out.as_deref(), &outcome.payload) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    if !outcome.summary.is_empty() {
        eprintln!("{}", outcome.summary.trim_end());
    }
    outcome.exit_code
}
