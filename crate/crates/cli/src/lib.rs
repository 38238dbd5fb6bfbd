//! Front end for `lienil`: per-group index reports, series dumps,
//! lemma suites and the catalog scan, as text or JSON.
//!
//! Every command builds one serializable report. JSON output wraps it as
//! `{"command", "report", "envelope"}`, where only the envelope (timings,
//! version) varies between identical runs.

pub mod args;
pub mod render;
pub mod report;
pub mod source;

use std::fmt;

use serde::Serialize;

use args::{Cli, Command, Format};
use report::Timings;

/// Exit status 0: every verdict passed.
pub const EXIT_OK: i32 = 0;
/// Exit status 1: a mathematical verdict failed (or an internal invariant broke).
pub const EXIT_VERDICT: i32 = 1;
/// Exit status 2: usage or input error.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VERDICT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub timings_ms: Timings,
}

#[derive(Serialize)]
struct Document<'a, R: Serialize> {
    command: &'a str,
    report: &'a R,
    envelope: Envelope,
}

/// Rendered output and exit status of one invocation.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn finish<R: Serialize>(
    format: Format,
    command: &str,
    report: &R,
    passed: bool,
    timings: Timings,
    text: impl FnOnce(&R) -> String,
) -> Outcome {
    let output = match format {
        Format::Text => text(report),
        Format::Json => {
            let doc = Document {
                command,
                report,
                envelope: Envelope {
                    tool: "lienil",
                    version: env!("CARGO_PKG_VERSION"),
                    timings_ms: timings,
                },
            };
            serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
        }
    };
    Outcome {
        output,
        code: if passed { EXIT_OK } else { EXIT_VERDICT },
    }
}

const SCAN_PRIMES: [u32; 3] = [2, 3, 5];

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut timings = Timings::default();
    let format = cli.format;
    match &cli.command {
        Command::Indices(a) => {
            let g = source::resolve(&a.group.group, a.group.p, a.group.max_order)?;
            let r = report::indices(&g, a.formula_only, &mut timings)?;
            Ok(finish(format, "indices", &r, r.passed(), timings, render::indices))
        }
        Command::Series(a) => {
            let g = source::resolve(&a.group, a.p, a.max_order)?;
            let r = report::series(&g, &mut timings);
            Ok(finish(format, "series", &r, true, timings, render::series))
        }
        Command::Lemmas(a) => {
            let g = source::resolve(&a.group.group, a.group.p, a.group.max_order)?;
            let r = report::lemmas(&g, a.samples, a.seed, &mut timings)?;
            Ok(finish(format, "lemmas", &r, r.passed(), timings, render::lemmas))
        }
        Command::Scan(a) => {
            let primes = match a.p {
                Some(p) => {
                    lienil::FieldSpec::new(p).map_err(|e| CliError::input(e.to_string()))?;
                    vec![p]
                }
                None => SCAN_PRIMES.to_vec(),
            };
            let scans = primes
                .into_iter()
                .map(|p| report::scan(p as u8, a.max_order, a.formula_only, &mut timings))
                .collect::<Result<Vec<_>, _>>()?;
            let bundle = report::ScanBundle { seed: a.seed, scans };
            Ok(finish(format, "scan", &bundle, bundle.passed(), timings, render::scan))
        }
    }
}
