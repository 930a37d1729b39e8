//! Command-line front end. [`run`] is the whole program minus process I/O,
//! so tests and the batch runner dispatch in-process.

mod args;
pub mod batch;
mod commands;
pub mod expr;
pub mod report;

use std::time::Instant;

use clap::Parser;
use queerify_core::Error;
use serde_json::json;

use args::{Cli, Command};
use commands::{execute, field_flag, Ctx};
use report::{Report, SCHEMA};

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub(crate) fn usage(message: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let field = match field_flag(&cli.field) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    if let Command::Batch { manifest, jobs } = &cli.command {
        return batch::run_manifest(manifest, *jobs);
    }
    let ctx = Ctx {
        budget: cli.budget,
        seed: cli.seed,
        field,
    };
    let start = Instant::now();
    let (output, budget_error) = match execute(&cli.command, &ctx) {
        Ok(o) => (o, None),
        Err(e @ Error::BudgetExceeded { .. }) => {
            let name = command_name(&cli.command);
            let mut o = commands::Output::new(name, Vec::new(), json!({ "error": e.to_string() }));
            o.verdict = Some("budget-exceeded".into());
            (o, Some(e))
        }
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    let code = if budget_error.is_some() || output.inconclusive {
        3
    } else {
        match &cli.expect {
            Some(want) => i32::from(output.verdict.as_deref() != Some(want.as_str())),
            None => i32::from(!output.holds),
        }
    };
    let report = Report {
        schema: SCHEMA,
        command: output.command.to_string(),
        inputs: output.inputs,
        result: output.result,
        verdict: output.verdict,
        seed: Some(ctx.seed),
        coverage: output.coverage,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    let mut stderr = String::new();
    if let Some(e) = budget_error {
        stderr = format!("error: {e}\n");
    } else if code == 1 {
        if let (Some(want), Some(got)) = (&cli.expect, &report.verdict) {
            stderr = format!("expected {want}, got {got}\n");
        }
    }
    Outcome {
        code,
        stdout: format!("{}\n", report.to_line()),
        stderr,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::ConditionCheck { .. } => "condition-check",
        Command::DunklSurvey { .. } => "dunkl-survey",
        _ => "command",
    }
}
