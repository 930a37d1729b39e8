//! Manifest runner. One command per line, ending in `expect: VERDICT`;
//! `#` starts a comment. Arguments are split with shell quoting rules.

use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde_json::{json, Value};

use crate::report::{strip_timing, InputDigest, Report, SCHEMA};
use crate::Outcome;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub args: Vec<String>,
    pub expect: String,
}

pub fn parse_manifest(text: &str) -> Result<Vec<Entry>, String> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (cmd, expect) = body
            .rsplit_once("expect:")
            .ok_or_else(|| format!("line {line}: missing `expect:` suffix"))?;
        let expect = expect.trim();
        if expect.is_empty() || expect.contains(char::is_whitespace) {
            return Err(format!("line {line}: `expect:` needs exactly one verdict"));
        }
        let args = shlex::split(cmd).ok_or_else(|| format!("line {line}: unbalanced quotes"))?;
        match args.first().map(String::as_str) {
            None => return Err(format!("line {line}: no command before `expect:`")),
            Some("batch") => return Err(format!("line {line}: manifests cannot nest batch")),
            Some(_) => {}
        }
        if args
            .iter()
            .any(|a| a == "--expect" || a.starts_with("--expect="))
        {
            return Err(format!(
                "line {line}: use the `expect:` suffix instead of --expect"
            ));
        }
        entries.push(Entry {
            line,
            args,
            expect: expect.to_string(),
        });
    }
    Ok(entries)
}

fn run_entry(e: &Entry) -> (Outcome, bool) {
    let argv = std::iter::once("queerify".to_string())
        .chain(e.args.iter().cloned())
        .chain(["--expect".to_string(), e.expect.clone()]);
    let out = crate::run(argv);
    let pass = out.code == 0;
    (out, pass)
}

pub fn run_manifest(path: &Path, jobs: usize) -> Outcome {
    let start = Instant::now();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("error: {}: {e}\n", path.display())),
    };
    let entries = match parse_manifest(&text) {
        Ok(e) => e,
        Err(m) => return Outcome::usage(format!("error: {}: {m}\n", path.display())),
    };

    let slots: Vec<Mutex<Option<(Outcome, bool)>>> =
        entries.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, entries.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(e) = entries.get(i) else { break };
                *slots[i].lock().expect("slot lock") = Some(run_entry(e));
            });
        }
    });

    let mut results = Vec::with_capacity(entries.len());
    let mut failed = Vec::new();
    let mut stderr = String::new();
    for (e, slot) in entries.iter().zip(slots) {
        let (out, pass) = slot
            .into_inner()
            .expect("slot lock")
            .expect("every entry ran");
        let mut inner: Value = serde_json::from_str(out.stdout.trim()).unwrap_or(Value::Null);
        strip_timing(&mut inner);
        if !pass {
            failed.push(e.line);
            stderr.push_str(&format!(
                "line {}: FAIL (exit {}) {}",
                e.line, out.code, out.stderr
            ));
            if !stderr.ends_with('\n') {
                stderr.push('\n');
            }
        }
        results.push(json!({
            "line": e.line,
            "args": e.args,
            "expect": e.expect,
            "verdict": inner.get("verdict").cloned().unwrap_or(Value::Null),
            "exit": out.code,
            "pass": pass,
            "report": inner,
        }));
    }
    let all_pass = failed.is_empty();
    let report = Report {
        schema: SCHEMA,
        command: "batch".into(),
        inputs: vec![InputDigest::new(
            "file",
            path.display().to_string(),
            text.as_bytes(),
        )],
        result: json!({
            "entries": results,
            "total": entries.len(),
            "passed": entries.len() - failed.len(),
            "failed_lines": failed,
        }),
        verdict: Some(if all_pass { "pass" } else { "fail" }.into()),
        seed: None,
        coverage: None,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    Outcome {
        code: i32::from(!all_pass),
        stdout: format!("{}\n", report.to_line()),
        stderr,
    }
}
