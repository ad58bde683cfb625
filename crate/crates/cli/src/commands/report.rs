//! `report`: one markdown/CSV pair over the summaries of every suite.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Deserialize;

use curved_duality::io::fmt17;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{row, RunDir, SUMMARY_FILE};

pub const SUITES: [&str; 5] = ["simulate", "verify-algebra", "bohlin", "ks", "spectrum"];

/// A summary line; non-finite values are stored as `null`.
#[derive(Debug, Deserialize)]
struct Line {
    name: String,
    value: Option<f64>,
    tolerance: Option<f64>,
    pass: bool,
}

struct Row {
    suite: &'static str,
    line: Line,
}

fn read_suite(root: &Path, suite: &'static str) -> Result<Vec<Row>, CliError> {
    let path = root.join(suite).join(SUMMARY_FILE);
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map(|line| Row { suite, line })
                .map_err(|e| CliError::Input { path: path.clone(), reason: format!("line {}: {e}", i + 1) })
        })
        .collect()
}

fn number(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

fn short(x: Option<f64>) -> String {
    x.map_or("n/a".to_string(), |v| format!("{v:.3e}"))
}

pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let missing: Vec<_> = SUITES.iter().map(|s| cfg.out.join(s).join(SUMMARY_FILE)).filter(|p| !p.is_file()).collect();
    if !missing.is_empty() {
        return Err(CliError::MissingInputs(missing));
    }
    let mut rows = Vec::new();
    for suite in SUITES {
        rows.extend(read_suite(&cfg.out, suite)?);
    }
    let passed = rows.iter().filter(|r| r.line.pass).count();
    let dir = RunDir::create(&cfg.out, "report")?;
    dir.write("report.csv", |w| {
        writeln!(w, "suite,name,value,tolerance,pass,flag")?;
        for r in &rows {
            let flag = if r.line.pass { "" } else { "BREACH" };
            let fields = [
                r.suite.to_string(),
                r.line.name.clone(),
                number(r.line.value),
                number(r.line.tolerance),
                r.line.pass.to_string(),
                flag.to_string(),
            ];
            writeln!(w, "{}", row(fields))?;
        }
        Ok(())
    })?;
    dir.write("report.md", |w| {
        writeln!(w, "# Verification report\n")?;
        writeln!(w, "{passed} of {} checks passed.\n", rows.len())?;
        writeln!(w, "| suite | check | value | tolerance | result |")?;
        writeln!(w, "|---|---|---|---|---|")?;
        for r in &rows {
            let result = if r.line.pass { "pass" } else { "**BREACH**" };
            writeln!(
                w,
                "| {} | {} | {} | {} | {result} |",
                r.suite,
                r.line.name,
                short(r.line.value),
                short(r.line.tolerance)
            )?;
        }
        Ok(())
    })?;
    for r in rows.iter().filter(|r| !r.line.pass) {
        println!("BREACH {}/{}: {} (tol {})", r.suite, r.line.name, short(r.line.value), short(r.line.tolerance));
    }
    println!("{passed} of {} checks passed; wrote {}", rows.len(), dir.path.display());
    Ok(passed == rows.len())
}
