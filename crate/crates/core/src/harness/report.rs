use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::{ChainReport, Counterexample, SweepRow};
use crate::error::Result;

/// `{:.16e}`: 17 significant digits, `.` decimal point, round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per case: `name, instances, skipped, failures, min_slack, max_gap`.
pub fn csv_string(reports: &[ChainReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "instances", "skipped", "failures", "min_slack", "max_gap"])?;
    for r in reports {
        w.write_record([
            r.case.clone(),
            r.instances.to_string(),
            r.skipped.to_string(),
            r.failures.to_string(),
            fmt_f64(r.min_slack),
            fmt_f64(r.max_gap),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("CSV output is UTF-8"))
}

pub fn write_csv(path: &Path, reports: &[ChainReport]) -> Result<()> {
    std::fs::write(path, csv_string(reports)?)?;
    Ok(())
}

/// `parameter, instances, skipped, failures, mean_gap, mean_gain`; the gain is
/// empty for cases without a refinement.
pub fn sweep_csv_string(param: &str, rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([param, "instances", "skipped", "failures", "mean_gap", "mean_gain"])?;
    for r in rows {
        w.write_record([
            fmt_f64(r.value),
            r.instances.to_string(),
            r.skipped.to_string(),
            r.failures.to_string(),
            fmt_f64(r.mean_gap),
            r.mean_gain.map(fmt_f64).unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("CSV output is UTF-8"))
}

/// Aligned table with one line per case and a closing total.
pub fn summary(reports: &[ChainReport]) -> String {
    let width = reports.iter().map(|r| r.case.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6} {:<width$} {:>9} {:>8} {:>8} {:>12} {:>12}",
        "status", "case", "instances", "skipped", "failures", "min_slack", "max_gap"
    );
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status:<6} {:<width$} {:>9} {:>8} {:>8} {:>12.3e} {:>12.3e}",
            r.case, r.instances, r.skipped, r.failures, r.min_slack, r.max_gap
        );
        for c in &r.counterexamples {
            match &c.message {
                Some(m) => {
                    let _ = writeln!(out, "       instance {} (attempt {}): {m}", c.index, c.attempt);
                }
                None => {
                    let _ = writeln!(out, "       instance {} (attempt {}): slacks {:?}", c.index, c.attempt, c.slacks);
                }
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} cases, {} failed", reports.len(), failed);
    out
}

#[derive(Serialize)]
struct ReproCase<'a> {
    case: &'a str,
    seed: u64,
    rel_tol: f64,
    counterexamples: &'a [Counterexample],
}

/// Writes every stored counterexample, with its parameters and matrices, as JSON.
pub fn write_repro(path: &Path, reports: &[ChainReport]) -> Result<()> {
    let cases: Vec<ReproCase> = reports
        .iter()
        .filter(|r| !r.counterexamples.is_empty())
        .map(|r| ReproCase { case: &r.case, seed: r.seed, rel_tol: r.rel_tol, counterexamples: &r.counterexamples })
        .collect();
    std::fs::write(path, serde_json::to_string_pretty(&cases)?)?;
    Ok(())
}
