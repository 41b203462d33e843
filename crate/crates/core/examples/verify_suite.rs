//! Runs the verification suite at reduced size and prints the summary and CSV.

use convex_means::harness::{csv_string, run_suite, summary, SuiteOverrides};

fn main() -> convex_means::Result<()> {
    let overrides = SuiteOverrides { instances: Some(50), seed: Some(7), ..Default::default() };
    let reports = run_suite(&overrides)?;
    print!("{}", summary(&reports));
    print!("{}", csv_string(&reports)?);
    if reports.iter().any(|r| !r.passed()) {
        std::process::exit(1);
    }
    Ok(())
}
