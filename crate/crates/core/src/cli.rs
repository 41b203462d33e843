//! Command-line front end. Data goes to standard output, diagnostics to
//! standard error as `error: <class>: <message>`.
//!
//! Exit codes: 0 success, 1 verification failures, 2 domain or precondition
//! error, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::harness::{
    find_case, parse_grid, registry, run_suite, summary, sweep, sweep_csv_string, write_csv, write_repro,
    SuiteOverrides, SweepParam,
};
use crate::linalg::json::{matrix_to_json, read_matrix, write_matrix};
use crate::linalg::random::random_spd;
use crate::linalg::{ComplexMatrix, HermitianMatrix, SpdMatrix};
use crate::matrix_means::MeanKind;
use crate::uinorms::{norm_functional, ui_norm, NormKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "convex-means",
    version,
    about = "Weighted matrix means, unitarily invariant norms, and randomized verification of their inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weighted mean of two positive definite matrices.
    Mean(MeanArgs),
    /// Unitarily invariant norms of a matrix, or of A^{1−ν}XB^ν.
    Norm(NormArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Sweep one parameter of a case.
    Sweep(SweepArgs),
    /// Write a random positive definite matrix.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Arith,
    Geom,
    Harm,
}

#[derive(Debug, Args)]
struct MeanArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct NormArgs {
    #[arg(long)]
    x: PathBuf,
    /// spectral, trace, frobenius, schatten:P or kyfan:K; repeatable. Defaults to one of each family.
    #[arg(long = "kind")]
    kinds: Vec<NormKind>,
    /// With --b and --nu, measure A^{1−ν}XB^ν instead of X.
    #[arg(long, requires_all = ["b", "nu"])]
    a: Option<PathBuf>,
    #[arg(long, requires_all = ["a", "nu"])]
    b: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["a", "b"])]
    nu: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Case to run; repeatable. Defaults to every registered case.
    #[arg(long = "case")]
    cases: Vec<String>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    instances: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    dim_max: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Write the per-case CSV report here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write failing instances here as JSON.
    #[arg(long)]
    repro: Option<PathBuf>,
    /// List the registered cases and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    case: String,
    /// nu, N or cond.
    #[arg(long)]
    param: SweepParam,
    /// lo:hi:step
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    instances: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    n: u64,
    #[arg(long, default_value_t = 100.0)]
    cond: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command failure with its exit code.
struct Failure {
    code: i32,
    class: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, class) = match &e {
            Error::UnknownCase(_) | Error::Config(_) => (EXIT_USAGE, "usage"),
            Error::Io(_) => (EXIT_DOMAIN, "io"),
            Error::Json(_) => (EXIT_DOMAIN, "input"),
            _ => (EXIT_DOMAIN, "domain"),
        };
        Failure { code, class, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, class: "usage", message: message.into() }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Mean(a) => cmd_mean(a, stdout),
        Command::Norm(a) => cmd_norm(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Gen(a) => cmd_gen(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}: {}", f.class, f.message);
            f.code
        }
    }
}

fn read_spd(path: &Path) -> Result<SpdMatrix, Failure> {
    let m = read_matrix(path).map_err(|e| with_path(path, e))?;
    HermitianMatrix::new(m).and_then(SpdMatrix::new).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn emit(out: Option<&Path>, data: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, data)?,
        None => stdout.write_all(data.as_bytes())?,
    }
    Ok(())
}

fn cmd_mean(a: MeanArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    if !a.nu.is_finite() {
        return Err(usage(format!("--nu must be finite, got {}", a.nu)));
    }
    let kind = match a.kind {
        Kind::Arith => MeanKind::Arithmetic(a.nu),
        Kind::Geom => MeanKind::Geometric(a.nu),
        Kind::Harm => MeanKind::Harmonic(a.nu),
    };
    let (ma, mb) = (read_spd(&a.a)?, read_spd(&a.b)?);
    let m = kind.apply(&ma, &mb)?;
    match &a.out {
        Some(p) => write_matrix(p, m.as_matrix())?,
        None => writeln!(stdout, "{}", matrix_to_json(m.as_matrix()))?,
    }
    Ok(EXIT_OK)
}

fn cmd_norm(a: NormArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let kinds = if a.kinds.is_empty() { NormKind::SAMPLE.to_vec() } else { a.kinds.clone() };
    for k in &kinds {
        k.validate().map_err(|e| usage(e.to_string()))?;
    }
    let x: ComplexMatrix = read_matrix(&a.x).map_err(|e| with_path(&a.x, e))?;
    let pair = match (&a.a, &a.b, a.nu) {
        (Some(pa), Some(pb), Some(nu)) => Some((read_spd(pa)?, read_spd(pb)?, nu)),
        _ => None,
    };
    let mut obj = serde_json::Map::new();
    for k in kinds {
        let v = match &pair {
            Some((ma, mb, nu)) => norm_functional(ma, mb, &x, *nu, k)?,
            None => ui_norm(&x, k)?,
        };
        obj.insert(k.to_string(), serde_json::Value::from(v));
    }
    writeln!(stdout, "{}", serde_json::Value::Object(obj)).map_err(Failure::from)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    if a.list {
        for c in registry() {
            writeln!(stdout, "{:<24} {:<9} {}", c.name, c.family.to_string(), c.summary)?;
        }
        return Ok(EXIT_OK);
    }
    for c in &a.cases {
        find_case(c)?;
    }
    let overrides = SuiteOverrides {
        cases: a.cases,
        instances: a.instances.map(|k| k as usize),
        seed: a.seed,
        dim_max: a.dim_max.map(|d| d as usize),
        rel_tol: a.tol,
    };
    overrides.configs()?;
    let reports = run_suite(&overrides)?;
    if let Some(p) = &a.csv {
        write_csv(p, &reports)?;
    }
    let failed = reports.iter().any(|r| !r.passed());
    if let (Some(p), true) = (&a.repro, failed) {
        write_repro(p, &reports)?;
    }
    stdout.write_all(summary(&reports).as_bytes())?;
    Ok(if failed { EXIT_FAILURES } else { EXIT_OK })
}

fn cmd_sweep(a: SweepArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let grid = parse_grid(&a.grid)?;
    let mut cfg = find_case(&a.case)?.default_config();
    if let Some(k) = a.instances {
        cfg.instances = k as usize;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    let rows = sweep(&cfg, a.param, &grid)?;
    emit(a.csv.as_deref(), &sweep_csv_string(&a.param.to_string(), &rows)?, stdout)?;
    Ok(if rows.iter().any(|r| r.failures > 0) { EXIT_FAILURES } else { EXIT_OK })
}

fn cmd_gen(a: GenArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    if !(a.cond >= 1.0 && a.cond.is_finite()) {
        return Err(usage(format!("--cond must be at least 1, got {}", a.cond)));
    }
    let m = random_spd(a.n as usize, a.cond, a.seed);
    match &a.out {
        Some(p) => write_matrix(p, m.as_matrix())?,
        None => writeln!(stdout, "{}", matrix_to_json(m.as_matrix()))?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["convex-means"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
        assert_eq!(run_str(&["--version"]).0, EXIT_OK);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&[]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        let (code, _, err) = run_str(&["verify", "--case", "unknown"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.starts_with("error: usage:"), "{err}");
        assert_eq!(run_str(&["sweep", "--case", "young_reverse", "--param", "N", "--grid", "3:1:1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["gen", "--n", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["gen", "--n", "2", "--cond", "0.5"]).0, EXIT_USAGE);
    }

    #[test]
    fn gen_is_deterministic_and_positive() {
        let (code, a, _) = run_str(&["gen", "--n", "1", "--seed", "3"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(a, run_str(&["gen", "--n", "1", "--seed", "3"]).1);
        let m = crate::linalg::json::matrix_from_json(a.trim()).unwrap();
        assert!(m.get(0, 0).re > 0.0);
    }

    #[test]
    fn verify_list_names_every_case() {
        let (code, out, _) = run_str(&["verify", "--list"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), registry().len());
    }
}
