use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use convex_means::linalg::json::{matrix_from_json, read_matrix, write_matrix};
use convex_means::linalg::{random_spd, ComplexMatrix, HermitianMatrix, SpdMatrix};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_convex-means"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_rows(dir: &TempDir, name: &str, rows: &[Vec<f64>]) -> PathBuf {
    let p = dir.path().join(name);
    write_matrix(&p, &ComplexMatrix::from_real_rows(rows).unwrap()).unwrap();
    p
}

fn diag(dir: &TempDir, name: &str, d: &[f64]) -> PathBuf {
    let rows: Vec<Vec<f64>> =
        (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0.0 }).collect()).collect();
    write_rows(dir, name, &rows)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn max_abs_diff(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    x.as_slice().iter().zip(y.as_slice()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

#[test]
fn geometric_mean_of_commuting_diagonals() {
    let dir = TempDir::new().unwrap();
    let a = diag(&dir, "a.json", &[1.0, 4.0]);
    let b = diag(&dir, "b.json", &[9.0, 16.0]);
    let o = run(&["mean", "--kind", "geom", "--nu", "0.5", "--a", s(&a), "--b", s(&b)]);
    assert_eq!(code(&o), 0);
    let m = matrix_from_json(stdout(&o).trim()).unwrap();
    let want = ComplexMatrix::from_real_rows(&[vec![3.0, 0.0], vec![0.0, 8.0]]).unwrap();
    assert!(max_abs_diff(&m, &want) < 1e-12);
}

#[test]
fn mean_echoes_first_argument_at_zero_weight_and_equal_inputs() {
    let dir = TempDir::new().unwrap();
    let a = random_spd(4, 100.0, 3);
    let b = random_spd(4, 100.0, 4);
    let pa = dir.path().join("a.json");
    let pb = dir.path().join("b.json");
    write_matrix(&pa, a.as_matrix()).unwrap();
    write_matrix(&pb, b.as_matrix()).unwrap();
    let expected = read_matrix(&pa).unwrap();
    for kind in ["arith", "geom", "harm"] {
        let out = dir.path().join(format!("{kind}.json"));
        let o = run(&["mean", "--kind", kind, "--nu", "0", "--a", s(&pa), "--b", s(&pb), "--out", s(&out)]);
        assert_eq!(code(&o), 0, "{kind}");
        assert_eq!(read_matrix(&out).unwrap(), expected, "{kind} at nu = 0");

        let o = run(&["mean", "--kind", kind, "--nu", "-2.5", "--a", s(&pa), "--b", s(&pa), "--out", s(&out)]);
        assert_eq!(code(&o), 0, "{kind}");
        assert_eq!(read_matrix(&out).unwrap(), expected, "{kind} with A = B");
    }
}

#[test]
fn mean_rejects_non_positive_input() {
    let dir = TempDir::new().unwrap();
    let a = write_rows(&dir, "a.json", &[vec![1.0, 2.0], vec![2.0, 1.0]]);
    let b = diag(&dir, "b.json", &[1.0, 1.0]);
    let o = run(&["mean", "--kind", "geom", "--nu", "0.5", "--a", s(&a), "--b", s(&b)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
}

#[test]
fn harmonic_mean_reports_singular_resolvent() {
    let dir = TempDir::new().unwrap();
    let a = diag(&dir, "a.json", &[1.0, 1.0]);
    let b = diag(&dir, "b.json", &[4.0, 4.0]);
    let o = run(&["mean", "--kind", "harm", "--nu", "2", "--a", s(&a), "--b", s(&b)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn mean_rejects_mismatched_dimensions() {
    let dir = TempDir::new().unwrap();
    let a = diag(&dir, "a.json", &[1.0, 1.0]);
    let b = diag(&dir, "b.json", &[1.0, 1.0, 1.0]);
    let o = run(&["mean", "--kind", "arith", "--nu", "0.5", "--a", s(&a), "--b", s(&b)]);
    assert_ne!(code(&o), 0);
}

#[test]
fn norm_prints_every_requested_kind() {
    let dir = TempDir::new().unwrap();
    let x = diag(&dir, "x.json", &[3.0, -4.0]);
    let o = run(&["norm", "--x", s(&x), "--kind", "spectral", "--kind", "trace", "--kind", "frobenius"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["spectral"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!((v["trace"].as_f64().unwrap() - 7.0).abs() < 1e-12);
    assert!((v["frobenius"].as_f64().unwrap() - 5.0).abs() < 1e-12);

    let o = run(&["norm", "--x", s(&x), "--kind", "schatten:0.5"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn norm_functional_at_zero_weight_is_norm_of_ax() {
    let dir = TempDir::new().unwrap();
    let a = diag(&dir, "a.json", &[2.0, 3.0]);
    let b = diag(&dir, "b.json", &[5.0, 7.0]);
    let x = write_rows(&dir, "x.json", &[vec![1.0, 1.0], vec![1.0, 1.0]]);
    let o = run(&["norm", "--x", s(&x), "--kind", "frobenius", "--a", s(&a), "--b", s(&b), "--nu", "0"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    // A X has rows (2, 2) and (3, 3).
    assert!((v["frobenius"].as_f64().unwrap() - 26f64.sqrt()).abs() < 1e-12);
}

#[test]
fn verify_unknown_case_is_a_usage_error() {
    let o = run(&["verify", "--case", "no_such_case"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn verify_csv_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let mut csvs = Vec::new();
    for i in 0..2 {
        let p = dir.path().join(format!("run{i}.csv"));
        let o = run(&[
            "verify",
            "--case",
            "convex_refined",
            "--case",
            "operator_reverse",
            "--instances",
            "1",
            "--seed",
            "11",
            "--csv",
            s(&p),
        ]);
        assert_eq!(code(&o), 0);
        csvs.push(std::fs::read_to_string(&p).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    let mut lines = csvs[0].lines();
    assert_eq!(lines.next(), Some("name,instances,skipped,failures,min_slack,max_gap"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn verify_summary_counts_cases() {
    let o = run(&["verify", "--case", "young_reverse", "--instances", "20"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("1 cases, 0 failed"), "{}", stdout(&o));
}

fn sweep_rows(out: &str) -> Vec<Vec<String>> {
    out.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn depth_sweep_gain_is_nondecreasing() {
    let o = run(&["sweep", "--case", "young_reverse", "--param", "N", "--grid", "1:8:1", "--instances", "200"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("N,instances,skipped,failures,mean_gap,mean_gain"));
    let rows = sweep_rows(&out);
    assert_eq!(rows.len(), 8);
    let gains: Vec<f64> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    for w in gains.windows(2) {
        assert!(w[1] >= w[0] - 1e-12, "{gains:?}");
    }
}

#[test]
fn nu_sweep_has_zero_gain_at_zero() {
    let o = run(&["sweep", "--case", "convex_refined", "--param", "nu", "--grid", "0:1:0.5", "--instances", "50"]);
    assert_eq!(code(&o), 0);
    let rows = sweep_rows(&stdout(&o));
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(rows[0][5].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn sweep_rejects_empty_grid() {
    let o = run(&["sweep", "--case", "convex_refined", "--param", "nu", "--grid", "1:0:0.5"]);
    assert_eq!(code(&o), 64);
    let o = run(&["sweep", "--case", "convex_refined", "--param", "nu", "--grid", "0:1:0"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn gen_matches_library_sampler() {
    let dir = TempDir::new().unwrap();
    for n in [1u64, 3, 8] {
        let p1 = dir.path().join(format!("g{n}a.json"));
        let p2 = dir.path().join(format!("g{n}b.json"));
        for p in [&p1, &p2] {
            let o = run(&["gen", "--n", &n.to_string(), "--cond", "100", "--seed", "5", "--out", s(p)]);
            assert_eq!(code(&o), 0);
        }
        assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
        let m = read_matrix(&p1).unwrap();
        assert_eq!(&m, random_spd(n as usize, 100.0, 5).as_matrix());
        let spd = SpdMatrix::new(HermitianMatrix::new(m).unwrap()).unwrap();
        assert!(spd.condition_number() <= 100.0 * (1.0 + 1e-9));
        if n == 1 {
            assert!(spd.as_matrix().get(0, 0).re > 0.0);
        }
    }
}

#[test]
fn gen_rejects_out_of_range_size() {
    assert_eq!(code(&run(&["gen", "--n", "0"])), 64);
    assert_eq!(code(&run(&["gen", "--n", "65"])), 64);
    assert_eq!(code(&run(&["gen", "--n", "2", "--cond", "0.5"])), 64);
}
