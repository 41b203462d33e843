use rand::Rng;

use super::{sandwich, ui_norm, NormKind};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, SpdMatrix};
use crate::scalar::{RefinedBound, ScalarChain, Weight};

/// Range of `ν` used by the convexity and monotonicity checks.
pub const HEINZ_NU_RANGE: (f64, f64) = (-3.0, 4.0);
/// Points per monotonicity grid.
pub const HEINZ_GRID_POINTS: usize = 81;

/// `‖A^s X B^t + A^t X B^s‖`.
fn symmetric_pair(a: &SpdMatrix, b: &SpdMatrix, x: &ComplexMatrix, s: f64, t: f64, kind: NormKind) -> Result<f64> {
    let sum = sandwich(a, s, x, b, t)?.try_add(&sandwich(a, t, x, b, s)?)?;
    ui_norm(&sum, kind)
}

/// `f(ν) = ‖AᵛXB^{1−ν} + A^{1−ν}XBᵛ‖`.
pub fn heinz_norm(a: &SpdMatrix, b: &SpdMatrix, x: &ComplexMatrix, nu: f64, kind: NormKind) -> Result<f64> {
    symmetric_pair(a, b, x, nu, 1.0 - nu, kind)
}

/// `‖AX+XB‖ ≤ ‖AX+XB‖ + Σ 2ʲν((f(0)+f(2^{1−j}))/2 − f(2^{−j})) ≤ f(−ν)` for `ν ≥ 0`.
pub fn heinz_reverse_chain(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    nu: f64,
    depth: u32,
    kind: NormKind,
) -> Result<ScalarChain> {
    let w = Weight::non_negative(nu)?;
    let kind = kind.validate()?;
    let f = |s: f64| heinz_norm(a, b, x, s, kind).unwrap_or(f64::NAN);
    let bound = RefinedBound::near_a(&f, 0.0, 1.0, w, depth)?;
    let f0 = f(0.0);
    ScalarChain::new(vec!["sum_norm", "refined", "heinz_neg"], vec![f0, f0 + bound.correction, bound.target])
}

/// `‖A^{p−q}X + XB^{p−q}‖ ≤ ‖AᵖXB^{−q} + A^{−q}XBᵖ‖` for `0 < q < p`.
pub fn heinz_pq_check(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    p: f64,
    q: f64,
    kind: NormKind,
) -> Result<ScalarChain> {
    if !(0.0 < q && q < p) {
        return Err(Error::domain(format!("need 0 < q < p (p = {p}, q = {q})")));
    }
    let kind = kind.validate()?;
    let lower = symmetric_pair(a, b, x, p - q, 0.0, kind)?;
    let upper = symmetric_pair(a, b, x, p, -q, kind)?;
    ScalarChain::new(vec!["shifted_sum", "split_powers"], vec![lower, upper])
}

fn interpolated_value(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    p: f64,
    q: f64,
    r: f64,
    kind: NormKind,
) -> Result<f64> {
    symmetric_pair(a, b, x, p - r, -q + r, kind)
}

fn check_interpolation(p: f64, q: f64, r: f64) -> Result<()> {
    if !(0.0 < q && q < p && (0.0..=q).contains(&r)) {
        return Err(Error::domain(format!("need 0 ≤ r ≤ q and 0 < q < p (p = {p}, q = {q}, r = {r})")));
    }
    Ok(())
}

/// `‖A^{p−r}XB^{−q+r} + A^{−q+r}XB^{p−r}‖ ≤ ‖AᵖXB^{−q} + A^{−q}XBᵖ‖` for `0 ≤ r ≤ q < p`.
pub fn heinz_interpolated(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    p: f64,
    q: f64,
    r: f64,
    kind: NormKind,
) -> Result<ScalarChain> {
    check_interpolation(p, q, r)?;
    let kind = kind.validate()?;
    let lower = interpolated_value(a, b, x, p, q, r, kind)?;
    let upper = interpolated_value(a, b, x, p, q, 0.0, kind)?;
    ScalarChain::new(vec!["interpolated", "split_powers"], vec![lower, upper])
}

/// `(r, g(r))` on `points` equally spaced `r ∈ [0, q]`; `g` is nonincreasing.
pub fn heinz_interpolated_grid(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    p: f64,
    q: f64,
    points: usize,
    kind: NormKind,
) -> Result<Vec<(f64, f64)>> {
    check_interpolation(p, q, 0.0)?;
    if points < 2 {
        return Err(Error::domain("grid needs at least two points"));
    }
    let kind = kind.validate()?;
    (0..points)
        .map(|i| {
            let r = q * i as f64 / (points - 1) as f64;
            Ok((r, interpolated_value(a, b, x, p, q, r, kind)?))
        })
        .collect()
}

/// Outcome of sampling convexity and monotonicity of the Heinz norm.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HeinzShapeReport {
    pub norm: String,
    pub midpoint_trials: usize,
    pub midpoint_failures: usize,
    /// Smallest `(f(ν₁)+f(ν₂))/2 − f((ν₁+ν₂)/2)` seen, relative to the scale.
    pub worst_midpoint_slack: f64,
    pub grid_points: usize,
    /// Grid steps on `[−3, ½]` where `f` increased beyond tolerance.
    pub decreasing_violations: usize,
    /// Grid steps on `[½, 4]` where `f` decreased beyond tolerance.
    pub increasing_violations: usize,
    /// Smallest monotone step slack seen, relative to the scale.
    pub worst_monotone_slack: f64,
    pub tolerance: f64,
}

impl HeinzShapeReport {
    pub fn passed(&self) -> bool {
        self.midpoint_failures == 0 && self.decreasing_violations == 0 && self.increasing_violations == 0
    }
}

/// Midpoint convexity over `pairs` random `(ν₁, ν₂)` in [`HEINZ_NU_RANGE`],
/// and monotonicity on [`HEINZ_GRID_POINTS`]-point grids over `[−3, ½]` and
/// `[½, 4]`. Comparisons use `rel_tol · max(1, |values|)`.
#[allow(clippy::too_many_arguments)]
pub fn heinz_shape_checks<R: Rng + ?Sized>(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    kind: NormKind,
    rng: &mut R,
    pairs: usize,
    rel_tol: f64,
) -> Result<HeinzShapeReport> {
    let kind = kind.validate()?;
    let f = |nu: f64| heinz_norm(a, b, x, nu, kind);
    let (lo, hi) = HEINZ_NU_RANGE;

    let mut midpoint_failures = 0;
    let mut worst_midpoint_slack = f64::INFINITY;
    for _ in 0..pairs {
        let n1 = rng.random_range(lo..hi);
        let n2 = rng.random_range(lo..hi);
        let (f1, f2, fm) = (f(n1)?, f(n2)?, f(0.5 * (n1 + n2))?);
        let scale = 1f64.max(f1).max(f2);
        let slack = (0.5 * (f1 + f2) - fm) / scale;
        worst_midpoint_slack = worst_midpoint_slack.min(slack);
        if slack < -rel_tol {
            midpoint_failures += 1;
        }
    }

    let grid = |from: f64, to: f64| -> Result<Vec<f64>> {
        (0..HEINZ_GRID_POINTS).map(|i| f(from + (to - from) * i as f64 / (HEINZ_GRID_POINTS - 1) as f64)).collect()
    };
    let mut worst_monotone_slack = f64::INFINITY;
    let mut count_steps = |values: &[f64], decreasing: bool| {
        values
            .windows(2)
            .filter(|w| {
                let scale = 1f64.max(w[0]).max(w[1]);
                let slack = if decreasing { w[0] - w[1] } else { w[1] - w[0] } / scale;
                worst_monotone_slack = worst_monotone_slack.min(slack);
                slack < -rel_tol
            })
            .count()
    };
    let decreasing_violations = count_steps(&grid(lo, 0.5)?, true);
    let increasing_violations = count_steps(&grid(0.5, hi)?, false);

    Ok(HeinzShapeReport {
        norm: kind.to_string(),
        midpoint_trials: pairs,
        midpoint_failures,
        worst_midpoint_slack: if pairs == 0 { 0.0 } else { worst_midpoint_slack },
        grid_points: HEINZ_GRID_POINTS,
        decreasing_violations,
        increasing_violations,
        worst_monotone_slack,
        tolerance: rel_tol,
    })
}
