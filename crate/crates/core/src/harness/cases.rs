use rand::Rng;
use serde::Serialize;

use super::{CaseConfig, Chain, Instance, Refinement, DEFAULT_SEED, OPERATOR_TOL, SCALAR_TOL};
use crate::error::{Error, Result};
use crate::linalg::json::MatrixJson;
use crate::linalg::random::{random_complex, random_spd_with, InstanceRng};
use crate::linalg::{ComplexMatrix, HermitianMatrix, SpdMatrix};
use crate::matrix_means::{
    harm_operator_chain, kantorovich_operator_check, operator_reverse_chain, operator_square_chain, trace_chain,
};
use crate::scalar::{
    harm_geom_chain, harm_reverse_chain, kantorovich_bound, line_through, logconvex_chain, logconvex_chain_reflected,
    refined_lower, refined_lower_reflected, s_harm, young_refined_t, young_reverse_chain, young_square_chain, ConvexFn,
    LogConvexFn, ScalarChain, Weight, WeightDomain,
};
use crate::uinorms::{
    combined_norm_chain, heinz_interpolated, heinz_interpolated_grid, heinz_norm, heinz_pq_check, heinz_reverse_chain,
    norm_functional, norm_heinz_chain, norm_reverse_chain, NormKind, HEINZ_GRID_POINTS, HEINZ_NU_RANGE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Scalar,
    Operator,
    Trace,
    Norm,
    Heinz,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::Scalar => "scalar",
            Family::Operator => "operator",
            Family::Trace => "trace",
            Family::Norm => "norm",
            Family::Heinz => "heinz",
        };
        f.write_str(s)
    }
}

/// A registered case: default sampling ranges and the instance generator.
#[derive(Clone, Copy)]
pub struct CaseSpec {
    pub name: &'static str,
    pub family: Family,
    pub summary: &'static str,
    pub instances: usize,
    pub rel_tol: f64,
    pub dim: (usize, usize),
    pub cond_max: f64,
    pub nu_nonneg: Option<(f64, f64)>,
    pub nu_neg: Option<(f64, f64)>,
    /// `None` when the case has no refinement depth.
    pub depth: Option<(u32, u32)>,
    sample: fn(&mut Sampler) -> Result<Instance>,
}

impl std::fmt::Debug for CaseSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CaseSpec").field("name", &self.name).field("family", &self.family).finish_non_exhaustive()
    }
}

const NU_SCALAR: (f64, f64) = (0.0, 8.0);
const NU_SCALAR_NEG: (f64, f64) = (-9.0, -1.0);
const NU_YOUNG: (f64, f64) = (0.0, 4.0);
const NU_YOUNG_NEG: (f64, f64) = (-5.0, -1.0);
const NU_NORM: (f64, f64) = (0.0, 2.0);
const NU_NORM_NEG: (f64, f64) = (-3.0, -1.0);
const DEPTH: (u32, u32) = (1, 8);
const COND: f64 = 100.0;
/// Young-type chains are checked one decade tighter than other scalar chains.
const YOUNG_TOL: f64 = 1e-10;

impl CaseSpec {
    const fn new(
        name: &'static str,
        family: Family,
        summary: &'static str,
        sample: fn(&mut Sampler) -> Result<Instance>,
    ) -> Self {
        let (instances, rel_tol, dim) = match family {
            Family::Scalar => (1000, SCALAR_TOL, (1, 1)),
            Family::Operator => (200, OPERATOR_TOL, (2, 8)),
            Family::Trace => (200, SCALAR_TOL, (2, 8)),
            Family::Norm => (500, OPERATOR_TOL, (2, 6)),
            Family::Heinz => (200, OPERATOR_TOL, (2, 6)),
        };
        Self {
            name,
            family,
            summary,
            instances,
            rel_tol,
            dim,
            cond_max: COND,
            nu_nonneg: None,
            nu_neg: None,
            depth: None,
            sample,
        }
    }

    const fn nu(mut self, nonneg: Option<(f64, f64)>, neg: Option<(f64, f64)>) -> Self {
        self.nu_nonneg = nonneg;
        self.nu_neg = neg;
        self
    }

    const fn refined(mut self) -> Self {
        self.depth = Some(DEPTH);
        self
    }

    const fn tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn samples_nu(&self) -> bool {
        self.nu_nonneg.is_some() || self.nu_neg.is_some()
    }

    pub fn default_config(&self) -> CaseConfig {
        CaseConfig {
            case: self.name.to_string(),
            instances: self.instances,
            dim: self.dim,
            cond_max: self.cond_max,
            nu_nonneg: self.nu_nonneg,
            nu_neg: self.nu_neg,
            depth: self.depth.unwrap_or((1, 1)),
            seed: DEFAULT_SEED,
            rel_tol: self.rel_tol,
            fixed_nu: None,
            fixed_depth: None,
        }
    }

    pub fn sample(&self, s: &mut Sampler) -> Result<Instance> {
        (self.sample)(s)
    }
}

/// Draws parameters from one instance stream and records them for replay.
pub struct Sampler<'a> {
    rng: InstanceRng,
    cfg: &'a CaseConfig,
    params: serde_json::Map<String, serde_json::Value>,
}

impl<'a> Sampler<'a> {
    pub fn new(rng: InstanceRng, cfg: &'a CaseConfig) -> Self {
        Self { rng, cfg, params: serde_json::Map::new() }
    }

    pub fn into_params(self) -> serde_json::Value {
        serde_json::Value::Object(self.params)
    }

    pub fn record(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.params.insert(key.to_string(), v);
    }

    /// Uniform on `[lo, hi)`, or `lo` when the range is a point.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo.ln(), hi.ln()).exp()
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }

    /// Draws `ν` from the configured branches (equally likely when both are
    /// set); a fixed `ν` replaces the draw.
    pub fn nu(&mut self) -> Result<f64> {
        let branch = self.rng.random::<bool>();
        let range = match (self.cfg.nu_nonneg, self.cfg.nu_neg) {
            (Some(p), Some(n)) => {
                if branch {
                    p
                } else {
                    n
                }
            }
            (Some(p), None) => p,
            (None, Some(n)) => n,
            (None, None) => return Err(Error::Config(format!("case `{}` needs a ν range", self.cfg.case))),
        };
        let drawn = self.uniform(range.0, range.1);
        let nu = self.cfg.fixed_nu.unwrap_or(drawn);
        self.record("nu", nu);
        Ok(nu)
    }

    pub fn weight(&mut self) -> Result<Weight> {
        Weight::new(self.nu()?)
    }

    pub fn depth(&mut self) -> u32 {
        let (lo, hi) = self.cfg.depth;
        let drawn = self.rng.random_range(lo..=hi);
        let depth = self.cfg.fixed_depth.unwrap_or(drawn);
        self.record("depth", depth);
        depth
    }

    pub fn dim(&mut self) -> usize {
        let (lo, hi) = self.cfg.dim;
        let n = self.rng.random_range(lo..=hi);
        self.record("n", n);
        n
    }

    pub fn spd(&mut self, key: &str, n: usize) -> SpdMatrix {
        let m = random_spd_with(&mut self.rng, n, self.cfg.cond_max);
        self.record(key, MatrixJson::from_matrix(m.as_matrix()));
        m
    }

    /// Candidate pair for an `A ≤ B` precondition: `B = A + s(C − εI)` with
    /// `A`, `C` of condition at most `cond_max/2`, `s ∈ [10⁻³, 1]`
    /// log-uniform and `ε ∈ [0, 1.25·λ_min(C))`. About one draw in five
    /// violates `A ≤ B` and is rejected by the chain (or here, when `B` is not
    /// even positive definite); accepted pairs have `cond(B) ≤ cond_max`.
    pub fn ordered_pair(&mut self, n: usize) -> Result<(SpdMatrix, SpdMatrix)> {
        let half = (0.5 * self.cfg.cond_max).max(1.0);
        let a = random_spd_with(&mut self.rng, n, half);
        let c = random_spd_with(&mut self.rng, n, half);
        let s = self.log_uniform(1e-3, 1.0);
        let eps = 1.25 * c.eigen().min() * self.uniform(0.0, 1.0);
        let shifted =
            HermitianMatrix::linear_combination(&[(1.0, c.as_hermitian()), (-eps, &HermitianMatrix::identity(n))])?;
        let b = HermitianMatrix::linear_combination(&[(1.0, a.as_hermitian()), (s, &shifted)])?;
        self.record("A", MatrixJson::from_matrix(a.as_matrix()));
        self.record("B", MatrixJson::from_matrix(b.as_matrix()));
        match SpdMatrix::new(b) {
            Ok(b) => Ok((a, b)),
            Err(Error::NotPositiveDefinite { min_eigenvalue }) => {
                Err(Error::Hypothesis(format!("A ≤ B fails: B has eigenvalue {min_eigenvalue:e}")))
            }
            Err(e) => Err(e),
        }
    }

    pub fn complex(&mut self, key: &str, n: usize) -> ComplexMatrix {
        let m = random_complex(&mut self.rng, n);
        self.record(key, MatrixJson::from_matrix(&m));
        m
    }

    pub fn norm_kind(&mut self) -> NormKind {
        let kind = NormKind::SAMPLE[self.index(NormKind::SAMPLE.len())];
        self.record("norm", kind.to_string());
        kind
    }

    /// `0 < x, y` log-uniform in `[10⁻³, 10³]`.
    fn positive_pair(&mut self) -> (f64, f64) {
        let x = self.log_uniform(1e-3, 1e3);
        let y = self.log_uniform(1e-3, 1e3);
        self.record("x", x);
        self.record("y", y);
        (x, y)
    }

    fn ordered_positive_pair(&mut self) -> (f64, f64) {
        let (x, y) = self.positive_pair();
        let (x, y) = (x.min(y), x.max(y));
        self.record("x", x);
        self.record("y", y);
        (x, y)
    }

    /// `a < b` uniform in `[−5, 5]`.
    fn interval(&mut self) -> (f64, f64) {
        let (p, q) = (self.uniform(-5.0, 5.0), self.uniform(-5.0, 5.0));
        let (a, b) = if p < q {
            (p, q)
        } else if q < p {
            (q, p)
        } else {
            (p, p + 1.0)
        };
        self.record("a", a);
        self.record("b", b);
        (a, b)
    }

    fn convex_fn(&mut self, a: f64, b: f64, nu: f64) -> ConvexFn {
        let i = self.index(ConvexFn::FIXED.len() + 1);
        let f = ConvexFn::FIXED.get(i).copied().unwrap_or_else(|| ConvexFn::neg_log_above(a.min(a - nu * (b - a))));
        self.record("f", f.name());
        if let ConvexFn::NegLogShifted { shift } = f {
            self.record("shift", shift);
        }
        f
    }

    fn log_convex_fn(&mut self) -> LogConvexFn {
        let f = LogConvexFn::ALL[self.index(LogConvexFn::ALL.len())];
        self.record("f", f.name());
        f
    }

    fn spd_pair(&mut self) -> (usize, SpdMatrix, SpdMatrix) {
        let n = self.dim();
        let a = self.spd("A", n);
        let b = self.spd("B", n);
        (n, a, b)
    }

    fn norm_setup(&mut self) -> (SpdMatrix, SpdMatrix, ComplexMatrix, NormKind) {
        let (n, a, b) = self.spd_pair();
        let x = self.complex("X", n);
        let kind = self.norm_kind();
        (a, b, x, kind)
    }
}

/// The chain at index 0 with layout `[base, refined, target]`.
const LEADING: Option<Refinement> = Some(Refinement { chain: 0, base: 0, refined: 1, target: 2 });

fn many(s: &mut Sampler, chains: Vec<Chain>, refinement: Option<Refinement>) -> Result<Instance> {
    let params = std::mem::take(&mut s.params);
    Ok(Instance { chains, refinement, params: serde_json::Value::Object(params) })
}

fn single(s: &mut Sampler, c: impl Into<Chain>, refinement: Option<Refinement>) -> Result<Instance> {
    many(s, vec![c.into()], refinement)
}

fn two(values: [f64; 2], labels: [&'static str; 2]) -> Result<ScalarChain> {
    ScalarChain::new(labels.to_vec(), values.to_vec())
}

// Scalar cases.

fn affine_bound(s: &mut Sampler) -> Result<Instance> {
    let (a, b) = s.interval();
    let nu = s.weight()?.value();
    let f = s.convex_fn(a, b, nu);
    let t = a - nu * (b - a);
    let line = line_through(&|u| f.eval(u), a, b, t)?;
    single(s, two([line, f.eval(t)], ["line", "value"])?, None)
}

fn convex_refined(s: &mut Sampler) -> Result<Instance> {
    let (a, b) = s.interval();
    let w = s.weight()?;
    let depth = s.depth();
    let f = s.convex_fn(a, b, w.value());
    let c = refined_lower(&|t| f.eval(t), a, b, w, depth)?;
    single(s, c, (w.domain() == WeightDomain::NonNegative).then_some(LEADING).flatten())
}

fn convex_refined_reflected(s: &mut Sampler) -> Result<Instance> {
    let (a, b) = s.interval();
    let w = s.weight()?;
    let depth = s.depth();
    let f = s.convex_fn(a, b, w.value());
    let c = refined_lower_reflected(&|t| f.eval(t), a, b, w, depth)?;
    single(s, c, (w.domain() == WeightDomain::AtMostMinusOne).then_some(LEADING).flatten())
}

fn logconvex_refined(s: &mut Sampler) -> Result<Instance> {
    let (a, b) = s.interval();
    let w = Weight::non_negative(s.nu()?)?;
    let depth = s.depth();
    let f = s.log_convex_fn();
    let c = logconvex_chain(&|t| f.eval(t), a, b, w, depth)?;
    single(s, c, LEADING)
}

fn logconvex_refined_reflected(s: &mut Sampler) -> Result<Instance> {
    let (a, b) = s.interval();
    let w = Weight::at_most_minus_one(s.nu()?)?;
    let depth = s.depth();
    let f = s.log_convex_fn();
    let c = logconvex_chain_reflected(&|t| f.eval(t), a, b, w, depth)?;
    single(s, c, LEADING)
}

fn young_reverse(s: &mut Sampler) -> Result<Instance> {
    let (x, y) = s.positive_pair();
    let w = s.weight()?;
    let depth = s.depth();
    single(s, young_reverse_chain(x, y, w, depth)?, LEADING)
}

fn young_square(s: &mut Sampler) -> Result<Instance> {
    let (x, y) = s.positive_pair();
    let w = s.weight()?;
    let depth = s.depth();
    single(s, young_square_chain(x, y, w, depth)?, LEADING)
}

fn young_t(s: &mut Sampler) -> Result<Instance> {
    let (x, y) = s.positive_pair();
    let t = 1.0 - s.uniform(0.0, 1.0);
    s.record("t", t);
    let depth = s.depth();
    single(s, young_refined_t(x, y, t, depth)?, LEADING)
}

fn harm_weight_convexity(s: &mut Sampler) -> Result<Instance> {
    let (x, y) = s.ordered_positive_pair();
    let (p, q) = (s.uniform(-9.0, 1.0), s.uniform(-9.0, 1.0));
    let alpha = s.uniform(0.0, 1.0);
    s.record("nu_pair", [p, q]);
    s.record("alpha", alpha);
    let mixed = s_harm(x, y, alpha * p + (1.0 - alpha) * q)?;
    let chord = alpha * s_harm(x, y, p)? + (1.0 - alpha) * s_harm(x, y, q)?;
    single(s, two([mixed, chord], ["harm_at_mix", "chord"])?, None)
}

fn arith_harm_reverse(s: &mut Sampler) -> Result<Instance> {
    let (x, y) = s.ordered_positive_pair();
    let nu = s.nu()?;
    let c = harm_reverse_chain(x, y, nu, 1)?;
    single(s, two([c.first(), c.last()], ["arith_neg", "harm_neg"])?, None)
}

fn harm_reverse_refined(s: &mut Sampler) -> Result<Instance> {
    let (x, y) = s.ordered_positive_pair();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, harm_reverse_chain(x, y, nu, depth)?, LEADING)
}

fn harm_geom(s: &mut Sampler) -> Result<Instance> {
    let (x, y) = s.ordered_positive_pair();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, harm_geom_chain(x, y, nu, depth)?, LEADING)
}

fn kantorovich_scalar(s: &mut Sampler) -> Result<Instance> {
    let (x, y) = s.ordered_positive_pair();
    let nu = s.nu()?;
    single(s, kantorovich_bound(x, y, nu)?, None)
}

// Operator cases.

fn operator_reverse(s: &mut Sampler) -> Result<Instance> {
    let (_, a, b) = s.spd_pair();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, operator_reverse_chain(&a, &b, nu, depth)?, LEADING)
}

fn operator_square(s: &mut Sampler) -> Result<Instance> {
    let (_, a, b) = s.spd_pair();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, operator_square_chain(&a, &b, nu, depth)?, LEADING)
}

fn harm_operator(s: &mut Sampler) -> Result<Instance> {
    let n = s.dim();
    let (a, b) = s.ordered_pair(n)?;
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, harm_operator_chain(&a, &b, nu, depth)?, LEADING)
}

fn kantorovich_operator(s: &mut Sampler) -> Result<Instance> {
    let n = s.dim();
    let (a, b) = s.ordered_pair(n)?;
    let nu = s.nu()?;
    single(s, kantorovich_operator_check(&a, &b, nu)?, None)
}

// Trace cases.

fn trace_additive(s: &mut Sampler) -> Result<Instance> {
    let (_, a, b) = s.spd_pair();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, trace_chain(&a, &b, nu, depth)?.additive, LEADING)
}

fn trace_multiplicative(s: &mut Sampler) -> Result<Instance> {
    let (_, a, b) = s.spd_pair();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, trace_chain(&a, &b, nu, depth)?.multiplicative, LEADING)
}

fn trace_depth_one(s: &mut Sampler) -> Result<Instance> {
    let (_, a, b) = s.spd_pair();
    let nu = s.nu()?;
    single(s, trace_chain(&a, &b, nu, 1)?.depth_one, None)
}

// Norm cases.

fn norm_reverse(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = s.norm_setup();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, norm_reverse_chain(&a, &b, &x, nu, depth, kind)?, LEADING)
}

fn norm_heinz(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = s.norm_setup();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, norm_heinz_chain(&a, &b, &x, nu, depth, kind)?, LEADING)
}

fn norm_depth_one(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = s.norm_setup();
    let nu = s.nu()?;
    let chains =
        vec![norm_reverse_chain(&a, &b, &x, nu, 1, kind)?.into(), norm_heinz_chain(&a, &b, &x, nu, 1, kind)?.into()];
    many(s, chains, None)
}

fn combined_norm(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = s.norm_setup();
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, combined_norm_chain(&a, &b, &x, nu, depth, kind)?, LEADING)
}

fn norm_log_convexity(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = s.norm_setup();
    let (p, q) = (s.uniform(-2.0, 3.0), s.uniform(-2.0, 3.0));
    s.record("nu_pair", [p, q]);
    let f = |t: f64| norm_functional(&a, &b, &x, t, kind);
    let mid = f(0.5 * (p + q))?;
    let geo = (f(p)? * f(q)?).sqrt();
    single(s, two([mid, geo], ["at_midpoint", "geometric_mean"])?, None)
}

// Heinz cases.

fn heinz_setup(s: &mut Sampler) -> (SpdMatrix, SpdMatrix, ComplexMatrix, NormKind) {
    s.norm_setup()
}

fn heinz_convexity(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = heinz_setup(s);
    let (lo, hi) = HEINZ_NU_RANGE;
    let (p, q) = (s.uniform(lo, hi), s.uniform(lo, hi));
    s.record("nu_pair", [p, q]);
    let f = |t: f64| heinz_norm(&a, &b, &x, t, kind);
    let mid = f(0.5 * (p + q))?;
    let chord = 0.5 * (f(p)? + f(q)?);
    single(s, two([mid, chord], ["at_midpoint", "chord"])?, None)
}

/// Both halves of an 81-point grid on `[−3, 4]`, each ordered to ascend:
/// from `½` leftwards and from `½` rightwards.
fn heinz_monotone(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = heinz_setup(s);
    let (lo, hi) = HEINZ_NU_RANGE;
    let points = HEINZ_GRID_POINTS;
    let grid: Vec<f64> = (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&t| heinz_norm(&a, &b, &x, t, kind)).collect::<Result<_>>()?;
    let split = grid.iter().position(|&t| t >= 0.5).unwrap_or(points - 1);
    let left: Vec<f64> = values[..=split].iter().rev().copied().collect();
    let right: Vec<f64> = values[split..].to_vec();
    let chains = vec![
        ScalarChain::new(vec!["left_grid"; left.len()], left)?.into(),
        ScalarChain::new(vec!["right_grid"; right.len()], right)?.into(),
    ];
    many(s, chains, None)
}

fn heinz_reverse(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = heinz_setup(s);
    let nu = s.nu()?;
    let depth = s.depth();
    single(s, heinz_reverse_chain(&a, &b, &x, nu, depth, kind)?, LEADING)
}

fn heinz_reverse_outside(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = heinz_setup(s);
    let u = 1.0 - s.uniform(0.0, 1.0);
    let nu = if s.rng.random::<bool>() { HEINZ_NU_RANGE.0 * u } else { 1.0 + (HEINZ_NU_RANGE.1 - 1.0) * u };
    s.record("nu", nu);
    let sum = heinz_norm(&a, &b, &x, 0.0, kind)?;
    let outside = heinz_norm(&a, &b, &x, nu, kind)?;
    single(s, two([sum, outside], ["sum_norm", "heinz_outside"])?, None)
}

fn pq(s: &mut Sampler) -> (f64, f64) {
    let q = s.uniform(0.05, 1.5);
    let p = q + s.uniform(0.05, 1.5);
    s.record("p", p);
    s.record("q", q);
    (p, q)
}

fn heinz_pq(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = heinz_setup(s);
    let (p, q) = pq(s);
    single(s, heinz_pq_check(&a, &b, &x, p, q, kind)?, None)
}

fn heinz_interp(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = heinz_setup(s);
    let (p, q) = pq(s);
    let r = q * s.uniform(0.0, 1.0);
    s.record("r", r);
    single(s, heinz_interpolated(&a, &b, &x, p, q, r, kind)?, None)
}

/// The interpolated family on a 21-point grid in `r`, read from `r = q` down to `r = 0`.
fn heinz_interp_grid(s: &mut Sampler) -> Result<Instance> {
    let (a, b, x, kind) = heinz_setup(s);
    let (p, q) = pq(s);
    let values: Vec<f64> =
        heinz_interpolated_grid(&a, &b, &x, p, q, 21, kind)?.into_iter().rev().map(|(_, v)| v).collect();
    single(s, ScalarChain::new(vec!["r_grid"; values.len()], values)?, None)
}

static REGISTRY: [CaseSpec; 37] = [
    CaseSpec::new("affine_bound", Family::Scalar, "affine bound outside [a,b] for convex f", affine_bound)
        .nu(Some(NU_SCALAR), Some(NU_SCALAR_NEG)),
    CaseSpec::new("convex_refined", Family::Scalar, "dyadic refinement anchored at a, convex catalog", convex_refined)
        .nu(Some(NU_SCALAR), Some(NU_SCALAR_NEG))
        .refined(),
    CaseSpec::new(
        "convex_refined_reflected",
        Family::Scalar,
        "dyadic refinement anchored at b, convex catalog",
        convex_refined_reflected,
    )
    .nu(Some(NU_SCALAR), Some(NU_SCALAR_NEG))
    .refined(),
    CaseSpec::new(
        "logconvex_refined",
        Family::Scalar,
        "product refinement anchored at a, log-convex catalog",
        logconvex_refined,
    )
    .nu(Some(NU_SCALAR), None)
    .refined(),
    CaseSpec::new(
        "logconvex_refined_reflected",
        Family::Scalar,
        "product refinement anchored at b, log-convex catalog",
        logconvex_refined_reflected,
    )
    .nu(None, Some(NU_SCALAR_NEG))
    .refined(),
    CaseSpec::new("young_reverse", Family::Scalar, "refined reverse Young, ν ≥ 0", young_reverse)
        .nu(Some(NU_YOUNG), None)
        .refined()
        .tol(YOUNG_TOL),
    CaseSpec::new("young_reverse_neg", Family::Scalar, "refined reverse Young, ν ≤ −1", young_reverse)
        .nu(None, Some(NU_YOUNG_NEG))
        .refined()
        .tol(YOUNG_TOL),
    CaseSpec::new("young_square", Family::Scalar, "refined squared reverse Young, ν ≥ 0", young_square)
        .nu(Some(NU_YOUNG), None)
        .refined()
        .tol(YOUNG_TOL),
    CaseSpec::new("young_square_neg", Family::Scalar, "refined squared reverse Young, ν ≤ −1", young_square)
        .nu(None, Some(NU_YOUNG_NEG))
        .refined()
        .tol(YOUNG_TOL),
    CaseSpec::new("young_refined_t", Family::Scalar, "refined Young inequality for t ∈ (0,1]", young_t)
        .refined()
        .tol(YOUNG_TOL),
    CaseSpec::new(
        "harm_weight_convexity",
        Family::Scalar,
        "ν ↦ x!ᵥy convex on (−∞,1] for x ≤ y",
        harm_weight_convexity,
    ),
    CaseSpec::new("arith_harm_reverse", Family::Scalar, "x∇₋ᵥy ≤ x!₋ᵥy for x ≤ y", arith_harm_reverse)
        .nu(Some(NU_SCALAR), None),
    CaseSpec::new("harm_reverse_refined", Family::Scalar, "refined reverse arithmetic-harmonic", harm_reverse_refined)
        .nu(Some(NU_SCALAR), None)
        .refined(),
    CaseSpec::new("harm_geom", Family::Scalar, "refined reverse geometric-harmonic", harm_geom)
        .nu(Some(NU_SCALAR), None)
        .refined(),
    CaseSpec::new("kantorovich_scalar", Family::Scalar, "x#₋ᵥy·K(y/x)^ν ≤ x!₋ᵥy", kantorovich_scalar)
        .nu(Some(NU_SCALAR), None),
    CaseSpec::new("operator_reverse", Family::Operator, "refined reverse Young for operators, ν ≥ 0", operator_reverse)
        .nu(Some(NU_YOUNG), None)
        .refined(),
    CaseSpec::new(
        "operator_reverse_neg",
        Family::Operator,
        "refined reverse Young for operators, ν ≤ −1",
        operator_reverse,
    )
    .nu(None, Some(NU_YOUNG_NEG))
    .refined(),
    CaseSpec::new("operator_square", Family::Operator, "squared reverse Young for operators, ν ≥ 0", operator_square)
        .nu(Some(NU_YOUNG), None)
        .refined(),
    CaseSpec::new(
        "operator_square_neg",
        Family::Operator,
        "squared reverse Young for operators, ν ≤ −1",
        operator_square,
    )
    .nu(None, Some(NU_YOUNG_NEG))
    .refined(),
    CaseSpec::new("harm_operator", Family::Operator, "refined reverse arithmetic-harmonic for A ≤ B", harm_operator)
        .nu(Some(NU_YOUNG), None)
        .refined(),
    CaseSpec::new(
        "kantorovich_operator",
        Family::Operator,
        "Kantorovich bound between A#₋ᵥB and A!₋ᵥB",
        kantorovich_operator,
    )
    .nu(Some(NU_YOUNG), None),
    CaseSpec::new("trace_additive", Family::Trace, "refined affine bound on tr(A^{1−s}Bˢ)", trace_additive)
        .nu(Some(NU_YOUNG), None)
        .refined(),
    CaseSpec::new("trace_multiplicative", Family::Trace, "product refinement on tr(A^{1−s}Bˢ)", trace_multiplicative)
        .nu(Some(NU_YOUNG), None)
        .refined(),
    CaseSpec::new("trace_depth_one", Family::Trace, "depth-one trace bounds and tr ≤ trace norm", trace_depth_one)
        .nu(Some(NU_YOUNG), None),
    CaseSpec::new("norm_reverse", Family::Norm, "product refinement of ‖A^{1−s}XBˢ‖, ν ≥ 0", norm_reverse)
        .nu(Some(NU_NORM), None)
        .refined(),
    CaseSpec::new("norm_reverse_neg", Family::Norm, "product refinement of ‖A^{1−s}XBˢ‖, ν ≤ −1", norm_reverse)
        .nu(None, Some(NU_NORM_NEG))
        .refined(),
    CaseSpec::new("norm_heinz", Family::Norm, "product refinement of ‖A^{1−s}XB^{1−s}‖", norm_heinz)
        .nu(Some(NU_NORM), Some(NU_NORM_NEG))
        .refined(),
    CaseSpec::new("norm_depth_one", Family::Norm, "depth-one norm chains", norm_depth_one).nu(Some(NU_NORM), None),
    CaseSpec::new(
        "combined_norm",
        Family::Norm,
        "reverse Young in norms followed by the product refinement",
        combined_norm,
    )
    .nu(Some(NU_NORM), None)
    .refined(),
    CaseSpec::new("norm_log_convexity", Family::Norm, "midpoint log-convexity of s ↦ ‖A^{1−s}XBˢ‖", norm_log_convexity),
    CaseSpec::new("heinz_convexity", Family::Heinz, "midpoint convexity of the Heinz norm on [−3,4]", heinz_convexity),
    CaseSpec::new("heinz_monotone", Family::Heinz, "Heinz norm monotone on each side of ½", heinz_monotone),
    CaseSpec::new("heinz_reverse", Family::Heinz, "refined reverse Heinz inequality", heinz_reverse)
        .nu(Some(NU_NORM), None)
        .refined(),
    CaseSpec::new(
        "heinz_reverse_outside",
        Family::Heinz,
        "‖AX+XB‖ ≤ Heinz norm for ν outside [0,1]",
        heinz_reverse_outside,
    ),
    CaseSpec::new("heinz_pq", Family::Heinz, "‖A^{p−q}X+XB^{p−q}‖ ≤ ‖AᵖXB^{−q}+A^{−q}XBᵖ‖", heinz_pq),
    CaseSpec::new("heinz_interpolated", Family::Heinz, "interpolated p, q bound at random r", heinz_interp),
    CaseSpec::new(
        "heinz_interpolated_grid",
        Family::Heinz,
        "interpolated p, q bound nonincreasing in r",
        heinz_interp_grid,
    ),
];

/// Every registered case, in a fixed order.
pub fn registry() -> &'static [CaseSpec] {
    &REGISTRY
}

pub fn find_case(name: &str) -> Result<&'static CaseSpec> {
    REGISTRY.iter().find(|c| c.name == name).ok_or_else(|| Error::UnknownCase(name.to_string()))
}
