use super::{check_depth, finite, pow2, RealFunction, ScalarChain, Weight, WeightDomain};
use crate::error::{Error, Result};

/// Value at `x` of the line through `(a, f(a))` and `(b, f(b))`.
pub fn line_through(f: &impl RealFunction, a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::domain(format!("line endpoints must satisfy a < b (a = {a}, b = {b})")));
    }
    if x == a {
        return finite(f(a), "f(a)");
    }
    if x == b {
        return finite(f(b), "f(b)");
    }
    let fa = finite(f(a), "f(a)")?;
    let fb = finite(f(b), "f(b)")?;
    Ok(((b - x) * fa + (x - a) * fb) / (b - a))
}

/// The three quantities behind a dyadic refinement of the affine bound
/// `(1+ν)f(a) − νf(b) ≤ f((1+ν)a − νb)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedBound {
    pub weight: Weight,
    /// `(1+ν)f(a) − νf(b)`
    pub affine: f64,
    /// Signed sum of the dyadic midpoint gaps added to `affine`.
    pub correction: f64,
    /// `f((1+ν)a − νb)`
    pub target: f64,
}

impl RefinedBound {
    pub fn refined(&self) -> f64 {
        self.affine + self.correction
    }
}

/// Midpoint gaps `(g(anchor) + g(p_{j−1}))/2 − g(p_j)` for `j = 1..=depth`,
/// where `p_0 = far` and `p_j = anchor + (far − anchor)/2^j`.
fn dyadic_gaps(g: &impl Fn(f64) -> Result<f64>, anchor: f64, far: f64, depth: u32) -> Result<Vec<f64>> {
    let g_anchor = g(anchor)?;
    let mut prev = g(far)?;
    let mut gaps = Vec::with_capacity(depth as usize);
    for j in 1..=depth {
        let p = anchor + (far - anchor) / pow2(j);
        let cur = g(p)?;
        gaps.push(0.5 * (g_anchor + prev) - cur);
        prev = cur;
    }
    Ok(gaps)
}

fn checked(f: &impl RealFunction) -> impl Fn(f64) -> Result<f64> + '_ {
    move |t| {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("function value at t = {t}")))
        }
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("interval must satisfy a < b (a = {a}, b = {b})")));
    }
    Ok(())
}

/// `(1+ν)a − νb`.
#[inline]
fn extrapolated(a: f64, b: f64, nu: f64) -> f64 {
    a - nu * (b - a)
}

/// Core of the refinement near `a`: correction `Σ 2^j ν · gap_j`.
fn dyadic_parts(g: &impl Fn(f64) -> Result<f64>, a: f64, b: f64, w: Weight, depth: u32) -> Result<RefinedBound> {
    check_interval(a, b)?;
    check_depth(depth)?;
    let nu = w.value();
    let affine = (1.0 + nu) * g(a)? - nu * g(b)?;
    let gaps = dyadic_gaps(g, a, b, depth)?;
    let correction = gaps.iter().enumerate().map(|(i, gap)| pow2(i as u32 + 1) * nu * gap).sum();
    let target = g(extrapolated(a, b, nu))?;
    Ok(RefinedBound { weight: w, affine, correction, target })
}

/// Core of the refinement near `b`: correction `−Σ 2^j (1+ν) · gap_j`.
fn reflected_parts(g: &impl Fn(f64) -> Result<f64>, a: f64, b: f64, w: Weight, depth: u32) -> Result<RefinedBound> {
    check_interval(a, b)?;
    check_depth(depth)?;
    let nu = w.value();
    let affine = (1.0 + nu) * g(a)? - nu * g(b)?;
    let gaps = dyadic_gaps(g, b, a, depth)?;
    let correction = -gaps.iter().enumerate().map(|(i, gap)| pow2(i as u32 + 1) * (1.0 + nu) * gap).sum::<f64>();
    let target = g(extrapolated(a, b, nu))?;
    Ok(RefinedBound { weight: w, affine, correction, target })
}

/// Orders `[affine, refined]` so that the chain is ascending: the refined
/// value exceeds the affine bound when `improves` holds, otherwise it lies below.
fn three_chain(affine: f64, refined: f64, target: f64, improves: bool) -> Result<ScalarChain> {
    if improves {
        ScalarChain::new(vec!["affine_bound", "refined_bound", "target"], vec![affine, refined, target])
    } else {
        ScalarChain::new(vec!["refined_bound", "affine_bound", "target"], vec![refined, affine, target])
    }
}

impl RefinedBound {
    /// Refinement of the affine bound anchored at `a`.
    pub fn near_a(f: &impl RealFunction, a: f64, b: f64, w: Weight, depth: u32) -> Result<Self> {
        dyadic_parts(&checked(f), a, b, w, depth)
    }

    /// Refinement of the affine bound anchored at `b`.
    pub fn near_b(f: &impl RealFunction, a: f64, b: f64, w: Weight, depth: u32) -> Result<Self> {
        reflected_parts(&checked(f), a, b, w, depth)
    }
}

/// For convex `f`, `a < b`, `ν ≥ 0` or `ν ≤ −1`:
///
/// `(1+ν)f(a) − νf(b) + Σ_{j=1}^{N} 2^j ν [(f(a) + f(p_{j−1}))/2 − f(p_j)] ≤ f((1+ν)a − νb)`
///
/// with `p_j = ((2^j − 1)a + b)/2^j`. For `ν ≥ 0` the correction is
/// nonnegative and the chain is `[affine, refined, target]`; for `ν ≤ −1` it is
/// nonpositive and the chain is `[refined, affine, target]`.
pub fn refined_lower(f: &impl RealFunction, a: f64, b: f64, w: Weight, depth: u32) -> Result<ScalarChain> {
    let p = RefinedBound::near_a(f, a, b, w, depth)?;
    three_chain(p.affine, p.refined(), p.target, w.domain() == WeightDomain::NonNegative)
}

/// Companion refinement anchored at `b`:
///
/// `(1+ν)f(a) − νf(b) − Σ_{j=1}^{N} 2^j (1+ν) [(f(b) + f(q_{j−1}))/2 − f(q_j)] ≤ f((1+ν)a − νb)`
///
/// with `q_j = ((2^j − 1)b + a)/2^j`. Improves on the affine bound for `ν ≤ −1`.
pub fn refined_lower_reflected(f: &impl RealFunction, a: f64, b: f64, w: Weight, depth: u32) -> Result<ScalarChain> {
    let p = RefinedBound::near_b(f, a, b, w, depth)?;
    three_chain(p.affine, p.refined(), p.target, w.domain() == WeightDomain::AtMostMinusOne)
}

fn log_of(f: &impl RealFunction) -> impl Fn(f64) -> Result<f64> + '_ {
    move |t| {
        let v = f(t);
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::domain(format!("log-convex function must be positive and finite, got f({t}) = {v}")));
        }
        Ok(v.ln())
    }
}

fn log_chain(p: RefinedBound, target: f64) -> Result<ScalarChain> {
    ScalarChain::new(
        vec!["power_bound", "product_refined", "target"],
        vec![p.affine.exp(), (p.affine + p.correction).exp(), target],
    )
}

/// For positive log-convex `f` and `ν ≥ 0`:
///
/// `f^{1+ν}(a) f^{−ν}(b) ≤ f^{1+ν}(a) f^{−ν}(b) Π_j (√(f(a) f(p_{j−1})) / f(p_j))^{2^j ν} ≤ f((1+ν)a − νb)`.
///
/// Products are accumulated as sums of logarithms.
pub fn logconvex_chain(f: &impl RealFunction, a: f64, b: f64, w: Weight, depth: u32) -> Result<ScalarChain> {
    if w.domain() != WeightDomain::NonNegative {
        return Err(Error::domain("log-convex refinement anchored at a requires ν ≥ 0"));
    }
    let p = dyadic_parts(&log_of(f), a, b, w, depth)?;
    log_chain(p, finite(f(extrapolated(a, b, w.value())), "f at extrapolated point")?)
}

/// Mirror of [`logconvex_chain`] for `ν ≤ −1`, with factors
/// `(√(f(b) f(q_{j−1})) / f(q_j))^{−2^j(1+ν)}`.
pub fn logconvex_chain_reflected(f: &impl RealFunction, a: f64, b: f64, w: Weight, depth: u32) -> Result<ScalarChain> {
    if w.domain() != WeightDomain::AtMostMinusOne {
        return Err(Error::domain("log-convex refinement anchored at b requires ν ≤ −1"));
    }
    let p = reflected_parts(&log_of(f), a, b, w, depth)?;
    log_chain(p, finite(f(extrapolated(a, b, w.value())), "f at extrapolated point")?)
}

/// Fixed catalog of convex test functions on ℝ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvexFn {
    Square,
    Exp,
    AbsCube,
    PositivePartSquared,
    /// `−ln(t + shift)`, convex on `(−shift, ∞)`; choose `shift` so every
    /// evaluation point stays inside.
    NegLogShifted {
        shift: f64,
    },
}

impl ConvexFn {
    pub const FIXED: [ConvexFn; 4] =
        [ConvexFn::Square, ConvexFn::Exp, ConvexFn::AbsCube, ConvexFn::PositivePartSquared];

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            ConvexFn::Square => t * t,
            ConvexFn::Exp => t.exp(),
            ConvexFn::AbsCube => t.abs().powi(3),
            ConvexFn::PositivePartSquared => t.max(0.0).powi(2),
            ConvexFn::NegLogShifted { shift } => -(t + shift).ln(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ConvexFn::Square => "t^2",
            ConvexFn::Exp => "exp(t)",
            ConvexFn::AbsCube => "|t|^3",
            ConvexFn::PositivePartSquared => "max(t,0)^2",
            ConvexFn::NegLogShifted { .. } => "-ln(t+s)",
        }
    }

    /// `−ln(t + s)` with `s` placing `lowest` one unit inside the domain.
    pub fn neg_log_above(lowest: f64) -> Self {
        ConvexFn::NegLogShifted { shift: 1.0 - lowest }
    }
}

/// Fixed catalog of positive log-convex test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogConvexFn {
    /// `e^t` (log-affine: every refinement factor is 1)
    Exp,
    /// `e^{t²/16}`
    WideGaussian,
    Cosh,
    /// `1 + e^t`
    OnePlusExp,
}

impl LogConvexFn {
    pub const ALL: [LogConvexFn; 4] =
        [LogConvexFn::Exp, LogConvexFn::WideGaussian, LogConvexFn::Cosh, LogConvexFn::OnePlusExp];

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            LogConvexFn::Exp => t.exp(),
            LogConvexFn::WideGaussian => (t * t / 16.0).exp(),
            LogConvexFn::Cosh => t.cosh(),
            LogConvexFn::OnePlusExp => 1.0 + t.exp(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LogConvexFn::Exp => "exp(t)",
            LogConvexFn::WideGaussian => "exp(t^2/16)",
            LogConvexFn::Cosh => "cosh(t)",
            LogConvexFn::OnePlusExp => "1+exp(t)",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq(t: f64) -> f64 {
        t * t
    }

    /// Literal evaluation of the displayed sums with the points written as
    /// `((2^{j−1} − 1)a + b)/2^{j−1}`.
    fn oracle_forward(f: impl Fn(f64) -> f64, a: f64, b: f64, nu: f64, n: u32) -> (f64, f64, f64) {
        let affine = (1.0 + nu) * f(a) - nu * f(b);
        let mut s = 0.0;
        for j in 1..=n {
            let pj1 = 2f64.powi(j as i32 - 1);
            let pj = 2f64.powi(j as i32);
            s += pj * nu * ((f(a) + f(((pj1 - 1.0) * a + b) / pj1)) / 2.0 - f(((pj - 1.0) * a + b) / pj));
        }
        (affine, affine + s, f((1.0 + nu) * a - nu * b))
    }

    fn oracle_reflected(f: impl Fn(f64) -> f64, a: f64, b: f64, nu: f64, n: u32) -> (f64, f64, f64) {
        let affine = (1.0 + nu) * f(a) - nu * f(b);
        let mut s = 0.0;
        for j in 1..=n {
            let pj1 = 2f64.powi(j as i32 - 1);
            let pj = 2f64.powi(j as i32);
            s += pj * (1.0 + nu) * ((f(b) + f(((pj1 - 1.0) * b + a) / pj1)) / 2.0 - f(((pj - 1.0) * b + a) / pj));
        }
        (affine, affine - s, f((1.0 + nu) * a - nu * b))
    }

    #[test]
    fn line_through_examples() {
        let f = |t: f64| t.exp();
        assert_eq!(line_through(&f, -1.0, 2.0, -1.0).unwrap(), (-1f64).exp());
        assert_eq!(line_through(&sq, 0.0, 1.0, 2.0).unwrap(), 2.0);
        let mid = line_through(&sq, 0.0, 1.0, 0.5).unwrap();
        assert_eq!(mid, 0.5);
        assert!(mid >= sq(0.5));
        assert!(line_through(&sq, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn forward_nu_zero_collapses() {
        let c = refined_lower(&|t: f64| t.exp(), -1.0, 3.0, Weight::new(0.0).unwrap(), 5).unwrap();
        assert_eq!(c.values(), &[(-1f64).exp(); 3]);
    }

    #[test]
    fn forward_square_by_hand() {
        let c = refined_lower(&sq, 0.0, 1.0, Weight::new(1.0).unwrap(), 1).unwrap();
        assert_eq!(c.values(), &[-1.0, -0.5, 1.0]);
        assert_eq!(c.labels(), &["affine_bound", "refined_bound", "target"]);
    }

    #[test]
    fn reflected_square_by_hand() {
        // (1+ν)f(0) − νf(1) = 2; j = 1 gap = (f(1)+f(0))/2 − f(1/2) = 1/4;
        // refined = 2 − 2·(1+ν)·1/4 = 5/2; target f(2) = 4.
        let c = refined_lower_reflected(&sq, 0.0, 1.0, Weight::new(-2.0).unwrap(), 1).unwrap();
        assert_eq!(c.values(), &[2.0, 2.5, 4.0]);
    }

    #[test]
    fn reflected_minus_one_collapses() {
        let c = refined_lower_reflected(&|t: f64| t.exp(), 0.0, 1.0, Weight::new(-1.0).unwrap(), 4).unwrap();
        assert_eq!(c.get("affine_bound"), c.get("refined_bound"));
    }

    #[test]
    fn linear_function_is_degenerate() {
        let f = |t: f64| 3.0 * t - 2.0;
        for nu in [0.5, 3.0, -1.5, -4.0] {
            for chain in [
                refined_lower(&f, -2.0, 5.0, Weight::new(nu).unwrap(), 6).unwrap(),
                refined_lower_reflected(&f, -2.0, 5.0, Weight::new(nu).unwrap(), 6).unwrap(),
            ] {
                let s = chain.scale();
                for v in chain.values() {
                    assert!((v - chain.last()).abs() <= 1e-12 * s);
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(refined_lower(&sq, 1.0, 0.0, Weight::new(1.0).unwrap(), 1).is_err());
        assert!(refined_lower(&sq, 0.0, 1.0, Weight::new(1.0).unwrap(), 0).is_err());
        assert!(refined_lower(&sq, 0.0, 1.0, Weight::new(1.0).unwrap(), 33).is_err());
        assert!(logconvex_chain(&|t: f64| t, 0.0, 1.0, Weight::new(1.0).unwrap(), 1).is_err());
        assert!(logconvex_chain(&|t: f64| t.exp(), 0.0, 1.0, Weight::new(-2.0).unwrap(), 1).is_err());
        assert!(logconvex_chain_reflected(&|t: f64| t.exp(), 0.0, 1.0, Weight::new(2.0).unwrap(), 1).is_err());
    }

    #[test]
    fn logconvex_examples() {
        let g = |t: f64| (t * t).exp();
        let c = logconvex_chain(&g, 0.0, 1.0, Weight::new(0.0).unwrap(), 3).unwrap();
        assert!(c.values().iter().all(|&v| v == 1.0));

        let e = |t: f64| t.exp();
        let c = logconvex_chain(&e, -0.5, 2.0, Weight::new(2.5).unwrap(), 6).unwrap();
        assert!((c.values()[0] - c.values()[1]).abs() <= 1e-14 * c.scale());
        assert!((c.values()[0] - c.last()).abs() <= 1e-13 * c.scale());

        // exponents: −1, −1 + 2(1/2 − 1/4) = −1/2, target e^{(−1)²} = e
        let c = logconvex_chain(&g, 0.0, 1.0, Weight::new(1.0).unwrap(), 1).unwrap();
        let expected = [(-1f64).exp(), (-0.5f64).exp(), 1f64.exp()];
        for (v, e) in c.values().iter().zip(expected) {
            assert!((v - e).abs() < 1e-15 * e.max(1.0));
        }
    }

    #[test]
    fn logconvex_reflected_examples() {
        let g = |t: f64| (t * t).exp();
        let c = logconvex_chain_reflected(&g, 0.0, 1.0, Weight::new(-1.0).unwrap(), 3).unwrap();
        assert_eq!(c.values()[0], c.values()[1]);
        // exponents: 2·1 − 0 = 2, 2 + 2·(1/2 − 1/4) = 5/2, target e^{4}
        let c = logconvex_chain_reflected(&g, 0.0, 1.0, Weight::new(-2.0).unwrap(), 1).unwrap();
        let expected = [2f64.exp(), 2.5f64.exp(), 4f64.exp()];
        for (v, e) in c.values().iter().zip(expected) {
            assert!((v - e).abs() < 1e-14 * e);
        }
    }

    #[test]
    fn reflected_is_forward_for_mirrored_function() {
        // h(t) = f(−t) on [−b, −a] with weight μ = −1 − ν reproduces the bound near b.
        for f in ConvexFn::FIXED {
            for &(a, b, nu, n) in &[(-1.0, 2.0, -3.0, 4), (0.5, 1.5, 2.0, 3), (-4.0, -1.0, -1.0, 8)] {
                let direct = RefinedBound::near_b(&|t| f.eval(t), a, b, Weight::new(nu).unwrap(), n).unwrap();
                let mirror = RefinedBound::near_a(&|t| f.eval(-t), -b, -a, Weight::new(-1.0 - nu).unwrap(), n).unwrap();
                let s = direct.target.abs().max(1.0);
                assert!((direct.refined() - mirror.refined()).abs() <= 1e-12 * s);
                assert!((direct.target - mirror.target).abs() <= 1e-12 * s);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn matches_literal_oracle(
            a in -5.0f64..5.0, width in 0.01f64..10.0, nu in prop_oneof![0.0f64..8.0, -9.0f64..-1.0], n in 1u32..=8,
            k in 0usize..4,
        ) {
            let f = ConvexFn::FIXED[k];
            let b = a + width;
            let w = Weight::new(nu).unwrap();
            let p = RefinedBound::near_a(&|t| f.eval(t), a, b, w, n).unwrap();
            let (l, r, t) = oracle_forward(|t| f.eval(t), a, b, nu, n);
            let s = 1f64.max(l.abs()).max(r.abs()).max(t.abs());
            prop_assert!((p.affine - l).abs() <= 1e-12 * s);
            prop_assert!((p.refined() - r).abs() <= 1e-11 * s);
            prop_assert!((p.target - t).abs() <= 1e-12 * s);

            let q = RefinedBound::near_b(&|t| f.eval(t), a, b, w, n).unwrap();
            let (l, r, t) = oracle_reflected(|t| f.eval(t), a, b, nu, n);
            let s = 1f64.max(l.abs()).max(r.abs()).max(t.abs());
            prop_assert!((q.refined() - r).abs() <= 1e-11 * s);
            prop_assert!((q.target - t).abs() <= 1e-12 * s);
        }

        #[test]
        fn chains_ascend(
            a in -5.0f64..5.0, width in 0.01f64..10.0, nu in prop_oneof![0.0f64..8.0, -9.0f64..-1.0], n in 1u32..=8,
            k in 0usize..4,
        ) {
            let f = ConvexFn::FIXED[k];
            let w = Weight::new(nu).unwrap();
            for c in [
                refined_lower(&|t| f.eval(t), a, a + width, w, n).unwrap(),
                refined_lower_reflected(&|t| f.eval(t), a, a + width, w, n).unwrap(),
            ] {
                let s = c.scale();
                for pair in c.values().windows(2) {
                    prop_assert!(pair[1] - pair[0] >= -1e-9 * s);
                }
            }
        }

        #[test]
        fn refinement_monotone_in_depth(a in -5.0f64..5.0, width in 0.01f64..10.0, nu in 0.0f64..8.0, k in 0usize..4) {
            let f = ConvexFn::FIXED[k];
            let w = Weight::new(nu).unwrap();
            let mut prev = f64::NEG_INFINITY;
            for n in 1..=8 {
                let p = RefinedBound::near_a(&|t| f.eval(t), a, a + width, w, n).unwrap();
                let s = p.target.abs().max(p.affine.abs()).max(1.0);
                prop_assert!(p.refined() >= prev - 1e-12 * s);
                prev = p.refined();
            }
        }
    }
}
