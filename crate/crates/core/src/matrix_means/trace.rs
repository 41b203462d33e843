use crate::error::{Error, Result};
use crate::linalg::{trace_of_product, SpdMatrix};
use crate::scalar::{logconvex_chain, refined_lower, ScalarChain, Weight};
use crate::uinorms::{ui_norm, NormKind};

/// `tr(A^{1−s} Bˢ)`, real and positive for positive definite `A`, `B`.
pub fn trace_power(a: &SpdMatrix, b: &SpdMatrix, s: f64) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(trace_of_product(a.pow(1.0 - s).as_matrix(), b.pow(s).as_matrix())?.re)
}

/// The trace inequalities for `ν ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceChains {
    /// `[tr((1+ν)A−νB), + Σ 2^{j−1}ν tr(A + A^{1−2^{1−j}}B^{2^{1−j}} − 2A^{1−2^{−j}}B^{2^{−j}}), tr(A^{1+ν}B^{−ν})]`
    pub additive: ScalarChain,
    /// `[tr^{1+ν}A tr^{−ν}B, product refinement, tr(A^{1+ν}B^{−ν})]`
    pub multiplicative: ScalarChain,
    /// `[tr((1+ν)A−νB) + ν(√trA − √trB)², tr((1+ν)A−νB) + ν tr(A+B−2√A√B), tr(A^{1+ν}B^{−ν}), tr|A^{1+ν}B^{−ν}|]`
    pub depth_one: ScalarChain,
}

pub fn trace_chain(a: &SpdMatrix, b: &SpdMatrix, nu: f64, depth: u32) -> Result<TraceChains> {
    let w = Weight::non_negative(nu)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let f = |s: f64| trace_power(a, b, s).unwrap_or(f64::NAN);
    let additive = refined_lower(&f, 0.0, 1.0, w, depth)?;
    let multiplicative = logconvex_chain(&f, 0.0, 1.0, w, depth)?;

    let (tr_a, tr_b) = (a.as_hermitian().trace(), b.as_hermitian().trace());
    let affine = (1.0 + nu) * tr_a - nu * tr_b;
    let root_cross = trace_of_product(a.sqrt().as_matrix(), b.sqrt().as_matrix())?.re;
    let product = a.pow(1.0 + nu).as_matrix().try_mul(b.pow(-nu).as_matrix())?;
    let depth_one = ScalarChain::new(
        vec!["trace_roots", "cross_roots", "trace_power", "trace_norm"],
        vec![
            affine + nu * (tr_a.sqrt() - tr_b.sqrt()).powi(2),
            affine + nu * (tr_a + tr_b - 2.0 * root_cross),
            product.trace().re,
            ui_norm(&product, NormKind::TraceNorm)?,
        ],
    )?;
    Ok(TraceChains { additive, multiplicative, depth_one })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_spd_with, rng_from_seed};

    fn diag(d: &[f64]) -> SpdMatrix {
        SpdMatrix::from_real_diagonal(d).unwrap()
    }

    #[test]
    fn diagonal_example_by_hand() {
        // A = diag(1,2), B = diag(3,1), ν = 1, N = 1.
        let t = trace_chain(&diag(&[1.0, 2.0]), &diag(&[3.0, 1.0]), 1.0, 1).unwrap();
        let refined = 2.0 + (1.0 + 3.0 - 2.0 * 3f64.sqrt()) + (2.0 + 1.0 - 2.0 * 2f64.sqrt());
        assert_eq!(t.additive.values()[0], 2.0);
        assert!((t.additive.values()[1] - refined).abs() < 1e-13);
        assert!((t.additive.values()[2] - 13.0 / 3.0).abs() < 1e-13);
        assert!((t.depth_one.values()[1] - refined).abs() < 1e-13);
        assert!((t.depth_one.values()[0] - (2.0 + (3f64.sqrt() - 2.0).powi(2))).abs() < 1e-13);
        // Multiplicative: 3²·4^{−1}·(√(3·4)/(√3 + √2))².
        let m = 9.0 / 4.0 * 12.0 / (3f64.sqrt() + 2f64.sqrt()).powi(2);
        assert!((t.multiplicative.values()[1] - m).abs() < 1e-12);
    }

    #[test]
    fn collapses() {
        let mut rng = rng_from_seed(2);
        let a = random_spd_with(&mut rng, 4, 50.0);
        let b = random_spd_with(&mut rng, 4, 50.0);
        let t = trace_chain(&a, &a, 2.0, 3).unwrap();
        let tr = a.as_hermitian().trace();
        for c in [&t.additive, &t.multiplicative, &t.depth_one] {
            assert!(c.values().iter().all(|v| (v - tr).abs() <= 1e-10 * tr));
        }
        let t = trace_chain(&a, &b, 0.0, 3).unwrap();
        for c in [&t.additive, &t.multiplicative] {
            assert!(c.values().iter().all(|v| (v - tr).abs() <= 1e-12 * tr));
        }
    }

    #[test]
    fn random_chains_ascend_and_refine_with_depth() {
        let mut rng = rng_from_seed(3);
        for trial in 0..50 {
            let n = 2 + trial % 6;
            let a = random_spd_with(&mut rng, n, 100.0);
            let b = random_spd_with(&mut rng, n, 100.0);
            let nu = 0.25 * (trial % 12) as f64;
            let mut prev = f64::NEG_INFINITY;
            for depth in 1..=6 {
                let t = trace_chain(&a, &b, nu, depth).unwrap();
                for c in [&t.additive, &t.multiplicative, &t.depth_one] {
                    let s = c.scale();
                    assert!(c.values().windows(2).all(|w| w[0] <= w[1] + 1e-9 * s), "{c:?}");
                }
                let mid = t.additive.values()[1];
                assert!(mid >= prev - 1e-12 * t.additive.scale());
                prev = mid;
            }
        }
    }
}
