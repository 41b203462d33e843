use super::{sandwich, ui_norm, NormKind};
use crate::error::Result;
use crate::linalg::{ComplexMatrix, SpdMatrix};
use crate::scalar::{
    logconvex_chain, logconvex_chain_reflected, young_reverse_chain, ScalarChain, Weight, WeightDomain,
};

/// `‖A^{1−ν} X B^ν‖`.
pub fn norm_functional(a: &SpdMatrix, b: &SpdMatrix, x: &ComplexMatrix, nu: f64, kind: NormKind) -> Result<f64> {
    ui_norm(&sandwich(a, 1.0 - nu, x, b, nu)?, kind)
}

/// Wraps a fallible norm evaluation as a plain real function; errors surface
/// as NaN, which the chain constructors reject.
fn as_real_fn(g: impl Fn(f64) -> Result<f64>) -> impl Fn(f64) -> f64 {
    move |s| g(s).unwrap_or(f64::NAN)
}

fn log_convex_chain(f: &impl Fn(f64) -> f64, w: Weight, depth: u32) -> Result<ScalarChain> {
    match w.domain() {
        WeightDomain::NonNegative => logconvex_chain(f, 0.0, 1.0, w, depth),
        WeightDomain::AtMostMinusOne => logconvex_chain_reflected(f, 0.0, 1.0, w, depth),
    }
}

/// `‖AX‖^{1+ν}‖XB‖^{−ν} ≤ (product-refined) ≤ ‖A^{1+ν}XB^{−ν}‖`, from the
/// log-convexity of `s ↦ ‖A^{1−s}XB^s‖`. Both weight domains are supported.
pub fn norm_reverse_chain(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    nu: f64,
    depth: u32,
    kind: NormKind,
) -> Result<ScalarChain> {
    let w = Weight::new(nu)?;
    let kind = kind.validate()?;
    let f = as_real_fn(|s| norm_functional(a, b, x, s, kind));
    log_convex_chain(&f, w, depth)
}

/// `‖AXB‖^{1+ν}‖X‖^{−ν} ≤ (product-refined) ≤ ‖A^{1+ν}XB^{1+ν}‖`, from the
/// log-convexity of `s ↦ ‖A^{1−s}XB^{1−s}‖`.
pub fn norm_heinz_chain(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    nu: f64,
    depth: u32,
    kind: NormKind,
) -> Result<ScalarChain> {
    let w = Weight::new(nu)?;
    let kind = kind.validate()?;
    let g = as_real_fn(|s| ui_norm(&sandwich(a, 1.0 - s, x, b, 1.0 - s)?, kind));
    log_convex_chain(&g, w, depth)
}

/// Five ascending values for `ν ≥ 0`: the refined reverse Young bound in
/// `x = ‖AX‖`, `y = ‖XB‖`, the power `x^{1+ν}y^{−ν}`, its product refinement,
/// and `‖A^{1+ν}XB^{−ν}‖`.
pub fn combined_norm_chain(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &ComplexMatrix,
    nu: f64,
    depth: u32,
    kind: NormKind,
) -> Result<ScalarChain> {
    let w = Weight::non_negative(nu)?;
    let kind = kind.validate()?;
    let ax = norm_functional(a, b, x, 0.0, kind)?;
    let xb = norm_functional(a, b, x, 1.0, kind)?;
    let young = young_reverse_chain(ax, xb, w, depth)?;
    let norms = norm_reverse_chain(a, b, x, nu, depth, kind)?;
    ScalarChain::new(
        vec!["affine", "refined", "power", "product_refined", "target"],
        vec![young.values()[0], young.values()[1], norms.values()[0], norms.values()[1], norms.values()[2]],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_complex, random_spd_with, rng_from_seed};

    fn instance(seed: u64, n: usize) -> (SpdMatrix, SpdMatrix, ComplexMatrix) {
        let mut rng = rng_from_seed(seed);
        let a = random_spd_with(&mut rng, n, 30.0);
        let b = random_spd_with(&mut rng, n, 30.0);
        let x = random_complex(&mut rng, n);
        (a, b, x)
    }

    fn ascending(c: &ScalarChain, rel: f64) -> bool {
        let s = c.scale();
        c.values().windows(2).all(|w| w[0] <= w[1] + rel * s)
    }

    #[test]
    fn collapses() {
        let (a, b, x) = instance(1, 3);
        for kind in NormKind::SAMPLE {
            let c = norm_reverse_chain(&a, &b, &x, 0.0, 4, kind).unwrap();
            let s = c.scale();
            assert!(c.values().iter().all(|v| (v - c.first()).abs() <= 1e-12 * s));
            let i = SpdMatrix::identity(3);
            let nx = ui_norm(&x, kind).unwrap();
            for nu in [0.0, 1.5, -2.0] {
                for c in [
                    norm_reverse_chain(&i, &i, &x, nu, 3, kind).unwrap(),
                    norm_heinz_chain(&i, &i, &x, nu, 3, kind).unwrap(),
                ] {
                    assert!(c.values().iter().all(|v| (v - nx).abs() <= 1e-12 * nx));
                }
            }
            let c = combined_norm_chain(&i, &i, &x, 2.0, 3, kind).unwrap();
            assert!(c.values().iter().all(|v| (v - nx).abs() <= 1e-12 * nx));
        }
    }

    #[test]
    fn depth_one_forms() {
        for seed in 0..20 {
            let (a, b, x) = instance(seed, 2);
            for kind in NormKind::SAMPLE {
                let nu = 1.0;
                let n = |s: f64, t: f64| ui_norm(&sandwich(&a, s, &x, &b, t).unwrap(), kind).unwrap();
                let ax = n(1.0, 0.0);
                let mid = n(0.5, 0.5);
                let target = n(1.0 + nu, -nu);
                assert!(ax.powf(1.0 + 2.0 * nu) <= target * mid.powf(2.0 * nu) * (1.0 + 1e-10));
                let c = norm_reverse_chain(&a, &b, &x, nu, 1, kind).unwrap();
                // N = 1 product refinement collapses to ‖AX‖^{1+2ν}/‖√AX√B‖^{2ν}.
                assert!((c.values()[1] - ax.powf(1.0 + 2.0 * nu) / mid.powf(2.0 * nu)).abs() <= 1e-10 * c.scale());
                assert!((c.values()[2] - target).abs() <= 1e-12 * target);

                let axb = n(1.0, 1.0);
                let heinz_target = n(1.0 + nu, 1.0 + nu);
                assert!(axb.powf(1.0 + 2.0 * nu) <= heinz_target * mid.powf(2.0 * nu) * (1.0 + 1e-10));
                let c = norm_heinz_chain(&a, &b, &x, nu, 1, kind).unwrap();
                assert!((c.values()[1] - axb.powf(1.0 + 2.0 * nu) / mid.powf(2.0 * nu)).abs() <= 1e-10 * c.scale());
                assert!((c.values()[2] - heinz_target).abs() <= 1e-12 * heinz_target);
            }
        }
    }

    #[test]
    fn random_chains_ascend() {
        for seed in 0..40 {
            let n = 2 + (seed as usize % 4);
            let (a, b, x) = instance(100 + seed, n);
            for kind in NormKind::SAMPLE {
                for &(nu, depth) in &[(0.7, 1), (1.5, 4), (-1.0, 2), (-2.5, 5)] {
                    assert!(ascending(&norm_reverse_chain(&a, &b, &x, nu, depth, kind).unwrap(), 1e-8));
                    assert!(ascending(&norm_heinz_chain(&a, &b, &x, nu, depth, kind).unwrap(), 1e-8));
                }
                assert!(ascending(&combined_norm_chain(&a, &b, &x, 1.2, 3, kind).unwrap(), 1e-8));
            }
        }
    }

    #[test]
    fn log_convexity_of_functional() {
        let mut rng = rng_from_seed(77);
        use rand::Rng;
        for seed in 0..60 {
            let (a, b, x) = instance(500 + seed, 1 + seed as usize % 5);
            let kind = NormKind::SAMPLE[seed as usize % 5];
            let n1: f64 = rng.random_range(-2.0..3.0);
            let n2: f64 = rng.random_range(-2.0..3.0);
            let al: f64 = rng.random();
            let f = |s| norm_functional(&a, &b, &x, s, kind).unwrap();
            let lhs = f(al * n1 + (1.0 - al) * n2);
            let rhs = f(n1).powf(al) * f(n2).powf(1.0 - al);
            assert!(lhs <= rhs + 1e-9 * rhs.max(1.0));
        }
    }

    #[test]
    fn combined_rejects_negative_weight() {
        let (a, b, x) = instance(3, 2);
        assert!(combined_norm_chain(&a, &b, &x, -2.0, 1, NormKind::Spectral).is_err());
    }
}
