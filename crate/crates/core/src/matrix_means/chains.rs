use super::{geom_hermitian, hermitian_product, m_arith, m_harm, OperatorChain, SpectralTransfer};
use crate::error::{Error, Result};
use crate::linalg::{loewner_leq, ComplexMatrix, HermitianMatrix, SpdMatrix};
use crate::scalar::{
    check_depth, harm_reverse_values, kantorovich_values, pow2, young_reverse_chain, Weight, WeightDomain,
};

/// How the positivity hypothesis on `B⁻¹A + A⁻¹B` is read: the product is
/// not Hermitian in general, so its Hermitian part is required to be PSD.
pub const KANTOROVICH_HYPOTHESIS_READING: &str = "hermitian_part_psd";

/// Relative tolerance for the `A ≤ B` precondition.
const ORDER_TOL: f64 = 1e-12;

fn require_ordered(a: &SpdMatrix, b: &SpdMatrix) -> Result<()> {
    let v = loewner_leq(a.as_hermitian(), b.as_hermitian(), ORDER_TOL)?;
    if !v.holds {
        return Err(Error::Hypothesis(format!("A ≤ B fails: λ_min(B − A) = {:e}", v.witness_eigenvalue)));
    }
    Ok(())
}

/// Refined reverse Young inequality in operator form.
///
/// * `ν ≥ 0`: `A∇₋ᵥB ≤ A∇₋ᵥB + Σ 2^{j−1}ν(A − 2A#_{2^{−j}}B + A#_{2^{1−j}}B) ≤ A#₋ᵥB`
/// * `ν ≤ −1`: `A∇₋ᵥB ≤ A∇₋ᵥB − Σ 2^{j−1}(1+ν)(B − 2A#_{1−2^{−j}}B + A#_{1−2^{1−j}}B) ≤ A#₋ᵥB`
pub fn operator_reverse_chain(a: &SpdMatrix, b: &SpdMatrix, nu: f64, depth: u32) -> Result<OperatorChain> {
    let w = Weight::new(nu)?;
    check_depth(depth)?;
    SpectralTransfer::new(a, b)?.apply_chain(vec!["arith_neg", "refined", "geom_neg"], |y| {
        Ok(young_reverse_chain(1.0, y, w, depth)?.values().to_vec())
    })
}

/// The chain of [`operator_reverse_chain`] assembled from mean operations.
pub fn operator_reverse_composed(a: &SpdMatrix, b: &SpdMatrix, nu: f64, depth: u32) -> Result<OperatorChain> {
    let w = Weight::new(nu)?;
    check_depth(depth)?;
    let base = m_arith(a, b, -nu)?;
    let mut terms = vec![(1.0, &base)];
    let mut owned = Vec::new();
    for j in 1..=depth {
        let (coef, anchor, near, far) = match w.domain() {
            WeightDomain::NonNegative => (pow2(j - 1) * nu, a, 1.0 / pow2(j), 1.0 / pow2(j - 1)),
            WeightDomain::AtMostMinusOne => {
                (-pow2(j - 1) * (1.0 + nu), b, 1.0 - 1.0 / pow2(j), 1.0 - 1.0 / pow2(j - 1))
            }
        };
        let near = geom_hermitian(a, b, near)?;
        let far = geom_hermitian(a, b, far)?;
        owned.push((coef, anchor.as_hermitian().clone()));
        owned.push((-2.0 * coef, near));
        owned.push((coef, far));
    }
    terms.extend(owned.iter().map(|(c, m)| (*c, m)));
    let refined = HermitianMatrix::linear_combination(&terms)?;
    let target = geom_hermitian(a, b, -nu)?;
    OperatorChain::new(vec!["arith_neg", "refined", "geom_neg"], vec![base, refined, target])
}

/// The squared reverse Young inequality at `x = 1`, shifted so that every
/// term is affine in `y` or a power of `y`.
fn square_values(y: f64, w: Weight, depth: u32) -> Vec<f64> {
    let nu = w.value();
    let ln_y = y.ln();
    let power = (-2.0 * nu * ln_y).exp();
    match w.domain() {
        WeightDomain::NonNegative => {
            let base = (1.0 + nu) * (1.0 + nu - nu * y);
            let corr: f64 = (1..=depth).map(|j| pow2(j) * nu * (ln_y / pow2(j)).exp_m1().powi(2)).sum();
            vec![base, base + corr, power + nu * nu * (1.0 - y) + nu * y]
        }
        WeightDomain::AtMostMinusOne => {
            let base = 2.0 * (1.0 + nu) * y;
            let corr: f64 =
                -(1..=depth).map(|j| pow2(j) * (1.0 + nu) * y * y * (-ln_y / pow2(j)).exp_m1().powi(2)).sum::<f64>();
            vec![base, base + corr, power + (1.0 + 2.0 * nu) * y * y]
        }
    }
}

/// Operator form of the squared reverse Young inequality.
///
/// * `ν ≥ 0`: `(1+ν)(A∇₋ᵥB) + Σ 2ʲν(A + A#_{2^{1−j}}B − 2A#_{2^{−j}}B) ≤ A#₋₂ᵥB + ν²(A−B) + νB`
/// * `ν ≤ −1`: `2(1+ν)B − Σ 2ʲ(1+ν)(BA⁻¹B + A#_{2−2^{1−j}}B − 2A#_{2−2^{−j}}B) ≤ A#₋₂ᵥB + (1+2ν)BA⁻¹B`
///
/// The chain starts with the left side without its sum.
pub fn operator_square_chain(a: &SpdMatrix, b: &SpdMatrix, nu: f64, depth: u32) -> Result<OperatorChain> {
    let w = Weight::new(nu)?;
    check_depth(depth)?;
    SpectralTransfer::new(a, b)?.apply_chain(vec!["base", "refined", "target"], |y| Ok(square_values(y, w, depth)))
}

/// The chain of [`operator_square_chain`] assembled from mean operations.
pub fn operator_square_composed(a: &SpdMatrix, b: &SpdMatrix, nu: f64, depth: u32) -> Result<OperatorChain> {
    let w = Weight::new(nu)?;
    check_depth(depth)?;
    let geom2 = geom_hermitian(a, b, -2.0 * nu)?;
    let (base, anchor, shift, coef_of, target) = match w.domain() {
        WeightDomain::NonNegative => {
            let base = m_arith(a, b, -nu)?.scale(1.0 + nu);
            let target = HermitianMatrix::linear_combination(&[
                (1.0, &geom2),
                (nu * nu, a.as_hermitian()),
                (nu - nu * nu, b.as_hermitian()),
            ])?;
            (base, a.as_hermitian().clone(), 0.0, -nu, target)
        }
        WeightDomain::AtMostMinusOne => {
            let bab = hermitian_product(&[b.as_matrix(), a.inverse().as_matrix(), b.as_matrix()])?;
            let base = b.as_hermitian().scale(2.0 * (1.0 + nu));
            let target = HermitianMatrix::linear_combination(&[(1.0, &geom2), (1.0 + 2.0 * nu, &bab)])?;
            (base, bab, 1.0, 1.0 + nu, target)
        }
    };
    // Σ_j c_j (anchor + A#_{s+2^{1−j}}B − 2A#_{s+2^{−j}}B) with c_j = −2ʲ·coef_of and s = shift.
    let mut acc = base.clone();
    for j in 1..=depth {
        let c = -pow2(j) * coef_of;
        let far = geom_hermitian(a, b, 2.0 * shift + (1.0 - 2.0 * shift) / pow2(j - 1))?;
        let near = geom_hermitian(a, b, 2.0 * shift + (1.0 - 2.0 * shift) / pow2(j))?;
        acc = HermitianMatrix::linear_combination(&[(1.0, &acc), (c, &anchor), (c, &far), (-2.0 * c, &near)])?;
    }
    OperatorChain::new(vec!["base", "refined", "target"], vec![base, acc, target])
}

/// `A∇₋ᵥB ≤ A∇₋ᵥB + Σ 2ʲν(A∇(A!_{2^{1−j}}B) − A!_{2^{−j}}B) ≤ A!₋ᵥB` for `A ≤ B`, `ν ≥ 0`.
pub fn harm_operator_chain(a: &SpdMatrix, b: &SpdMatrix, nu: f64, depth: u32) -> Result<OperatorChain> {
    Weight::non_negative(nu)?;
    check_depth(depth)?;
    require_ordered(a, b)?;
    SpectralTransfer::new(a, b)?
        .apply_chain(vec!["arith_neg", "refined", "harm_neg"], |y| Ok(harm_reverse_values(1.0, y, nu, depth)?.to_vec()))
}

/// The chain of [`harm_operator_chain`] assembled from mean operations.
pub fn harm_operator_composed(a: &SpdMatrix, b: &SpdMatrix, nu: f64, depth: u32) -> Result<OperatorChain> {
    Weight::non_negative(nu)?;
    check_depth(depth)?;
    require_ordered(a, b)?;
    let base = m_arith(a, b, -nu)?;
    let mut acc = base.clone();
    for j in 1..=depth {
        let c = pow2(j) * nu;
        let outer = m_harm(a, b, 1.0 / pow2(j - 1))?;
        let inner = m_harm(a, b, 1.0 / pow2(j))?;
        let mid = m_arith(a, &outer, 0.5)?;
        acc = HermitianMatrix::linear_combination(&[(1.0, &acc), (c, &mid), (-c, inner.as_hermitian())])?;
    }
    let target = m_harm(a, b, -nu)?.as_hermitian().clone();
    OperatorChain::new(vec!["arith_neg", "refined", "harm_neg"], vec![base, acc, target])
}

/// Smallest eigenvalue of the Hermitian part of `B⁻¹A + A⁻¹B`.
pub fn kantorovich_hypothesis(a: &SpdMatrix, b: &SpdMatrix) -> Result<f64> {
    let m =
        b.inverse().as_matrix().try_mul(a.as_matrix())?.try_add(&a.inverse().as_matrix().try_mul(b.as_matrix())?)?;
    Ok(HermitianMatrix::hermitian_part(&m).eigh()?.min())
}

/// `A#₋ᵥB ≤ A^{1/2} X^{−ν} K(X)^ν A^{1/2} ≤ A!₋ᵥB` with `X = A^{−1/2}BA^{−1/2}` and
/// `K(t) = (t+1)²/(4t)`. The middle term equals `(A#₋ᵥB)((B⁻¹A + 2I + A⁻¹B)/4)^ν`
/// (see [`kantorovich_literal_product`]).
///
/// Requires `A ≤ B`, `ν ≥ 0`, and the hypothesis read as
/// [`KANTOROVICH_HYPOTHESIS_READING`]; an unmet hypothesis is
/// [`Error::Hypothesis`].
pub fn kantorovich_operator_check(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<OperatorChain> {
    Weight::non_negative(nu)?;
    require_ordered(a, b)?;
    let witness = kantorovich_hypothesis(a, b)?;
    let scale = 1f64.max(a.condition_number()).max(b.condition_number());
    if witness < -ORDER_TOL * scale {
        return Err(Error::Hypothesis(format!("Hermitian part of B⁻¹A + A⁻¹B has eigenvalue {witness:e}")));
    }
    SpectralTransfer::new(a, b)?
        .apply_chain(vec!["geom_neg", "kantorovich", "harm_neg"], |y| Ok(kantorovich_values(1.0, y, nu)?.to_vec()))
}

/// `(A#₋ᵥB)·M^ν/4^ν` with `M^ν = A^{−1/2}(X⁻¹ + X + 2I)^ν A^{1/2}`, the
/// similarity form of `(B⁻¹A + A⁻¹B + 2I)^ν`. Not symmetrized.
pub fn kantorovich_literal_product(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<ComplexMatrix> {
    let a_neg_half = a.pow(-0.5);
    let x = b.as_hermitian().congruence(a_neg_half.as_matrix())?.eigh()?;
    let inner = x.map(|y| ((1.0 / y + y + 2.0) / 4.0).powf(nu))?;
    let m_nu = a_neg_half.as_matrix().try_mul(inner.as_matrix())?.try_mul(a.sqrt().as_matrix())?;
    geom_hermitian(a, b, -nu)?.as_matrix().try_mul(&m_nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_spd_with, rng_from_seed, InstanceRng};
    use crate::scalar::{harm_reverse_chain, kantorovich_bound, young_square_chain};
    use proptest::prelude::*;

    const TOL: f64 = 1e-8;

    fn diag(d: &[f64]) -> SpdMatrix {
        SpdMatrix::from_real_diagonal(d).unwrap()
    }

    fn pair(rng: &mut InstanceRng, n: usize) -> (SpdMatrix, SpdMatrix) {
        (random_spd_with(rng, n, 100.0), random_spd_with(rng, n, 100.0))
    }

    fn ordered_pair(rng: &mut InstanceRng, n: usize) -> (SpdMatrix, SpdMatrix) {
        let a = random_spd_with(rng, n, 100.0);
        let c = random_spd_with(rng, n, 100.0);
        let b = SpdMatrix::new(a.as_hermitian().add(c.as_hermitian()).unwrap()).unwrap();
        (a, b)
    }

    fn diagonal_entries(c: &OperatorChain) -> Vec<Vec<f64>> {
        c.matrices().iter().map(|m| (0..m.dim()).map(|i| m.as_matrix().get(i, i).re).collect()).collect()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn collapses_when_equal_or_zero_weight() {
        let mut rng = rng_from_seed(1);
        let (a, b) = ordered_pair(&mut rng, 3);
        for c in [
            operator_reverse_chain(&a, &a, 2.0, 3).unwrap(),
            operator_reverse_chain(&a, &a, -2.0, 3).unwrap(),
            operator_reverse_chain(&a, &b, 0.0, 3).unwrap(),
            operator_square_chain(&a, &a, 1.5, 3).unwrap(),
            operator_square_chain(&a, &b, 0.0, 3).unwrap(),
            harm_operator_chain(&a, &a, 1.0, 3).unwrap(),
            harm_operator_chain(&a, &b, 0.0, 3).unwrap(),
            kantorovich_operator_check(&a, &a, 2.0).unwrap(),
            kantorovich_operator_check(&a, &b, 0.0).unwrap(),
        ] {
            let first = c.matrices()[0].as_matrix();
            assert!(c.matrices().iter().all(|m| m.as_matrix().try_sub(first).unwrap().max_abs() <= 1e-10 * c.scale()));
        }
        // The squared chain collapses to (1+ν)A, its other chains to A.
        let c = operator_square_chain(&a, &a, 1.5, 3).unwrap();
        assert!(c.matrices()[0].as_matrix().try_sub(&a.as_matrix().scale(2.5)).unwrap().max_abs() <= 1e-10 * c.scale());
        let c = operator_reverse_chain(&a, &a, 2.0, 3).unwrap();
        assert!(c.matrices()[2].as_matrix().try_sub(a.as_matrix()).unwrap().max_abs() <= 1e-10 * c.scale());
    }

    #[test]
    fn commuting_reverse_matches_scalar() {
        let (a, b) = ([1.0, 2.0, 0.5], [3.0, 1.0, 4.0]);
        for &(nu, n) in &[(1.0, 1), (0.3, 5), (-1.0, 2), (-2.5, 4)] {
            let c = operator_reverse_chain(&diag(&a), &diag(&b), nu, n).unwrap();
            let d = diagonal_entries(&c);
            for i in 0..3 {
                let s = young_reverse_chain(a[i], b[i], Weight::new(nu).unwrap(), n).unwrap();
                for k in 0..3 {
                    assert!(close(d[k][i], s.values()[k]), "ν = {nu} entry {i} position {k}");
                }
            }
        }
    }

    #[test]
    fn commuting_square_matches_scalar() {
        let (a, b) = ([1.0, 2.0, 0.5], [3.0, 1.0, 4.0]);
        for &(nu, n) in &[(1.0, 1), (0.7, 4), (-1.0, 1), (-1.8, 3)] {
            let c = operator_square_chain(&diag(&a), &diag(&b), nu, n).unwrap();
            let d = diagonal_entries(&c);
            for i in 0..3 {
                let (x, y) = (a[i], b[i]);
                let s = young_square_chain(x, y, Weight::new(nu).unwrap(), n).unwrap();
                let expected: Vec<f64> = s
                    .values()
                    .iter()
                    .map(|v| {
                        if nu >= 0.0 {
                            (v - nu * nu * (x - y).powi(2)) / x + nu * nu * (x - y) + nu * y
                        } else {
                            (v - (1.0 + nu).powi(2) * (x - y).powi(2)) / x + (1.0 + 2.0 * nu) * y * y / x
                        }
                    })
                    .collect();
                // The squared chain's first entry has no linear counterpart; compare refined and target.
                for k in 1..3 {
                    assert!(
                        close(d[k][i], expected[k]),
                        "ν = {nu} entry {i} position {k}: {} vs {}",
                        d[k][i],
                        expected[k]
                    );
                }
            }
        }
    }

    #[test]
    fn commuting_harmonic_matches_scalar() {
        let (a, b) = ([1.0, 0.5, 2.0], [2.0, 3.0, 2.0]);
        for &(nu, n) in &[(1.0, 1), (2.0, 4)] {
            let c = harm_operator_chain(&diag(&a), &diag(&b), nu, n).unwrap();
            let k = kantorovich_operator_check(&diag(&a), &diag(&b), nu).unwrap();
            let (d, dk) = (diagonal_entries(&c), diagonal_entries(&k));
            for i in 0..3 {
                let s = harm_reverse_chain(a[i], b[i], nu, n).unwrap();
                let sk = kantorovich_bound(a[i], b[i], nu).unwrap();
                for p in 0..3 {
                    assert!(close(d[p][i], s.values()[p]));
                    assert!(close(dk[p][i], sk.values()[p]));
                }
            }
        }
    }

    #[test]
    fn depth_one_reverse_collapse() {
        let mut rng = rng_from_seed(12);
        for n in 2..=5 {
            let (a, b) = pair(&mut rng, n);
            let nu = 1.7;
            let c = operator_reverse_chain(&a, &b, nu, 1).unwrap();
            let arith = m_arith(&a, &b, 0.5).unwrap();
            let geom = super::super::m_geom(&a, &b, 0.5).unwrap();
            let expected = HermitianMatrix::linear_combination(&[
                (1.0, &m_arith(&a, &b, -nu).unwrap()),
                (2.0 * nu, &arith),
                (-2.0 * nu, geom.as_hermitian()),
            ])
            .unwrap();
            let err = c.matrices()[1].as_matrix().try_sub(expected.as_matrix()).unwrap().max_abs();
            assert!(err <= 1e-10 * c.scale());
        }
    }

    #[test]
    fn harmonic_requires_order() {
        let (a, b) = (diag(&[2.0, 1.0]), diag(&[1.0, 3.0]));
        assert!(matches!(harm_operator_chain(&a, &b, 1.0, 1), Err(Error::Hypothesis(_))));
        assert!(matches!(kantorovich_operator_check(&a, &b, 1.0), Err(Error::Hypothesis(_))));
        assert!(harm_operator_chain(&a, &b, -1.0, 1).is_err());
    }

    #[test]
    fn kantorovich_literal_equals_symmetric_form() {
        let mut rng = rng_from_seed(30);
        let mut checked = 0;
        for _ in 0..40 {
            let (a, b) = ordered_pair(&mut rng, 3);
            let Ok(c) = kantorovich_operator_check(&a, &b, 1.3) else { continue };
            let lit = kantorovich_literal_product(&a, &b, 1.3).unwrap();
            let err = lit.try_sub(c.matrices()[1].as_matrix()).unwrap().max_abs();
            assert!(err <= 1e-9 * c.scale());
            checked += 1;
        }
        assert!(checked > 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn random_chains_hold_and_routes_agree(
            seed in 0u64..1_000_000, n in 2usize..=8,
            nu_pos in 0.0f64..4.0, nu_neg in -5.0f64..-1.0, depth in 1u32..=6,
        ) {
            let mut rng = rng_from_seed(seed);
            let (a, b) = pair(&mut rng, n);
            for nu in [nu_pos, nu_neg] {
                let t = operator_reverse_chain(&a, &b, nu, depth).unwrap();
                prop_assert!(t.holds(TOL).unwrap());
                let d = operator_reverse_composed(&a, &b, nu, depth).unwrap();
                prop_assert!(t.max_distance(&d).unwrap() <= 1e-8 * t.scale());

                let t = operator_square_chain(&a, &b, nu, depth).unwrap();
                prop_assert!(t.holds(TOL).unwrap());
                let d = operator_square_composed(&a, &b, nu, depth).unwrap();
                prop_assert!(t.max_distance(&d).unwrap() <= 1e-8 * t.scale(), "{}", t.max_distance(&d).unwrap() / t.scale());
            }
            let (a, b) = ordered_pair(&mut rng, n);
            let t = harm_operator_chain(&a, &b, nu_pos, depth).unwrap();
            prop_assert!(t.holds(TOL).unwrap());
            let d = harm_operator_composed(&a, &b, nu_pos, depth).unwrap();
            prop_assert!(t.max_distance(&d).unwrap() <= 1e-8 * t.scale());
            match kantorovich_operator_check(&a, &b, nu_pos) {
                Ok(c) => prop_assert!(c.holds(TOL).unwrap()),
                Err(Error::Hypothesis(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
