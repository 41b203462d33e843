//! Weighted means of two positive numbers and the inequality chains built on
//! them. Powers `x^p y^q` are evaluated through logarithms of the ratio
//! `y/x`, so equal arguments give exactly equal results and large weights do
//! not overflow intermediate powers.

use super::{check_depth, pow2, ScalarChain, Weight, WeightDomain};
use crate::error::{Error, Result};

fn check_positive(x: f64, y: f64) -> Result<()> {
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!("means need positive finite arguments (x = {x}, y = {y})")));
    }
    Ok(())
}

/// `x∇_ν y = (1−ν)x + νy`.
pub fn s_arith(x: f64, y: f64, nu: f64) -> f64 {
    x + nu * (y - x)
}

/// `x#_ν y = x^{1−ν} y^ν`.
pub fn s_geom(x: f64, y: f64, nu: f64) -> Result<f64> {
    check_positive(x, y)?;
    Ok(geom_unchecked(x, y, nu))
}

#[inline]
fn geom_unchecked(x: f64, y: f64, nu: f64) -> f64 {
    x * (nu * (y / x).ln()).exp()
}

/// `x!_ν y = ((1−ν)x^{−1} + νy^{−1})^{−1}`; fails when the bracket is not positive.
pub fn s_harm(x: f64, y: f64, nu: f64) -> Result<f64> {
    check_positive(x, y)?;
    let denom = 1.0 + nu * (x / y - 1.0);
    if !(denom > 0.0) {
        return Err(Error::domain(format!("harmonic mean x!_ν y undefined: (1−ν)/x + ν/y ≤ 0 at ν = {nu}")));
    }
    Ok(x / denom)
}

/// `x^{1/2^j}` style dyadic term: `(1 − e^{u})²` with `u = ln(r)/2^j`.
#[inline]
fn dyadic_square(ln_ratio: f64, j: u32) -> f64 {
    (ln_ratio / pow2(j)).exp_m1().powi(2)
}

/// Reverse Young inequality with dyadic refinement.
///
/// * `ν ≥ 0`: `(1+ν)x − νy + Σ_{j=1}^{N} 2^{j−1}ν(√x − (x^{2^{j−1}−1}y)^{1/2^j})² ≤ x^{1+ν}y^{−ν}`
/// * `ν ≤ −1`: `(1+ν)x − νy − Σ_{j=1}^{N} 2^{j−1}(1+ν)(√y − (xy^{2^{j−1}−1})^{1/2^j})² ≤ x^{1+ν}y^{−ν}`
///
/// Chain: `[(1+ν)x − νy, refined, x^{1+ν}y^{−ν}]`.
pub fn young_reverse_chain(x: f64, y: f64, w: Weight, depth: u32) -> Result<ScalarChain> {
    check_positive(x, y)?;
    check_depth(depth)?;
    let nu = w.value();
    let ln_r = (y / x).ln();
    let base = x + nu * (x - y);
    let correction: f64 = match w.domain() {
        WeightDomain::NonNegative => (1..=depth).map(|j| pow2(j - 1) * nu * x * dyadic_square(ln_r, j)).sum(),
        WeightDomain::AtMostMinusOne => {
            -(1..=depth).map(|j| pow2(j - 1) * (1.0 + nu) * y * dyadic_square(-ln_r, j)).sum::<f64>()
        }
    };
    let target = x * (-nu * ln_r).exp();
    ScalarChain::new(vec!["affine", "refined", "power"], vec![base, base + correction, target])
}

/// Squared reverse Young inequality.
///
/// * `ν ≥ 0`: `((1+ν)x − νy)² + Σ 2^jν(x − (x^{2^j−1}y)^{1/2^j})² ≤ (x^{1+ν}y^{−ν})² + ν²(x−y)²`
/// * `ν ≤ −1`: `((1+ν)x − νy)² − Σ 2^j(1+ν)(y − (xy^{2^j−1})^{1/2^j})² ≤ (x^{1+ν}y^{−ν})² + (1+ν)²(x−y)²`
pub fn young_square_chain(x: f64, y: f64, w: Weight, depth: u32) -> Result<ScalarChain> {
    check_positive(x, y)?;
    check_depth(depth)?;
    let nu = w.value();
    let ln_r = (y / x).ln();
    let base = (x + nu * (x - y)).powi(2);
    let power = (x * (-nu * ln_r).exp()).powi(2);
    let (correction, target) = match w.domain() {
        WeightDomain::NonNegative => {
            let c: f64 = (1..=depth).map(|j| pow2(j) * nu * x * x * dyadic_square(ln_r, j)).sum();
            (c, power + nu * nu * (x - y).powi(2))
        }
        WeightDomain::AtMostMinusOne => {
            let c: f64 = -(1..=depth).map(|j| pow2(j) * (1.0 + nu) * y * y * dyadic_square(-ln_r, j)).sum::<f64>();
            (c, power + (1.0 + nu).powi(2) * (x - y).powi(2))
        }
    };
    ScalarChain::new(vec!["affine_squared", "refined", "power_squared_plus"], vec![base, base + correction, target])
}

/// Refined Young inequality for `0 < t ≤ 1`:
///
/// `x^t y^{1−t}[1 + (1−t)Σ_{j=2}^{N} 2^{j−1}(1 − (x^{−t}y^t)^{1/2^j})²] + (1−t)y(1 − √(x^t y^{−t}))² ≤ tx + (1−t)y`
///
/// Chain: `[x^t y^{1−t}, refined, tx + (1−t)y]`. `N = 1` leaves the inner sum empty.
pub fn young_refined_t(x: f64, y: f64, t: f64, depth: u32) -> Result<ScalarChain> {
    check_positive(x, y)?;
    check_depth(depth)?;
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::domain(format!("t = {t} must lie in (0, 1]")));
    }
    let ln_xy = (x / y).ln();
    let geo = y * (t * ln_xy).exp();
    let inner: f64 = (2..=depth).map(|j| pow2(j - 1) * dyadic_square(-t * ln_xy, j)).sum();
    let refined = geo * (1.0 + (1.0 - t) * inner) + (1.0 - t) * y * (0.5 * t * ln_xy).exp_m1().powi(2);
    let arith = y + t * (x - y);
    ScalarChain::new(vec!["geometric", "refined", "arithmetic"], vec![geo, refined, arith])
}

fn check_ordered(x: f64, y: f64) -> Result<()> {
    check_positive(x, y)?;
    if x > y {
        return Err(Error::domain(format!("harmonic reversals need x ≤ y (x = {x}, y = {y})")));
    }
    Ok(())
}

/// `f''(ν)` for `f(ν) = x!_ν y`: `2x(x−y)²y / (ν(x−y) + y)³`.
pub fn harmonic_weight_second_derivative(x: f64, y: f64, nu: f64) -> f64 {
    2.0 * x * (x - y).powi(2) * y / (nu * (x - y) + y).powi(3)
}

/// Values of the refined reverse arithmetic–harmonic chain without the
/// ordering precondition (used for spectral transfer, where `x ≤ y` holds only
/// up to rounding).
pub(crate) fn harm_reverse_values(x: f64, y: f64, nu: f64, depth: u32) -> Result<[f64; 3]> {
    let base = s_arith(x, y, -nu);
    let mut correction = 0.0;
    for j in 1..=depth {
        let outer = s_harm(x, y, 1.0 / pow2(j - 1))?;
        let inner = s_harm(x, y, 1.0 / pow2(j))?;
        correction += pow2(j) * nu * (0.5 * (x + outer) - inner);
    }
    Ok([base, base + correction, s_harm(x, y, -nu)?])
}

/// Refined reverse arithmetic–harmonic inequality for `0 < x ≤ y`, `ν ≥ 0`:
///
/// `x∇_{−ν}y + Σ_{j=1}^{N} 2^jν(x∇(x!_{2^{1−j}}y) − x!_{2^{−j}}y) ≤ x!_{−ν}y`.
pub fn harm_reverse_chain(x: f64, y: f64, nu: f64, depth: u32) -> Result<ScalarChain> {
    check_ordered(x, y)?;
    check_depth(depth)?;
    Weight::non_negative(nu)?;
    let v = harm_reverse_values(x, y, nu, depth)?;
    ScalarChain::new(vec!["arith_neg", "refined", "harm_neg"], v.to_vec())
}

fn harm_geom_values(x: f64, y: f64, nu: f64, depth: u32) -> Result<[f64; 3]> {
    check_positive(x, y)?;
    let ln_base = x.ln() - nu * (y / x).ln();
    let mut ln_factor = 0.0;
    for j in 1..=depth {
        let outer = s_harm(x, y, 1.0 / pow2(j - 1))?;
        let inner = s_harm(x, y, 1.0 / pow2(j))?;
        ln_factor += pow2(j) * nu * (0.5 * (x.ln() + outer.ln()) - inner.ln());
    }
    Ok([ln_base.exp(), (ln_base + ln_factor).exp(), s_harm(x, y, -nu)?])
}

/// Refined reverse geometric–harmonic inequality for `0 < x ≤ y`, `ν ≥ 0`:
///
/// `x#_{−ν}y ≤ x#_{−ν}y · Π_j (√(x · x!_{2^{1−j}}y) / x!_{2^{−j}}y)^{2^jν} ≤ x!_{−ν}y`.
pub fn harm_geom_chain(x: f64, y: f64, nu: f64, depth: u32) -> Result<ScalarChain> {
    check_ordered(x, y)?;
    check_depth(depth)?;
    Weight::non_negative(nu)?;
    let v = harm_geom_values(x, y, nu, depth)?;
    ScalarChain::new(vec!["geom_neg", "product_refined", "harm_neg"], v.to_vec())
}

/// `K(t) = (t+1)²/(4t)`.
pub fn kantorovich(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("Kantorovich constant needs t > 0 (t = {t})")));
    }
    Ok((t + 1.0).powi(2) / (4.0 * t))
}

pub(crate) fn kantorovich_values(x: f64, y: f64, nu: f64) -> Result<[f64; 3]> {
    check_positive(x, y)?;
    let geom = geom_unchecked(x, y, -nu);
    let k = kantorovich(y / x)?;
    Ok([geom, geom * (nu * k.ln()).exp(), s_harm(x, y, -nu)?])
}

/// `x#_{−ν}y ≤ (x#_{−ν}y)·K(y/x)^ν ≤ x!_{−ν}y` for `0 < x ≤ y`, `ν ≥ 0`.
pub fn kantorovich_bound(x: f64, y: f64, nu: f64) -> Result<ScalarChain> {
    check_ordered(x, y)?;
    Weight::non_negative(nu)?;
    let v = kantorovich_values(x, y, nu)?;
    ScalarChain::new(vec!["geom_neg", "kantorovich", "harm_neg"], v.to_vec())
}
