//! The Kantorovich constant between the negative-weight geometric and harmonic means.

use convex_means::linalg::random::{random_spd_with, rng_from_seed};
use convex_means::linalg::SpdMatrix;
use convex_means::matrix_means::{
    kantorovich_hypothesis, kantorovich_literal_product, kantorovich_operator_check, KANTOROVICH_HYPOTHESIS_READING,
};
use convex_means::scalar::{kantorovich, kantorovich_bound};

fn main() -> convex_means::Result<()> {
    for t in [0.25, 1.0, 4.0, 100.0] {
        println!("K({t}) = {:.6}", kantorovich(t)?);
    }
    println!("scalar chain x = 1, y = 3, ν = 2: {:?}", kantorovich_bound(1.0, 3.0, 2.0)?.values());

    let mut rng = rng_from_seed(21);
    let a = random_spd_with(&mut rng, 4, 20.0);
    let c = random_spd_with(&mut rng, 4, 20.0);
    let b = SpdMatrix::new(a.as_hermitian().add(&c.as_hermitian().scale(0.3))?)?;
    println!("hypothesis ({KANTOROVICH_HYPOTHESIS_READING}): λ_min = {:.4}", kantorovich_hypothesis(&a, &b)?);
    let chain = kantorovich_operator_check(&a, &b, 1.5)?;
    println!("operator chain holds: {}", chain.holds(1e-8)?);
    let literal = kantorovich_literal_product(&a, &b, 1.5)?;
    let diff = literal.try_sub(chain.matrices()[1].as_matrix())?.max_abs();
    println!("literal product vs symmetric form: {diff:.2e}");
    Ok(())
}
