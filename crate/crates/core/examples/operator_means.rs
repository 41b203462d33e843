//! Weighted operator means and the refined reverse Young chains.

use convex_means::linalg::random::{random_spd_with, rng_from_seed};
use convex_means::linalg::SpdMatrix;
use convex_means::matrix_means::{
    harm_operator_chain, m_arith, m_geom, m_harm, operator_reverse_chain, operator_reverse_composed,
    operator_square_chain,
};

fn main() -> convex_means::Result<()> {
    let a = SpdMatrix::from_real_diagonal(&[1.0, 4.0])?;
    let b = SpdMatrix::from_real_diagonal(&[9.0, 16.0])?;
    println!("A ∇½ B = {:?}", m_arith(&a, &b, 0.5)?.as_matrix());
    println!("A #½ B = {:?}", m_geom(&a, &b, 0.5)?.as_matrix());
    println!("A !½ B = {:?}", m_harm(&a, &b, 0.5)?.as_matrix());

    let mut rng = rng_from_seed(3);
    let a = random_spd_with(&mut rng, 5, 100.0);
    let b = random_spd_with(&mut rng, 5, 100.0);
    for nu in [0.5, 2.0, -2.0] {
        let chain = operator_reverse_chain(&a, &b, nu, 6)?;
        let composed = operator_reverse_composed(&a, &b, nu, 6)?;
        let witnesses: Vec<f64> = chain.verify(1e-8)?.iter().map(|v| v.witness_eigenvalue).collect();
        println!("reverse Young ν = {nu}: link witnesses {witnesses:?}");
        println!("  spectral vs composed route: {:.2e}", chain.max_distance(&composed)?);
    }
    let sq = operator_square_chain(&a, &b, 1.5, 4)?;
    println!("squared chain holds: {}", sq.holds(1e-8)?);

    // The harmonic chain needs A ≤ B.
    let c = random_spd_with(&mut rng, 5, 10.0);
    let above = SpdMatrix::new(a.as_hermitian().add(c.as_hermitian())?)?;
    println!("harmonic chain holds: {}", harm_operator_chain(&a, &above, 1.0, 4)?.holds(1e-8)?);
    println!("harmonic chain with B ≱ A: {:?}", harm_operator_chain(&above, &a, 1.0, 4).err().map(|e| e.to_string()));
    Ok(())
}
