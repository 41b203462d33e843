//! Eigendecomposition, fractional powers and the Loewner order.

use convex_means::linalg::random::{random_hermitian, rng_from_seed};
use convex_means::linalg::{loewner_leq, random_spd, HermitianMatrix};

fn main() -> convex_means::Result<()> {
    let mut rng = rng_from_seed(1);
    let h = random_hermitian(&mut rng, 4, 1.0);
    let eig = h.eigh()?;
    let err = eig.reconstruct().as_matrix().try_sub(h.as_matrix())?.max_abs();
    println!("eigenvalues {:?}", eig.eigenvalues);
    println!("reconstruction error {err:.2e}");

    let a = random_spd(4, 100.0, 7);
    let root = a.sqrt();
    let sq = root.as_matrix().try_mul(root.as_matrix())?;
    println!("cond(A) = {:.3}", a.condition_number());
    println!("‖A^½·A^½ − A‖_max = {:.2e}", sq.try_sub(a.as_matrix())?.max_abs());

    // A ≤ A + I, but not the other way round.
    let shifted = a.as_hermitian().add(&HermitianMatrix::identity(4))?;
    println!("A ≤ A + I: {:?}", loewner_leq(a.as_hermitian(), &shifted, 1e-12)?);
    println!("A + I ≤ A: {:?}", loewner_leq(&shifted, a.as_hermitian(), 1e-12)?);
    Ok(())
}
