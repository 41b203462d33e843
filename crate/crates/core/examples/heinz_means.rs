//! The Heinz norm `f(ν) = ‖AᵛXB^{1−ν} + A^{1−ν}XBᵛ‖`: symmetry, convexity,
//! monotonicity and the reverse inequalities.

use convex_means::linalg::random::{random_complex, random_spd_with, rng_from_seed};
use convex_means::uinorms::{
    heinz_interpolated_grid, heinz_norm, heinz_pq_check, heinz_reverse_chain, heinz_shape_checks, NormKind,
};

fn main() -> convex_means::Result<()> {
    let mut rng = rng_from_seed(5);
    let a = random_spd_with(&mut rng, 4, 100.0);
    let b = random_spd_with(&mut rng, 4, 100.0);
    let x = random_complex(&mut rng, 4);
    let kind = NormKind::TraceNorm;

    for nu in [-1.0, 0.0, 0.25, 0.5, 0.75, 1.0, 2.0] {
        println!("f({nu:>5}) = {:.6}", heinz_norm(&a, &b, &x, nu, kind)?);
    }
    let report = heinz_shape_checks(&a, &b, &x, kind, &mut rng, 500, 1e-8)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));

    println!("reverse chain: {:?}", heinz_reverse_chain(&a, &b, &x, 1.0, 4, kind)?.values());
    println!("p = 2, q = 1: {:?}", heinz_pq_check(&a, &b, &x, 2.0, 1.0, kind)?.values());
    for (r, v) in heinz_interpolated_grid(&a, &b, &x, 2.0, 1.0, 5, kind)? {
        println!("r = {r:.2}: {v:.6}");
    }
    Ok(())
}
