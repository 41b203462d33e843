//! Trace chains built on the convexity of `s ↦ tr(A^{1−s}Bˢ)`.

use convex_means::linalg::random::{random_spd_with, rng_from_seed};
use convex_means::matrix_means::{trace_chain, trace_power};

fn main() -> convex_means::Result<()> {
    let mut rng = rng_from_seed(9);
    let a = random_spd_with(&mut rng, 6, 100.0);
    let b = random_spd_with(&mut rng, 6, 100.0);
    for s in [-1.0, 0.0, 0.5, 1.0, 2.0] {
        println!("tr(A^(1-s) B^s) at s = {s:>4}: {:.6}", trace_power(&a, &b, s)?);
    }
    for depth in [1, 4] {
        let t = trace_chain(&a, &b, 1.0, depth)?;
        println!("N = {depth} additive       {:?}", t.additive.values());
        println!("N = {depth} multiplicative {:?}", t.multiplicative.values());
    }
    let t = trace_chain(&a, &b, 1.0, 1)?;
    for (l, v) in t.depth_one.labels().iter().zip(t.depth_one.values()) {
        println!("{l:<12} {v:.6}");
    }
    Ok(())
}
