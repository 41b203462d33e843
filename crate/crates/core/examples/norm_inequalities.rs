//! Unitarily invariant norms and the log-convexity chains of `s ↦ ‖A^{1−s}XBˢ‖`.

use convex_means::linalg::random::{random_complex, random_spd_with, rng_from_seed};
use convex_means::uinorms::{
    combined_norm_chain, norm_heinz_chain, norm_reverse_chain, singular_values, ui_norm, NormKind,
};

fn main() -> convex_means::Result<()> {
    let mut rng = rng_from_seed(11);
    let a = random_spd_with(&mut rng, 4, 50.0);
    let b = random_spd_with(&mut rng, 4, 50.0);
    let x = random_complex(&mut rng, 4);
    println!("singular values of X: {:?}", singular_values(&x)?.values());
    for kind in NormKind::SAMPLE {
        println!("{kind:<12} ‖X‖ = {:.6}", ui_norm(&x, kind)?);
    }
    let kind: NormKind = "schatten:4".parse()?;
    for nu in [0.5, 1.5, -2.0] {
        println!("reverse ν = {nu}: {:?}", norm_reverse_chain(&a, &b, &x, nu, 5, kind)?.values());
        println!("heinz   ν = {nu}: {:?}", norm_heinz_chain(&a, &b, &x, nu, 5, kind)?.values());
    }
    let c = combined_norm_chain(&a, &b, &x, 1.0, 5, NormKind::Spectral)?;
    for (l, v) in c.labels().iter().zip(c.values()) {
        println!("{l:<16} {v:.6}");
    }
    Ok(())
}
