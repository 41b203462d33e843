//! Dyadic refinements of the affine bound for convex and log-convex functions.

use convex_means::scalar::{
    logconvex_chain, refined_lower, refined_lower_reflected, young_reverse_chain, ConvexFn, LogConvexFn, Weight,
};

fn main() -> convex_means::Result<()> {
    let (a, b) = (-1.0, 2.0);
    for nu in [0.5, 2.0, -3.0] {
        let w = Weight::new(nu)?;
        for f in ConvexFn::FIXED {
            let g = |t: f64| f.eval(t);
            let near_a = refined_lower(&g, a, b, w, 4)?;
            let near_b = refined_lower_reflected(&g, a, b, w, 4)?;
            println!("ν = {nu:>4} f = {:<11} near a {:?}", f.name(), near_a.values());
            println!("{:>22} near b {:?}", "", near_b.values());
        }
    }

    let f = LogConvexFn::Cosh;
    for depth in 1..=4 {
        let c = logconvex_chain(&|t| f.eval(t), a, b, Weight::new(1.5)?, depth)?;
        println!("cosh, N = {depth}: {:?}", c.values());
    }

    // Reverse Young: the refined bound climbs towards x^{1+ν}y^{−ν} as N grows.
    for depth in [1, 2, 4, 8] {
        let c = young_reverse_chain(4.0, 1.0, Weight::new(1.0)?, depth)?;
        println!("young N = {depth}: {:?}", c.values());
    }
    Ok(())
}
