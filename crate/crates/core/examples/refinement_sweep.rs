//! Sweeps the refinement depth and the weight of the reverse Young case.

use convex_means::harness::{depth_monotonicity, find_case, parse_grid, sweep, sweep_csv_string, SweepParam};

fn main() -> convex_means::Result<()> {
    let mut cfg = find_case("young_reverse")?.default_config();
    cfg.instances = 300;
    let rows = sweep(&cfg, SweepParam::Depth, &parse_grid("1:8:1")?)?;
    print!("{}", sweep_csv_string("N", &rows)?);
    let rows = sweep(&cfg, SweepParam::Nu, &parse_grid("0:4:0.5")?)?;
    print!("{}", sweep_csv_string("nu", &rows)?);

    let mut op = find_case("operator_reverse")?.default_config();
    op.instances = 50;
    let m = depth_monotonicity(&op, 1..=8, 1e-12)?;
    println!("operator_reverse: {} comparisons, worst increment {:.2e}", m.comparisons, m.worst_increment);
    Ok(())
}
