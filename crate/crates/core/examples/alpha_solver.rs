//! Height selection for the general ranker.

use secretary_rank::analysis::{alpha_zero, f_alpha, g_alpha, solve_alpha};
use secretary_rank::rankers::solve_general_height;

fn main() -> secretary_rank::Result<()> {
    println!("alpha0 = {:.9}", alpha_zero());
    let n = 1024usize;
    let floor = (10.0 * n as f64 * (n as f64).ln()).ceil() as u64;
    for m in [floor, 100_000, 1_000_000, 1u64 << 30, 10_000_000_000, 1u64 << 50] {
        let alpha = solve_alpha(n, m)?;
        let p = solve_general_height(n, m)?;
        let lhs = m as f64 / (9.0 * n as f64 * (n as f64).ln());
        let rhs = (n as f64).powf(f_alpha(alpha)?);
        println!(
            "m = {m:>16}: alpha = {alpha:>12.6}, g = {:.5}, h = {:>2}, w = {:>8}, residual {:.1e}",
            g_alpha(alpha)?,
            p.height,
            p.leaf_width,
            (lhs / rhs - 1.0).abs()
        );
    }
    Ok(())
}
