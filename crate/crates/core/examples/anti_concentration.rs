//! The most likely count when drawing half of n balls, half of them red,
//! has probability Θ(1/√n).

use secretary_rank::analysis::{anti_concentration_scan, write_scan_csv};

fn main() -> secretary_rank::Result<()> {
    let sizes = [100, 1_000, 10_000, 100_000, 1_000_000];
    for (rho_r, rho_t) in [(0.5, 0.5), (0.25, 0.25)] {
        println!("r = {rho_r} n, t = {rho_t} n");
        write_scan_csv(std::io::stdout().lock(), &anti_concentration_scan(&sizes, rho_r, rho_t)?)?;
        println!();
    }
    Ok(())
}
