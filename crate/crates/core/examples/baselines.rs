//! Dense against the uniform-random placement and the noiseless estimate.

use secretary_rank::harness::{run_experiment, ExperimentConfig};
use secretary_rank::rankers::AlgorithmId;

fn main() -> secretary_rank::Result<()> {
    let sizes = vec![128, 256, 512, 1024, 2048];
    for algo in [AlgorithmId::Dense, AlgorithmId::Noiseless, AlgorithmId::Random] {
        let report = run_experiment(&ExperimentConfig::new(algo, sizes.clone(), 100, 11))?;
        print!("{algo:>10}:");
        for g in &report.groups {
            print!(" {:>10.0}", g.inversions.mean);
        }
        println!("   slope {:.3}", report.slope.as_ref().map_or(f64::NAN, |s| s.slope));
    }
    println!("(random expectation n(n-1)/4 at 2048: {})", 2048 * 2047 / 4);
    Ok(())
}
