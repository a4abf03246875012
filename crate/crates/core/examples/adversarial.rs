//! Min/max arrivals reveal an extreme element at every step, which defeats
//! rank estimation: the dense ranker's cost becomes quadratic.

use secretary_rank::harness::{run_experiment, ExperimentConfig};
use secretary_rank::instance::{generate_instance, ArrivalMode, SeedSpec};
use secretary_rank::rankers::AlgorithmId;

fn main() -> secretary_rank::Result<()> {
    let inst = generate_instance(12, 12, ArrivalMode::AdversarialMinMax, SeedSpec::new(1, 0))?;
    println!("min/max arrival order: {:?}", inst.arrivals());

    let sizes = vec![256, 512, 1024, 2048];
    for mode in [ArrivalMode::UniformRandom, ArrivalMode::AdversarialMinMax] {
        let cfg = ExperimentConfig::new(AlgorithmId::Dense, sizes.clone(), 50, 2).with_arrival_mode(mode);
        let report = run_experiment(&cfg)?;
        let last = report.groups.last().unwrap();
        println!(
            "{:>20}: slope {:.3}, mean K at n = {} is {:.0} ({:.3} n^2)",
            mode.as_str(),
            report.slope.as_ref().unwrap().slope,
            last.n,
            last.inversions.mean,
            last.inversions.mean / (last.n as f64).powi(2)
        );
    }
    Ok(())
}
