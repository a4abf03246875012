//! Between the dense and sparse regimes: a shorter tree whose leaves are
//! blocks run by their own dense ranker. More room buys a taller tree and
//! fewer inversions.

use secretary_rank::harness::{run_experiment, ExperimentConfig, MRule};
use secretary_rank::rankers::{solve_general_height, AlgorithmId};

fn main() -> secretary_rank::Result<()> {
    let n = 512usize;
    let rules = [
        ("10 n ln n", MRule::NLogN { multiplier: 10.0 }),
        ("n^1.75", MRule::Power { beta: 1.75 }),
        ("n^2", MRule::Power { beta: 2.0 }),
        ("n^3", MRule::Power { beta: 3.0 }),
    ];
    println!("{:>10} {:>12} {:>8} {:>4} {:>10} {:>10} {:>9}", "m rule", "m", "alpha", "h", "leaf w", "mean K", "overflow");
    for (label, rule) in rules {
        let (m, _) = rule.resolve(n)?;
        let p = solve_general_height(n, m)?;
        let cfg = ExperimentConfig::new(AlgorithmId::General, vec![n], 100, 5).with_m_rule(rule);
        let g = &run_experiment(&cfg)?.groups[0];
        println!(
            "{label:>10} {m:>12} {:>8.3} {:>4} {:>10} {:>10.1} {:>9.2}",
            p.alpha, p.height, p.leaf_width, g.inversions.mean, g.overflows.mean
        );
    }
    Ok(())
}
