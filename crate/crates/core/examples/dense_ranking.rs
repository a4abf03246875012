//! Place one random stream with the dense ranker and show how the cost splits
//! into estimation and assignment error.

use secretary_rank::instance::{derive_rng, generate_instance, ArrivalMode, SeedSpec};
use secretary_rank::metrics::{count_inversions, footrule};
use secretary_rank::rankers::{run_online, DenseRanker};

fn main() -> secretary_rank::Result<()> {
    let n = 2000;
    let inst = generate_instance(n, n as u64, ArrivalMode::UniformRandom, SeedSpec::new(7, 0))?;
    let mut ranker = DenseRanker::new(n, derive_rng(SeedSpec::new(7, 1)));
    let out = run_online(&mut ranker, &inst)?;

    let (mut est, mut assign) = (0, 0);
    for (&rank, step) in inst.arrivals().iter().zip(ranker.trace()) {
        est += (rank as u64).abs_diff(step.erank);
        assign += step.erank.abs_diff(step.position);
    }
    let k = count_inversions(&out.placement);
    let f = footrule(&out.placement)?;
    let scale = (n as f64).powf(1.5);
    println!("n = {n}, comparisons = {}", out.queries);
    println!("inversions K = {k} ({:.3} n^1.5)", k as f64 / scale);
    println!("footrule   F = {f} (K <= F <= 2K: {})", k <= f && f <= 2 * k);
    println!("estimation = {est}, assignment = {assign}, F <= sum: {}", f <= est + assign);

    println!("\nfirst steps:");
    for s in &ranker.trace()[..8] {
        println!("t={:>2} r={:>2} x={:>8.2} erank={:>4} pi={:>4}", s.t, s.r, s.x, s.erank, s.position);
    }
    Ok(())
}
