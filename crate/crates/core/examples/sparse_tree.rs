//! The sparse ranker places every element at its node in a complete binary
//! tree of positions. With enough height no element overflows and the
//! placement is perfectly sorted.

use secretary_rank::analysis::REED_ALPHA;
use secretary_rank::instance::{generate_instance, ArrivalMode, Instance, SeedSpec};
use secretary_rank::metrics::count_inversions;
use secretary_rank::rankers::{run_online, write_tree_trace, TreeLayout, TreeRanker};

fn main() -> secretary_rank::Result<()> {
    let layout = TreeLayout::sparse(2)?;
    println!("height-2 tree over 7 positions:");
    for d in 0..=2u32 {
        let row: Vec<u64> = (0..1u64 << d).map(|j| layout.internal_position(d, j)).collect();
        println!("  depth {d}: {row:?}");
    }

    let mut small = TreeRanker::sparse(2, 7)?;
    run_online(&mut small, &Instance::new(3, 7, vec![3, 1, 2])?)?;
    write_tree_trace(std::io::stdout().lock(), small.trace())?;

    let n = 64;
    let h = ((REED_ALPHA + 0.7) * (n as f64).ln()).ceil() as u32;
    let m = (1u64 << (h + 1)) - 1;
    let mut clean = 0;
    let trials = 500;
    for trial in 0..trials {
        let inst = generate_instance(n, m, ArrivalMode::UniformRandom, SeedSpec::new(3, trial))?;
        let mut ranker = TreeRanker::sparse(h, m)?;
        let out = run_online(&mut ranker, &inst)?;
        if out.overflows == 0 && count_inversions(&out.placement) == 0 {
            clean += 1;
        }
    }
    println!("\nn = {n}, h = {h}, m = {m}: {clean}/{trials} trials perfectly sorted");
    Ok(())
}
