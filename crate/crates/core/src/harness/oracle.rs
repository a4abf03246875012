//! Cross-checks of the fast data structures and metrics against naive
//! reimplementations, on seeded random inputs.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::analysis::bst::bst_height_of;
use crate::analysis::hypergeom::{hypergeom_pmf, max_pmf_over_k, HypergeomParams};
use crate::instance::{derive_rng, generate_instance, ArrivalMode, SeedSpec};
use crate::metrics::{count_inversions, count_inversions_bruteforce, footrule, PlacementMap};
use crate::order::{FreePositionSet, RelativeRankIndex};
use crate::rankers::{run_online, DenseRanker};

/// Outcome of one oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs every oracle comparison with `cases` random inputs each.
pub fn run_oracle_checks(cases: u64, master_seed: u64) -> Vec<OracleCheck> {
    vec![
        check("inversions", cases, |i| inversions_case(SeedSpec::new(master_seed, i))),
        check("footrule_bounds", cases, |i| footrule_case(SeedSpec::new(master_seed ^ 1, i))),
        check("rank_index", cases, |i| rank_index_case(SeedSpec::new(master_seed ^ 2, i))),
        check("free_positions", cases, |i| free_set_case(SeedSpec::new(master_seed ^ 3, i))),
        check("bst_height", cases, |i| bst_case(SeedSpec::new(master_seed ^ 4, i))),
        check("hypergeom", cases, |i| hypergeom_case(SeedSpec::new(master_seed ^ 5, i))),
    ]
}

fn check(name: &'static str, cases: u64, mut case: impl FnMut(u64) -> bool) -> OracleCheck {
    let failures = (0..cases).filter(|&i| !case(i)).count() as u64;
    OracleCheck { name, cases, failures }
}

fn inversions_case(seed: SeedSpec) -> bool {
    let mut rng = derive_rng(seed);
    let n = rng.gen_range(1..=300usize);
    let m = n as u64 * rng.gen_range(1..=4u64);
    let mut pool: Vec<u64> = (1..=m).collect();
    pool.shuffle(&mut rng);
    pool.truncate(n);
    let map = PlacementMap::new(pool, m).expect("distinct in range");
    count_inversions(&map) == count_inversions_bruteforce(&map)
}

fn footrule_case(seed: SeedSpec) -> bool {
    let mut rng = derive_rng(seed);
    let n = rng.gen_range(2..=256usize);
    let inst = generate_instance(n, n as u64, ArrivalMode::UniformRandom, seed).expect("n >= 1");
    let mut ranker = DenseRanker::new(n, derive_rng(SeedSpec::new(seed.master_seed, seed.trial_index + (1 << 40))));
    let Ok(out) = run_online(&mut ranker, &inst) else {
        return false;
    };
    let k = count_inversions(&out.placement);
    let Ok(f) = footrule(&out.placement) else {
        return false;
    };
    k <= f && f <= 2 * k
}

fn rank_index_case(seed: SeedSpec) -> bool {
    let mut rng = derive_rng(seed);
    let len = rng.gen_range(1..=400usize);
    let mut index = RelativeRankIndex::new();
    let mut seen: Vec<u32> = Vec::new();
    for _ in 0..len {
        let key: u32 = rng.gen_range(0..1000);
        let expect = seen.iter().filter(|&&k| k < key).count();
        if index.rank_below(&key) != expect {
            return false;
        }
        let inserted = index.insert(key).is_ok();
        if inserted == seen.contains(&key) {
            return false;
        }
        if inserted {
            seen.push(key);
        }
    }
    index.len() == seen.len()
}

fn free_set_case(seed: SeedSpec) -> bool {
    let mut rng = derive_rng(seed);
    let m = rng.gen_range(1..=500u64);
    let mut set = FreePositionSet::new(m);
    let mut free = vec![true; m as usize + 1];
    for _ in 0..m {
        let target = rng.gen_range(1..=m);
        let expect = (1..=m)
            .filter(|&p| free[p as usize])
            .min_by_key(|&p| (p.abs_diff(target), p));
        match (set.nearest_free(target), expect) {
            (Ok(got), Some(want)) if got == want => {
                set.take(got).expect("free");
                free[got as usize] = false;
            }
            _ => return false,
        }
    }
    set.is_empty() && set.nearest_free(1).is_err()
}

fn naive_bst_height(order: &[usize]) -> u32 {
    // (key, left, right) with usize::MAX as null
    let mut nodes: Vec<(usize, usize, usize)> = Vec::with_capacity(order.len());
    let mut height = 0;
    for &key in order {
        let id = nodes.len();
        nodes.push((key, usize::MAX, usize::MAX));
        if id == 0 {
            continue;
        }
        let (mut at, mut depth) = (0, 1);
        loop {
            let (k, l, r) = nodes[at];
            let next = if key < k { l } else { r };
            if next == usize::MAX {
                if key < k {
                    nodes[at].1 = id;
                } else {
                    nodes[at].2 = id;
                }
                break;
            }
            at = next;
            depth += 1;
        }
        height = height.max(depth);
    }
    height
}

fn bst_case(seed: SeedSpec) -> bool {
    let mut rng = derive_rng(seed);
    let n = rng.gen_range(1..=500usize);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(&mut rng);
    bst_height_of(&order) == naive_bst_height(&order)
}

fn hypergeom_case(seed: SeedSpec) -> bool {
    let mut rng = derive_rng(seed);
    let n = rng.gen_range(1..=200u64);
    let r = rng.gen_range(0..=n);
    let t = rng.gen_range(0..=n);
    let total: f64 = (0..=t)
        .map(|k| hypergeom_pmf(HypergeomParams::new(n, r, t, k).expect("k <= t")))
        .sum();
    let Ok((k_star, p_star)) = max_pmf_over_k(n, r, t) else {
        return false;
    };
    let mode_ok = k_star == t * r / n || k_star == (t * r).div_ceil(n);
    (total - 1.0).abs() < 1e-9 && p_star > 0.0 && mode_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_bst_small_cases() {
        assert_eq!(naive_bst_height(&[1]), 0);
        assert_eq!(naive_bst_height(&[2, 1, 3]), 1);
        assert_eq!(naive_bst_height(&[1, 2, 3, 4]), 3);
    }

    #[test]
    fn all_checks_pass() {
        for c in run_oracle_checks(60, 17) {
            assert!(c.passed(), "{} failed {} of {}", c.name, c.failures, c.cases);
        }
    }
}
