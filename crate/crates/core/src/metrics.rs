//! Exact sortedness measures of a completed placement.

use serde::Serialize;

use crate::error::{Error, Result};

/// Position assigned to each element, indexed by true rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlacementMap {
    m: u64,
    /// `positions[i]` is the position of the element with true rank `i + 1`.
    positions: Vec<u64>,
}

impl PlacementMap {
    /// Checks that every position lies in `1..=m` and no two coincide.
    pub fn new(positions: Vec<u64>, m: u64) -> Result<Self> {
        if let Some(&p) = positions.iter().find(|&&p| p == 0 || p > m) {
            return Err(Error::OutOfRange { position: p, m });
        }
        let mut sorted = positions.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPlacement("two elements share a position".into()));
        }
        Ok(Self { m, positions })
    }

    /// Builds the map from per-step positions of an arrival sequence.
    pub fn from_arrivals(arrivals: &[usize], arrival_positions: &[u64], m: u64) -> Result<Self> {
        if arrivals.len() != arrival_positions.len() {
            return Err(Error::InvalidPlacement(format!(
                "{} arrivals but {} positions",
                arrivals.len(),
                arrival_positions.len()
            )));
        }
        let n = arrivals.len();
        let mut positions = vec![0; n];
        for (&rank, &p) in arrivals.iter().zip(arrival_positions) {
            if rank == 0 || rank > n || positions[rank - 1] != 0 {
                return Err(Error::InvalidPlacement("arrivals are not a permutation".into()));
            }
            positions[rank - 1] = p;
        }
        Self::new(positions, m)
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Positions in true-rank order.
    pub fn positions(&self) -> &[u64] {
        &self.positions
    }

    pub fn position_of(&self, rank: usize) -> u64 {
        self.positions[rank - 1]
    }
}

/// Kendall tau distance to the true order: pairs whose positions disagree
/// with their ranks. `O(n log n)` merge count.
pub fn count_inversions(p: &PlacementMap) -> u64 {
    count_inversions_in(p.positions())
}

/// Pairs `i < j` with `seq[i] > seq[j]`.
pub fn count_inversions_in<T: Ord + Copy>(seq: &[T]) -> u64 {
    let mut work = seq.to_vec();
    let mut buf = Vec::with_capacity(seq.len());
    sort_count(&mut work, &mut buf)
}

fn sort_count<T: Ord + Copy>(v: &mut [T], buf: &mut Vec<T>) -> u64 {
    let len = v.len();
    if len < 2 {
        return 0;
    }
    let mid = len / 2;
    let mut count = sort_count(&mut v[..mid], buf) + sort_count(&mut v[mid..], buf);
    buf.clear();
    let (mut i, mut j) = (0, mid);
    while i < mid && j < len {
        if v[i] <= v[j] {
            buf.push(v[i]);
            i += 1;
        } else {
            // v[j] jumps ahead of everything left in the first half
            count += (mid - i) as u64;
            buf.push(v[j]);
            j += 1;
        }
    }
    buf.extend_from_slice(&v[i..mid]);
    buf.extend_from_slice(&v[j..]);
    v.copy_from_slice(buf);
    count
}

/// Literal `O(n²)` pair count.
pub fn count_inversions_bruteforce(p: &PlacementMap) -> u64 {
    let pos = p.positions();
    let mut count = 0;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            // ranks i+1 < j+1
            if pos[i] > pos[j] {
                count += 1;
            }
        }
    }
    count
}

/// Spearman footrule `Σ |rank − position|`; defined only for `m = n`.
pub fn footrule(p: &PlacementMap) -> Result<u64> {
    if p.m() != p.n() as u64 {
        return Err(Error::Domain(format!(
            "footrule needs m = n (n = {}, m = {})",
            p.n(),
            p.m()
        )));
    }
    Ok(p
        .positions()
        .iter()
        .enumerate()
        .map(|(i, &pos)| (i as u64 + 1).abs_diff(pos))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{derive_rng, SeedSpec};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::Rng;

    fn map(positions: &[u64]) -> PlacementMap {
        PlacementMap::new(positions.to_vec(), positions.len() as u64).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(count_inversions(&map(&[1, 2, 3, 4, 5])), 0);
        assert_eq!(count_inversions(&map(&[5, 4, 3, 2, 1])), 10);
        assert_eq!(count_inversions_bruteforce(&map(&[2, 1])), 1);
        assert_eq!(count_inversions_bruteforce(&map(&[1, 2, 3])), 0);
        assert_eq!(footrule(&map(&[1, 2, 3, 4])).unwrap(), 0);
        assert_eq!(footrule(&map(&[4, 3, 2, 1])).unwrap(), 8);
    }

    #[test]
    fn footrule_requires_square() {
        let p = PlacementMap::new(vec![1, 5], 5).unwrap();
        assert!(matches!(footrule(&p), Err(Error::Domain(_))));
        assert_eq!(count_inversions(&p), 0);
    }

    #[test]
    fn invalid_maps_rejected() {
        assert!(PlacementMap::new(vec![1, 1], 2).is_err());
        assert!(PlacementMap::new(vec![0, 1], 2).is_err());
        assert!(PlacementMap::new(vec![3, 1], 2).is_err());
    }

    fn permutations(n: usize) -> Vec<Vec<u64>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for slot in 0..=p.len() {
                let mut q = p.clone();
                q.insert(slot, n as u64);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn exhaustive_small_permutations() {
        for n in 1..=6 {
            let perms = permutations(n);
            assert_eq!(perms.len(), (1..=n).product::<usize>());
            for p in perms {
                let pm = map(&p);
                assert_eq!(count_inversions(&pm), count_inversions_bruteforce(&pm));
            }
        }
    }

    #[test]
    fn random_sparse_maps_agree() {
        let mut rng = derive_rng(SeedSpec::new(10, 0));
        for _ in 0..500 {
            let n = rng.gen_range(1..=512usize);
            let m = n as u64 * rng.gen_range(1..=4u64);
            let mut pool: Vec<u64> = (1..=m).collect();
            pool.shuffle(&mut rng);
            pool.truncate(n);
            let pm = PlacementMap::new(pool, m).unwrap();
            let k = count_inversions(&pm);
            assert_eq!(k, count_inversions_bruteforce(&pm));
            assert!(k <= (n * (n - 1) / 2) as u64);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn diaconis_graham(perm in (2usize..=128).prop_flat_map(|n| Just((1..=n as u64).collect::<Vec<_>>()).prop_shuffle())) {
            let pm = map(&perm);
            let k = count_inversions(&pm);
            let f = footrule(&pm).unwrap();
            prop_assert!(k <= f && f <= 2 * k);
            prop_assert_eq!(k == 0, perm.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
