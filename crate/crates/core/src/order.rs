//! Ordered structures used by the dense ranker: a rank index over arrived
//! elements and the set of still-unassigned positions.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node<K> {
    key: K,
    priority: u64,
    size: u32,
    left: u32,
    right: u32,
}

/// Order-statistic treap over distinct keys.
///
/// Keys can be located either through their `Ord` impl ([`rank_below`],
/// [`insert`]) or through an external comparison closure
/// ([`rank_by`], [`insert_by`]). The closure form is what the online rankers
/// use: they store arrival indices and answer "is the probe smaller than this
/// stored element?" through the comparison oracle, never by looking at ranks.
///
/// Priorities come from a SplitMix64 sequence, so the tree shape is
/// independent of key order and no trial randomness is consumed.
///
/// [`rank_below`]: RelativeRankIndex::rank_below
/// [`insert`]: RelativeRankIndex::insert
/// [`rank_by`]: RelativeRankIndex::rank_by
/// [`insert_by`]: RelativeRankIndex::insert_by
#[derive(Debug, Clone)]
pub struct RelativeRankIndex<K> {
    nodes: Vec<Node<K>>,
    root: u32,
    priority_state: u64,
}

impl<K> Default for RelativeRankIndex<K> {
    fn default() -> Self {
        Self::new()
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl<K> RelativeRankIndex<K> {
    pub fn new() -> Self {
        Self {
            nodes: Vec::new(),
            root: NIL,
            priority_state: 0,
        }
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            nodes: Vec::with_capacity(capacity),
            ..Self::new()
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn size(&self, idx: u32) -> u32 {
        if idx == NIL {
            0
        } else {
            self.nodes[idx as usize].size
        }
    }

    fn update(&mut self, idx: u32) {
        let (l, r) = {
            let node = &self.nodes[idx as usize];
            (node.left, node.right)
        };
        self.nodes[idx as usize].size = 1 + self.size(l) + self.size(r);
    }

    fn rotate_right(&mut self, idx: u32) -> u32 {
        let l = self.nodes[idx as usize].left;
        self.nodes[idx as usize].left = self.nodes[l as usize].right;
        self.nodes[l as usize].right = idx;
        self.update(idx);
        self.update(l);
        l
    }

    fn rotate_left(&mut self, idx: u32) -> u32 {
        let r = self.nodes[idx as usize].right;
        self.nodes[idx as usize].right = self.nodes[r as usize].left;
        self.nodes[r as usize].left = idx;
        self.update(idx);
        self.update(r);
        r
    }

    /// Number of stored keys smaller than the probe. `probe_vs` returns the
    /// ordering of the probe relative to a stored key.
    pub fn rank_by<F>(&self, mut probe_vs: F) -> Result<usize>
    where
        F: FnMut(&K) -> Ordering,
    {
        let mut below = 0usize;
        let mut cur = self.root;
        while cur != NIL {
            let node = &self.nodes[cur as usize];
            match probe_vs(&node.key) {
                Ordering::Less => cur = node.left,
                Ordering::Greater => {
                    below += self.size(node.left) as usize + 1;
                    cur = node.right;
                }
                Ordering::Equal => return Err(Error::DuplicateKey),
            }
        }
        Ok(below)
    }

    /// Inserts `key`, positioned by `probe_vs`, and returns how many stored
    /// keys were smaller than it. Each stored key on the search path is
    /// compared exactly once.
    pub fn insert_by<F>(&mut self, key: K, mut probe_vs: F) -> Result<usize>
    where
        F: FnMut(&K) -> Ordering,
    {
        self.insert_with(key, &mut |nodes, _, at| probe_vs(&nodes[at as usize].key))
    }

    fn insert_with(&mut self, key: K, cmp: &mut NodeCmp<'_, K>) -> Result<usize> {
        let priority = splitmix64(&mut self.priority_state);
        let new = self.nodes.len() as u32;
        self.nodes.push(Node {
            key,
            priority,
            size: 1,
            left: NIL,
            right: NIL,
        });
        let mut below = 0;
        match self.insert_at(self.root, new, cmp, &mut below) {
            Ok(root) => {
                self.root = root;
                Ok(below)
            }
            Err(e) => {
                self.nodes.pop();
                Err(e)
            }
        }
    }

    fn insert_at(&mut self, at: u32, new: u32, cmp: &mut NodeCmp<'_, K>, below: &mut usize) -> Result<u32> {
        if at == NIL {
            return Ok(new);
        }
        let mut at = at;
        match cmp(&self.nodes, new, at) {
            Ordering::Equal => return Err(Error::DuplicateKey),
            Ordering::Less => {
                let child = self.insert_at(self.nodes[at as usize].left, new, cmp, below)?;
                self.nodes[at as usize].left = child;
                self.update(at);
                if self.nodes[child as usize].priority > self.nodes[at as usize].priority {
                    at = self.rotate_right(at);
                }
            }
            Ordering::Greater => {
                *below += self.size(self.nodes[at as usize].left) as usize + 1;
                let child = self.insert_at(self.nodes[at as usize].right, new, cmp, below)?;
                self.nodes[at as usize].right = child;
                self.update(at);
                if self.nodes[child as usize].priority > self.nodes[at as usize].priority {
                    at = self.rotate_left(at);
                }
            }
        }
        Ok(at)
    }

    /// Stored keys in increasing order.
    pub fn keys(&self) -> Vec<&K> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.nodes[cur as usize].left;
            }
            let top = stack.pop().unwrap();
            out.push(&self.nodes[top as usize].key);
            cur = self.nodes[top as usize].right;
        }
        out
    }
}

/// Compares the node being inserted (second argument) against a stored node
/// (third argument).
type NodeCmp<'a, K> = dyn FnMut(&[Node<K>], u32, u32) -> Ordering + 'a;

impl<K: Ord> RelativeRankIndex<K> {
    /// Number of stored keys strictly less than `key`.
    ///
    /// A stored key equal to `key` is not counted.
    pub fn rank_below(&self, key: &K) -> usize {
        let mut below = 0usize;
        let mut cur = self.root;
        while cur != NIL {
            let node = &self.nodes[cur as usize];
            if *key <= node.key {
                cur = node.left;
            } else {
                below += self.size(node.left) as usize + 1;
                cur = node.right;
            }
        }
        below
    }

    pub fn insert(&mut self, key: K) -> Result<()> {
        self.insert_with(key, &mut |nodes, new, at| {
            nodes[new as usize].key.cmp(&nodes[at as usize].key)
        })
        .map(|_| ())
    }

    pub fn contains(&self, key: &K) -> bool {
        let mut cur = self.root;
        while cur != NIL {
            let node = &self.nodes[cur as usize];
            match key.cmp(&node.key) {
                Ordering::Less => cur = node.left,
                Ordering::Greater => cur = node.right,
                Ordering::Equal => return true,
            }
        }
        false
    }
}

/// Unassigned positions within `1..=m`, stored as maximal free runs.
///
/// Memory is proportional to the number of runs (at most one more than the
/// number of taken positions), so `m` can be far larger than the number of
/// placements.
#[derive(Debug, Clone)]
pub struct FreePositionSet {
    m: u64,
    free: u64,
    /// run start -> run end, both inclusive
    runs: BTreeMap<u64, u64>,
}

impl FreePositionSet {
    /// All of `1..=m` free.
    pub fn new(m: u64) -> Self {
        let mut runs = BTreeMap::new();
        if m > 0 {
            runs.insert(1, m);
        }
        Self { m, free: m, runs }
    }

    pub fn universe(&self) -> u64 {
        self.m
    }

    pub fn len(&self) -> u64 {
        self.free
    }

    pub fn is_empty(&self) -> bool {
        self.free == 0
    }

    fn run_containing(&self, p: u64) -> Option<(u64, u64)> {
        self.runs
            .range(..=p)
            .next_back()
            .filter(|(_, &end)| end >= p)
            .map(|(&s, &e)| (s, e))
    }

    pub fn contains(&self, p: u64) -> bool {
        self.run_containing(p).is_some()
    }

    /// Free position closest to `target`; equidistant candidates resolve to
    /// the smaller one.
    pub fn nearest_free(&self, target: u64) -> Result<u64> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let below = self.runs.range(..=target).next_back().map(|(_, &e)| e);
        if let Some(end) = below {
            if end >= target {
                return Ok(target);
            }
        }
        let above = self.runs.range(target + 1..).next().map(|(&s, _)| s);
        Ok(match (below, above) {
            (Some(lo), Some(hi)) => {
                if target - lo <= hi - target {
                    lo
                } else {
                    hi
                }
            }
            (Some(lo), None) => lo,
            (None, Some(hi)) => hi,
            (None, None) => unreachable!("non-empty set has a run"),
        })
    }

    pub fn take(&mut self, p: u64) -> Result<()> {
        let (start, end) = self.run_containing(p).ok_or(Error::NotFree(p))?;
        self.runs.remove(&start);
        if start < p {
            self.runs.insert(start, p - 1);
        }
        if p < end {
            self.runs.insert(p + 1, end);
        }
        self.free -= 1;
        Ok(())
    }

    /// Iterates the free positions in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.runs.iter().flat_map(|(&s, &e)| s..=e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{derive_rng, SeedSpec};
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn rank_below_small_cases() {
        let mut idx = RelativeRankIndex::new();
        assert_eq!(idx.rank_below(&42), 0);
        idx.insert(2).unwrap();
        idx.insert(7).unwrap();
        assert_eq!(idx.rank_below(&5), 1);

        let mut idx = RelativeRankIndex::new();
        idx.insert(5).unwrap();
        assert_eq!(idx.rank_below(&7), 1);
        assert!(matches!(idx.insert(5), Err(Error::DuplicateKey)));
        assert_eq!(idx.len(), 1);

        let k = 37;
        let mut idx = RelativeRankIndex::new();
        for v in (1..=100).filter(|&v| v != k) {
            idx.insert(v).unwrap();
        }
        assert_eq!(idx.rank_below(&k), k - 1);
    }

    #[test]
    fn random_inserts_match_naive_count() {
        let mut rng = derive_rng(SeedSpec::new(3, 0));
        let n = 500;
        let mut keys: Vec<u32> = (1..=n).collect();
        for i in (1..keys.len()).rev() {
            keys.swap(i, rng.gen_range(0..=i));
        }
        let mut idx = RelativeRankIndex::new();
        for (i, &k) in keys.iter().enumerate() {
            let below = idx.insert_by(k, |s| k.cmp(s)).unwrap();
            assert_eq!(below, keys[..i].iter().filter(|&&x| x < k).count());
        }
        for _ in 0..100 {
            let probe = rng.gen_range(0..=n + 1);
            let naive = keys.iter().filter(|&&x| x < probe).count();
            assert_eq!(idx.rank_below(&probe), naive);
        }
        let sorted: Vec<u32> = idx.keys().into_iter().copied().collect();
        assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
    }

    #[test]
    fn insert_by_rejects_duplicate_without_growing() {
        let mut idx = RelativeRankIndex::new();
        idx.insert_by(3, |s: &i32| 3.cmp(s)).unwrap();
        assert!(idx.insert_by(3, |s: &i32| 3.cmp(s)).is_err());
        assert_eq!(idx.len(), 1);
        assert!(idx.rank_by(|s: &i32| 3.cmp(s)).is_err());
    }

    #[test]
    fn nearest_free_examples() {
        let free = FreePositionSet::new(9);
        assert_eq!(free.nearest_free(5).unwrap(), 5);

        let mut free = FreePositionSet::new(9);
        for p in [1, 2, 4, 5, 6, 7, 8] {
            free.take(p).unwrap();
        }
        // {3, 9}
        assert_eq!(free.nearest_free(5).unwrap(), 3);

        let mut free = FreePositionSet::new(9);
        for p in [1, 2, 3, 5, 7, 8, 9] {
            free.take(p).unwrap();
        }
        // {4, 6}
        assert_eq!(free.nearest_free(5).unwrap(), 4);

        let mut free = FreePositionSet::new(9);
        free.take(5).unwrap();
        assert_eq!(free.nearest_free(5).unwrap(), 4);
        assert!(matches!(free.take(5), Err(Error::NotFree(5))));
    }

    #[test]
    fn exhausting_the_set() {
        let m = 50;
        let mut free = FreePositionSet::new(m);
        let mut rng = derive_rng(SeedSpec::new(1, 1));
        let mut order: Vec<u64> = (1..=m).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        for p in order {
            free.take(p).unwrap();
        }
        assert!(free.is_empty());
        assert!(matches!(free.nearest_free(10), Err(Error::EmptySet)));
    }

    fn naive_nearest(free: &[bool], target: u64) -> Option<u64> {
        (1..free.len() as u64)
            .filter(|&p| free[p as usize])
            .min_by_key(|&p| (p.abs_diff(target), p))
    }

    #[test]
    fn interleaved_ops_match_scan_oracle() {
        let m = 300u64;
        let mut rng = derive_rng(SeedSpec::new(77, 0));
        let mut free = FreePositionSet::new(m);
        let mut naive = vec![true; m as usize + 1];
        naive[0] = false;
        for _ in 0..1000 {
            if free.is_empty() {
                free = FreePositionSet::new(m);
                naive = vec![true; m as usize + 1];
                naive[0] = false;
            }
            let target = rng.gen_range(1..=m);
            let got = free.nearest_free(target).unwrap();
            assert_eq!(Some(got), naive_nearest(&naive, target));
            if rng.gen_bool(0.7) {
                free.take(got).unwrap();
                naive[got as usize] = false;
            }
            assert_eq!(free.len(), naive.iter().filter(|&&b| b).count() as u64);
        }
    }

    #[test]
    fn million_ops_smoke() {
        let m = 1_000_000u64;
        let mut free = FreePositionSet::new(m);
        let mut rng = derive_rng(SeedSpec::new(5, 5));
        let start = std::time::Instant::now();
        for _ in 0..500_000 {
            let p = free.nearest_free(rng.gen_range(1..=m)).unwrap();
            free.take(p).unwrap();
        }
        assert_eq!(free.len(), m - 500_000);
        assert!(start.elapsed().as_secs() < 20);
    }

    proptest! {
        #[test]
        fn nearest_free_matches_oracle(
            m in 1u64..80,
            ops in proptest::collection::vec((1u64..80, any::<bool>()), 1..200),
        ) {
            let mut free = FreePositionSet::new(m);
            let mut naive = vec![true; m as usize + 1];
            naive[0] = false;
            for (target, take) in ops {
                let target = (target - 1) % m + 1;
                match naive_nearest(&naive, target) {
                    None => prop_assert!(free.nearest_free(target).is_err()),
                    Some(expect) => {
                        prop_assert_eq!(free.nearest_free(target).unwrap(), expect);
                        if take {
                            free.take(expect).unwrap();
                            naive[expect as usize] = false;
                        }
                    }
                }
            }
            let listed: Vec<u64> = free.iter().collect();
            let expect: Vec<u64> = (1..=m).filter(|&p| naive[p as usize]).collect();
            prop_assert_eq!(listed, expect);
        }
    }
}
