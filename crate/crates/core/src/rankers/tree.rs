//! Binary-tree placement: the sparse ranker (single positions on every node)
//! and the general ranker (single positions on internal nodes, dense-ranked
//! blocks on the leaves).

use std::collections::HashMap;
use std::io::Write;

use serde::Serialize;

use super::dense::DenseCore;
use super::{AlgorithmId, Comparator, OnlineRanker};
use crate::error::{Error, Result};
use crate::instance::TrialRng;
use crate::order::FreePositionSet;

/// Complete binary tree of internal depths `0..height` whose leaves (depth
/// `height`) each own a block of `leaf_width` consecutive positions.
///
/// Positions follow the symmetric (in-order) traversal: for every internal
/// node, its left subtree's positions precede its own, which precede its
/// right subtree's. With `leaf_width = w` the in-order sequence is
/// `block₀, node, block₁, node, …, block_{2^h − 1}`, so the `k`-th internal
/// node in order sits at `k·(w+1)` and leaf `j` covers
/// `j·(w+1)+1 ..= j·(w+1)+w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeLayout {
    height: u32,
    leaf_width: u64,
}

/// What a position belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Internal { depth: u32, index: u64 },
    Leaf(u64),
}

impl TreeLayout {
    pub fn new(height: u32, leaf_width: u64) -> Result<Self> {
        if height > 62 {
            return Err(Error::Config(format!("tree height {height} exceeds 62")));
        }
        let layout = Self { height, leaf_width };
        layout
            .checked_span()
            .ok_or_else(|| Error::Config(format!("tree of height {height} overflows u64")))?;
        Ok(layout)
    }

    /// Layout of the sparse ranker: every node at depth `0..=h` holds one
    /// position and the zero-width leaf level stands for "deeper than `h`".
    pub fn sparse(h: u32) -> Result<Self> {
        Self::new(h + 1, 0)
    }

    /// Largest `h` with `2^{h+1} − 1 <= m`.
    pub fn tallest_sparse_height(m: u64) -> u32 {
        // floor(log2(m + 1)) - 1
        (63 - (m.saturating_add(1)).leading_zeros()).saturating_sub(1)
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn leaf_width(&self) -> u64 {
        self.leaf_width
    }

    fn checked_span(&self) -> Option<u64> {
        (self.leaf_width + 1)
            .checked_mul(1u64 << self.height)
            .map(|v| v - 1)
    }

    /// Number of positions the layout occupies.
    pub fn span(&self) -> u64 {
        self.checked_span().expect("validated in new")
    }

    pub fn internal_position(&self, depth: u32, index: u64) -> u64 {
        debug_assert!(depth < self.height);
        (2 * index + 1) * (1u64 << (self.height - 1 - depth)) * (self.leaf_width + 1)
    }

    /// First position of leaf `j`'s block.
    pub fn leaf_start(&self, j: u64) -> u64 {
        j * (self.leaf_width + 1) + 1
    }

    pub fn slot_of(&self, position: u64) -> Option<Slot> {
        if position == 0 || position > self.span() {
            return None;
        }
        let stride = self.leaf_width + 1;
        if !position.is_multiple_of(stride) {
            return Some(Slot::Leaf(position / stride));
        }
        let k = position / stride;
        let tz = k.trailing_zeros();
        Some(Slot::Internal {
            depth: self.height - 1 - tz,
            index: k >> (tz + 1),
        })
    }
}

/// How an element ended up placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PlacementKind {
    Internal,
    Leaf(u64),
    Overflow,
}

/// One step of a tree placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeStep {
    pub t: usize,
    pub node_depth: u32,
    pub position: u64,
    pub overflow: bool,
}

/// Tree-based ranker shared by the sparse and general algorithms.
#[derive(Debug)]
pub struct TreeRanker {
    algorithm: AlgorithmId,
    layout: TreeLayout,
    m: u64,
    /// heap id (`2^depth + index`) -> arrival step occupying that node
    occupants: HashMap<u64, usize>,
    leaves: HashMap<u64, DenseCore>,
    global: FreePositionSet,
    rng: Option<TrialRng>,
    overflows: u64,
    trace: Vec<TreeStep>,
    kinds: Vec<PlacementKind>,
}

impl TreeRanker {
    fn with_layout(algorithm: AlgorithmId, layout: TreeLayout, m: u64, rng: Option<TrialRng>) -> Result<Self> {
        if layout.span() > m {
            return Err(Error::Config(format!(
                "tree layout needs {} positions, only {m} available",
                layout.span()
            )));
        }
        Ok(Self {
            algorithm,
            layout,
            m,
            occupants: HashMap::new(),
            leaves: HashMap::new(),
            global: FreePositionSet::new(m),
            rng,
            overflows: 0,
            trace: Vec::new(),
            kinds: Vec::new(),
        })
    }

    /// Pure binary-tree placement with a tree of height `h`; needs
    /// `m >= 2^{h+1} − 1`.
    pub fn sparse(h: u32, m: u64) -> Result<Self> {
        Self::with_layout(AlgorithmId::Sparse, TreeLayout::sparse(h)?, m, None)
    }

    /// Tree of height `h` with dense-ranked leaf blocks of width
    /// `⌊m / 2^h⌋ − 1`.
    pub fn general(h: u32, m: u64, rng: TrialRng) -> Result<Self> {
        if h > 62 {
            return Err(Error::Config(format!("tree height {h} exceeds 62")));
        }
        let w = (m >> h).saturating_sub(1);
        if w < 1 {
            return Err(Error::Config(format!(
                "leaf width would be {w} for m = {m}, h = {h}; need at least 1"
            )));
        }
        Self::with_layout(AlgorithmId::General, TreeLayout::new(h, w)?, m, Some(rng))
    }

    pub fn layout(&self) -> TreeLayout {
        self.layout
    }

    pub fn trace(&self) -> &[TreeStep] {
        &self.trace
    }

    /// Placement kind of each arrival, in arrival order.
    pub fn kinds(&self) -> &[PlacementKind] {
        &self.kinds
    }

    fn record(&mut self, depth: u32, position: u64, kind: PlacementKind) -> u64 {
        self.trace.push(TreeStep {
            t: self.trace.len() + 1,
            node_depth: depth,
            position,
            overflow: kind == PlacementKind::Overflow,
        });
        self.kinds.push(kind);
        position
    }

    /// Takes the free position nearest to `target` and keeps any leaf
    /// instance that owns it in sync.
    fn overflow(&mut self, depth: u32, target: u64) -> Result<u64> {
        let position = self.global.nearest_free(target.clamp(1, self.m))?;
        self.global.take(position)?;
        if let Some(Slot::Leaf(j)) = self.layout.slot_of(position) {
            let local = position - self.layout.leaf_start(j) + 1;
            self.leaf_entry(j).block(local);
        }
        self.overflows += 1;
        Ok(self.record(depth, position, PlacementKind::Overflow))
    }

    fn leaf_entry(&mut self, j: u64) -> &mut DenseCore {
        let w = self.layout.leaf_width;
        self.leaves
            .entry(j)
            .or_insert_with(|| DenseCore::new(w as usize, w, true))
    }
}

impl OnlineRanker for TreeRanker {
    fn algorithm(&self) -> AlgorithmId {
        self.algorithm
    }

    fn positions(&self) -> u64 {
        self.m
    }

    fn overflows(&self) -> u64 {
        self.overflows
    }

    fn place(&mut self, cmp: &mut dyn Comparator) -> Result<u64> {
        let arrival = self.kinds.len();
        let height = self.layout.height;
        let (mut depth, mut index) = (0u32, 0u64);
        let mut last_position = None;
        while depth < height {
            let id = (1u64 << depth) + index;
            let position = self.layout.internal_position(depth, index);
            match self.occupants.get(&id) {
                None => {
                    self.occupants.insert(id, arrival);
                    if self.global.contains(position) {
                        self.global.take(position)?;
                        return Ok(self.record(depth, position, PlacementKind::Internal));
                    }
                    // taken earlier by an overflow
                    return self.overflow(depth, position);
                }
                Some(&occupant) => {
                    let right = !cmp.current_less_than(occupant);
                    index = 2 * index + right as u64;
                    depth += 1;
                    last_position = Some(position);
                }
            }
        }

        let w = self.layout.leaf_width;
        if w == 0 {
            let target = last_position.unwrap_or(1);
            return self.overflow(depth, target);
        }
        let start = self.layout.leaf_start(index);
        if !self.leaf_entry(index).has_room() {
            return self.overflow(depth, start + (w - 1) / 2);
        }
        let mut rng = self.rng.take();
        let step = self
            .leaves
            .get_mut(&index)
            .expect("created above")
            .place(arrival, cmp, rng.as_mut());
        self.rng = rng;
        let position = start + step?.position - 1;
        self.global.take(position)?;
        Ok(self.record(depth, position, PlacementKind::Leaf(index)))
    }
}

/// Writes `t,node_depth,position,overflow_flag` rows.
pub fn write_tree_trace<W: Write>(mut out: W, steps: &[TreeStep]) -> std::io::Result<()> {
    writeln!(out, "t,node_depth,position,overflow_flag")?;
    for s in steps {
        writeln!(out, "{},{},{},{}", s.t, s.node_depth, s.position, s.overflow as u8)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::bst::REED_ALPHA;
    use crate::instance::{derive_rng, generate_instance, ArrivalMode, Instance, SeedSpec};
    use crate::metrics::count_inversions;
    use crate::rankers::run_online;

    #[test]
    fn sparse_layout_is_in_order() {
        let layout = TreeLayout::sparse(2).unwrap();
        assert_eq!(layout.span(), 7);
        assert_eq!(layout.internal_position(0, 0), 4);
        assert_eq!(layout.internal_position(1, 0), 2);
        assert_eq!(layout.internal_position(1, 1), 6);
        let leaves: Vec<u64> = (0..4).map(|j| layout.internal_position(2, j)).collect();
        assert_eq!(leaves, vec![1, 3, 5, 7]);
    }

    #[test]
    fn layout_positions_respect_subtrees() {
        for (h, w) in [(1, 3), (3, 0), (3, 2), (4, 5)] {
            let layout = TreeLayout::new(h, w).unwrap();
            let mut seen = vec![false; layout.span() as usize + 1];
            for d in 0..h {
                for j in 0..(1u64 << d) {
                    let p = layout.internal_position(d, j);
                    assert_eq!(layout.slot_of(p), Some(Slot::Internal { depth: d, index: j }));
                    assert!(!std::mem::replace(&mut seen[p as usize], true));
                    if d + 1 < h {
                        assert!(layout.internal_position(d + 1, 2 * j) < p);
                        assert!(layout.internal_position(d + 1, 2 * j + 1) > p);
                    } else if w > 0 {
                        assert!(layout.leaf_start(2 * j) + w - 1 < p);
                        assert!(layout.leaf_start(2 * j + 1) > p);
                    }
                }
            }
            for j in 0..(1u64 << h) {
                for p in layout.leaf_start(j)..layout.leaf_start(j) + w {
                    assert_eq!(layout.slot_of(p), Some(Slot::Leaf(j)));
                    assert!(!std::mem::replace(&mut seen[p as usize], true));
                }
            }
            assert!(seen[1..].iter().all(|&b| b));
        }
    }

    #[test]
    fn tallest_sparse_height() {
        assert_eq!(TreeLayout::tallest_sparse_height(7), 2);
        assert_eq!(TreeLayout::tallest_sparse_height(14), 2);
        assert_eq!(TreeLayout::tallest_sparse_height(15), 3);
        assert_eq!(TreeLayout::tallest_sparse_height(1), 0);
    }

    #[test]
    fn sparse_three_arrivals() {
        // a2 < a3 < a1
        let inst = Instance::new(3, 7, vec![3, 1, 2]).unwrap();
        let mut ranker = TreeRanker::sparse(2, 7).unwrap();
        let out = run_online(&mut ranker, &inst).unwrap();
        assert_eq!(out.arrival_positions, vec![4, 2, 3]);
        assert_eq!(count_inversions(&out.placement), 0);
    }

    #[test]
    fn sparse_single_element_at_root() {
        let inst = Instance::new(1, 7, vec![1]).unwrap();
        let mut ranker = TreeRanker::sparse(2, 7).unwrap();
        let out = run_online(&mut ranker, &inst).unwrap();
        assert_eq!(out.arrival_positions, vec![4]);
    }

    #[test]
    fn sparse_overflow_goes_near_parent() {
        // sorted arrivals form a path; h = 1 tree holds only two of them
        let inst = Instance::new(3, 3, vec![1, 2, 3]).unwrap();
        let mut ranker = TreeRanker::sparse(1, 3).unwrap();
        let out = run_online(&mut ranker, &inst).unwrap();
        // root at 2, right child at 3, third element exceeds depth 1 and
        // falls back to the free position closest to 3
        assert_eq!(out.arrival_positions, vec![2, 3, 1]);
        assert_eq!(out.overflows, 1);
        assert!(ranker.trace()[2].overflow);
    }

    #[test]
    fn general_four_leaf_blocks() {
        // a2 < a3 < a4 < a1, h = 2
        let m = 4 * 11;
        let inst = Instance::new(4, m, vec![4, 1, 2, 3]).unwrap();
        let mut ranker = TreeRanker::general(2, m, derive_rng(SeedSpec::new(1, 0))).unwrap();
        let w = ranker.layout().leaf_width();
        assert_eq!(w, 10);
        let out = run_online(&mut ranker, &inst).unwrap();
        let layout = ranker.layout();
        assert_eq!(out.arrival_positions[0], layout.internal_position(0, 0));
        assert_eq!(out.arrival_positions[1], layout.internal_position(1, 0));
        assert_eq!(ranker.kinds()[2], PlacementKind::Leaf(1));
        assert_eq!(ranker.kinds()[3], PlacementKind::Leaf(1));
        let block = layout.leaf_start(1)..layout.leaf_start(1) + w;
        assert!(block.contains(&out.arrival_positions[2]));
        assert!(block.contains(&out.arrival_positions[3]));
        // the leaf block lies between a2 and a1
        assert!(out.arrival_positions[1] < out.arrival_positions[2]);
        assert!(out.arrival_positions[3] < out.arrival_positions[0]);
    }

    #[test]
    fn general_rejects_zero_width() {
        assert!(TreeRanker::general(3, 15, derive_rng(SeedSpec::new(0, 0))).is_err());
        assert!(TreeRanker::general(2, 8, derive_rng(SeedSpec::new(0, 0))).is_ok());
    }

    #[test]
    fn general_leaf_overflow_stays_injective() {
        // w = 1: leaves fill after one element
        let m = 2u64.pow(2) * 2 + 1;
        let n = 9;
        for trial in 0..50 {
            let inst = generate_instance(n, m, ArrivalMode::UniformRandom, SeedSpec::new(6, trial)).unwrap();
            let mut ranker = TreeRanker::general(2, m, derive_rng(SeedSpec::new(7, trial))).unwrap();
            let out = run_online(&mut ranker, &inst).unwrap();
            assert_eq!(out.placement.n(), n);
        }
    }

    #[test]
    fn sparse_tall_tree_zero_inversions_mostly() {
        let n = 64;
        let h = ((REED_ALPHA + 0.7) * (n as f64).ln()).ceil() as u32;
        let m = (1u64 << (h + 1)) - 1;
        let clean = (0..200)
            .filter(|&t| {
                let inst = generate_instance(n, m, ArrivalMode::UniformRandom, SeedSpec::new(12, t)).unwrap();
                let mut r = TreeRanker::sparse(h, m).unwrap();
                let out = run_online(&mut r, &inst).unwrap();
                count_inversions(&out.placement) == 0 && out.overflows == 0
            })
            .count();
        assert!(clean >= 190, "{clean}");
    }

    #[test]
    fn tree_trace_csv() {
        let inst = Instance::new(3, 7, vec![3, 1, 2]).unwrap();
        let mut ranker = TreeRanker::sparse(2, 7).unwrap();
        run_online(&mut ranker, &inst).unwrap();
        let mut buf = Vec::new();
        write_tree_trace(&mut buf, ranker.trace()).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "t,node_depth,position,overflow_flag\n1,0,4,0\n2,1,2,0\n3,2,3,0\n"
        );
    }
}
