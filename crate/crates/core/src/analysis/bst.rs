//! Height of binary search trees grown from uniformly random insertion
//! orders.

use rayon::prelude::*;
use serde::Serialize;

use crate::instance::{derive_rng, generate_instance_with, ArrivalMode, SeedSpec};

/// Root of `α ln(2e/α) = 1` above 2: `E[H_n] ~ α ln n`.
pub const REED_ALPHA: f64 = 4.31107;
/// Tail multiplier with `Pr[H_n >= k ln n] <= 1/n²`.
pub const DEVROYE_TAIL_K: f64 = 6.3619;

/// Height (edges on the longest root-to-leaf path; one node has height 0) of
/// the BST obtained by inserting `order` from left to right.
///
/// Runs in `O(n)`: the BST built by insertion is the Cartesian tree of the
/// keys with arrival time as heap priority. Keys must be a permutation of
/// `1..=n`.
pub fn bst_height_of(order: &[usize]) -> u32 {
    let n = order.len();
    if n == 0 {
        return 0;
    }
    let mut time_of = vec![0usize; n];
    for (t, &key) in order.iter().enumerate() {
        time_of[key - 1] = t;
    }
    // parent[key] in the Cartesian tree, found with a monotone stack over
    // keys in increasing order
    let mut parent = vec![usize::MAX; n];
    let mut stack: Vec<usize> = Vec::with_capacity(64);
    for key in 0..n {
        let mut last = usize::MAX;
        while let Some(&top) = stack.last() {
            if time_of[top] > time_of[key] {
                last = stack.pop().unwrap();
            } else {
                break;
            }
        }
        if last != usize::MAX {
            parent[last] = key;
        }
        if let Some(&top) = stack.last() {
            parent[key] = top;
        }
        stack.push(key);
    }
    // parents arrive before children, so one pass in arrival order suffices
    let mut depth = vec![0u32; n];
    let mut height = 0;
    for &key in order {
        let k = key - 1;
        if parent[k] != usize::MAX {
            depth[k] = depth[parent[k]] + 1;
            height = height.max(depth[k]);
        }
    }
    height
}

/// Height of the BST built from a uniformly random permutation of `1..=n`
/// drawn from the stream `seed`.
pub fn random_bst_height(n: usize, seed: SeedSpec) -> u32 {
    if n == 0 {
        return 0;
    }
    let mut rng = derive_rng(seed);
    let inst = generate_instance_with(n, n as u64, ArrivalMode::UniformRandom, &mut rng)
        .expect("n >= 1");
    bst_height_of(inst.arrivals())
}

/// Monte Carlo estimate of `Pr[H_n >= k ln n]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailEstimate {
    pub n: usize,
    pub k: f64,
    pub threshold: f64,
    pub trials: u64,
    pub hits: u64,
    pub probability: f64,
    /// Normal-approximation standard error of `probability`.
    pub std_error: f64,
    pub mean_height: f64,
    pub max_height: u32,
}

impl TailEstimate {
    /// 95% Wilson score interval for the tail probability.
    pub fn wilson_interval(&self) -> (f64, f64) {
        let z = 1.96f64;
        let nt = self.trials as f64;
        let p = self.probability;
        let denom = 1.0 + z * z / nt;
        let center = (p + z * z / (2.0 * nt)) / denom;
        let half = z * (p * (1.0 - p) / nt + z * z / (4.0 * nt * nt)).sqrt() / denom;
        ((center - half).max(0.0), (center + half).min(1.0))
    }
}

/// Samples `trials` random BST heights (trial `i` uses stream
/// `(master_seed, i)`) and counts those reaching `k ln n`.
pub fn height_tail(n: usize, trials: u64, k: f64, master_seed: u64) -> TailEstimate {
    let heights: Vec<u32> = (0..trials)
        .into_par_iter()
        .map(|i| random_bst_height(n, SeedSpec::new(master_seed, i)))
        .collect();
    let threshold = k * (n as f64).ln();
    let hits = heights.iter().filter(|&&h| h as f64 >= threshold).count() as u64;
    let probability = hits as f64 / trials.max(1) as f64;
    TailEstimate {
        n,
        k,
        threshold,
        trials,
        hits,
        probability,
        std_error: (probability * (1.0 - probability) / trials.max(1) as f64).sqrt(),
        mean_height: heights.iter().map(|&h| h as f64).sum::<f64>() / trials.max(1) as f64,
        max_height: heights.iter().copied().max().unwrap_or(0),
    }
}
