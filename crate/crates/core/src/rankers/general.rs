use serde::Serialize;

use crate::analysis::alpha::{g_alpha, solve_alpha};
use crate::error::{Error, Result};

/// Tree parameters of the general ranker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralHeight {
    pub alpha: f64,
    pub height: u32,
    pub leaf_width: u64,
}

/// Picks the tree height for `n` arrivals into `m` positions.
///
/// Solves `m / (9 n ln n) = n^{f(α)}` for `α`, then takes
/// `h = round(α · g(α) · ln n)`, at least 1 and at most the largest height
/// leaving leaf blocks of width `⌊m / 2^h⌋ − 1 >= 1`. Needs `n >= 2` and
/// `m >= 10 n ln n`.
pub fn solve_general_height(n: usize, m: u64) -> Result<GeneralHeight> {
    let alpha = solve_alpha(n, m)?;
    let ln_n = (n as f64).ln();
    let raw = (alpha * g_alpha(alpha)? * ln_n).round();
    // widest tree whose leaves still get one position each
    let cap = (63 - m.leading_zeros()).saturating_sub(1).min(62);
    if cap == 0 {
        return Err(Error::Precondition(format!("m = {m} is too small for a tree")));
    }
    let height = (raw.max(1.0).min(cap as f64)) as u32;
    let leaf_width = (m >> height) - 1;
    debug_assert!(leaf_width >= 1);
    Ok(GeneralHeight {
        alpha,
        height,
        leaf_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m_floor(n: usize) -> u64 {
        (10.0 * n as f64 * (n as f64).ln()).ceil() as u64
    }

    #[test]
    fn rejects_small_m() {
        assert!(matches!(solve_general_height(1024, 1024 * 10), Err(Error::Precondition(_))));
    }

    #[test]
    fn minimal_m_gives_short_tree() {
        let g = solve_general_height(1024, m_floor(1024)).unwrap();
        assert_eq!(g.height, 1);
        assert!(g.alpha > 1e3);
    }

    #[test]
    fn height_grows_with_m_until_width_cap() {
        let n = 1024;
        let mut last = 0;
        for exp in [5u32, 6, 7, 8, 9, 10, 12, 15, 18] {
            let m = 10u64.pow(exp).max(m_floor(n));
            let g = solve_general_height(n, m).unwrap();
            assert!(g.height >= last, "m = {m}");
            assert!(g.leaf_width >= 1);
            assert!((g.leaf_width + 1) << g.height <= m + 1);
            last = g.height;
        }
        // m -> infinity: the width cap binds
        let g = solve_general_height(n, u64::MAX / 2).unwrap();
        assert!(g.leaf_width >= 1 && g.height >= 20);
    }

    // (n, m, alpha, height, leaf_width); alpha cross-checked with a
    // 40-digit bisection
    const GOLDEN: [(usize, u64, f64, u32, u64); 2] = [
        (1024, 102_400, 875.766_470_243_448_8, 1, 51_199),
        (1024, 10_000_000_000, 5.799_767_693_301_835, 23, 1191),
    ];

    #[test]
    fn golden_parameters() {
        for (n, m, alpha, height, leaf_width) in GOLDEN {
            let g = solve_general_height(n, m).unwrap();
            assert_eq!((g.height, g.leaf_width), (height, leaf_width), "m = {m}");
            assert!((g.alpha / alpha - 1.0).abs() < 1e-9, "{}", g.alpha);
        }
    }
}
