//! Numeric machinery behind the experiments: hypergeometric
//! anti-concentration, the height solver of the general ranker, random BST
//! heights, log–log slope fits and the squared-ratio sum.

pub mod alpha;
pub mod bst;
pub mod hypergeom;
pub mod slope;
pub mod sums;

pub use alpha::{alpha_zero, bisect, f_alpha, g_alpha, solve_alpha};
pub use bst::{height_tail, random_bst_height, TailEstimate, DEVROYE_TAIL_K, REED_ALPHA};
pub use hypergeom::{
    anti_concentration_scan, hypergeom_pmf, max_pmf_over_k, write_scan_csv, AntiConcentrationRow,
    HypergeomParams,
};
pub use slope::{fit_loglog_slope, SlopeFit};
pub use sums::{squared_ratio_sum, squared_ratio_sum_scaled};
