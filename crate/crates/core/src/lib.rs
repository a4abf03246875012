//! Online secretary ranking.
//!
//! Elements with distinct true ranks arrive one at a time in random order and
//! must each be given an irrevocable position among `m >= n` slots, using
//! only comparisons with elements that have already arrived. The cost of the
//! final placement is its number of inversions against the true order.
//!
//! The crate provides:
//!
//! - [`instance`]: problem instances, uniform and min/max arrival orders, and
//!   the seeded per-trial generator.
//! - [`order`]: the rank index and free-position set the dense ranker needs.
//! - [`rankers`]: dense, sparse (binary tree), general (tree with dense
//!   leaves), random and noiseless placement algorithms.
//! - [`metrics`]: Kendall tau inversions and Spearman footrule.
//! - [`analysis`]: hypergeometric anti-concentration, the general ranker's
//!   height solver, random BST heights, log–log slope fits.
//! - [`harness`]: reproducible multi-trial experiments and their reports.
//!
//! ```
//! use secretary_rank::instance::{derive_rng, generate_instance, ArrivalMode, SeedSpec};
//! use secretary_rank::metrics::count_inversions;
//! use secretary_rank::rankers::{run_online, DenseRanker};
//!
//! let inst = generate_instance(1000, 1000, ArrivalMode::UniformRandom, SeedSpec::new(1, 0)).unwrap();
//! let mut ranker = DenseRanker::new(1000, derive_rng(SeedSpec::new(1, 1)));
//! let outcome = run_online(&mut ranker, &inst).unwrap();
//! assert!(count_inversions(&outcome.placement) < 1000 * 999 / 4);
//! ```

pub mod analysis;
pub mod error;
pub mod harness;
pub mod instance;
pub mod metrics;
pub mod order;
pub mod rankers;

pub use error::{Error, Result};
