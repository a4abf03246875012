//! Online placement algorithms.
//!
//! Every ranker sees the stream only through a [`Comparator`], which answers
//! whether the element currently being placed is smaller than one that
//! arrived earlier. True ranks are never exposed to a ranker.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, TrialRng};
use crate::metrics::PlacementMap;

mod baseline;
mod dense;
mod general;
mod tree;

pub use baseline::RandomRanker;
pub use dense::{write_dense_trace, DenseRanker, DenseStep};
pub use general::{solve_general_height, GeneralHeight};
pub use tree::{write_tree_trace, PlacementKind, Slot, TreeLayout, TreeRanker, TreeStep};

/// Pairwise comparison access to the arrival stream.
pub trait Comparator {
    /// Whether the element being placed is smaller than the element that
    /// arrived at step `earlier` (0-based).
    fn current_less_than(&mut self, earlier: usize) -> bool;
}

pub(crate) fn probe_vs(cmp: &mut dyn Comparator, earlier: usize) -> Ordering {
    if cmp.current_less_than(earlier) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Comparator backed by the true ranks of an [`Instance`].
///
/// Asking about an element that has not arrived yet panics: that would be a
/// ranker bug, not a recoverable condition.
#[derive(Debug)]
pub struct ArrivalOracle<'a> {
    arrivals: &'a [usize],
    current: usize,
    queries: u64,
    log: Option<Vec<(usize, usize)>>,
}

impl<'a> ArrivalOracle<'a> {
    pub fn new(arrivals: &'a [usize]) -> Self {
        Self {
            arrivals,
            current: 0,
            queries: 0,
            log: None,
        }
    }

    /// Like [`ArrivalOracle::new`], additionally keeping every
    /// `(current, earlier)` query.
    pub fn recording(arrivals: &'a [usize]) -> Self {
        Self {
            log: Some(Vec::new()),
            ..Self::new(arrivals)
        }
    }

    pub fn set_current(&mut self, step: usize) {
        self.current = step;
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    pub fn log(&self) -> Option<&[(usize, usize)]> {
        self.log.as_deref()
    }
}

impl Comparator for ArrivalOracle<'_> {
    fn current_less_than(&mut self, earlier: usize) -> bool {
        assert!(
            earlier < self.current,
            "online constraint violated: step {} queried step {}",
            self.current,
            earlier
        );
        self.queries += 1;
        if let Some(log) = self.log.as_mut() {
            log.push((self.current, earlier));
        }
        self.arrivals[self.current] < self.arrivals[earlier]
    }
}

/// Which placement algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmId {
    Dense,
    Sparse,
    General,
    Random,
    Noiseless,
    ScaledDense,
}

impl AlgorithmId {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Dense => "dense",
            AlgorithmId::Sparse => "sparse",
            AlgorithmId::General => "general",
            AlgorithmId::Random => "random",
            AlgorithmId::Noiseless => "noiseless",
            AlgorithmId::ScaledDense => "scaled-dense",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "dense" => AlgorithmId::Dense,
            "sparse" => AlgorithmId::Sparse,
            "general" => AlgorithmId::General,
            "random" => AlgorithmId::Random,
            "noiseless" => AlgorithmId::Noiseless,
            "scaled-dense" => AlgorithmId::ScaledDense,
            _ => return None,
        })
    }
}

impl std::fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An online placement algorithm.
pub trait OnlineRanker {
    fn algorithm(&self) -> AlgorithmId;

    /// Number of positions `m`.
    fn positions(&self) -> u64;

    /// Places the next arrival and returns its position in `1..=m`.
    fn place(&mut self, cmp: &mut dyn Comparator) -> Result<u64>;

    /// Elements that could not be placed by the primary rule.
    fn overflows(&self) -> u64 {
        0
    }
}

/// Algorithm selection plus its tunables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankerSpec {
    pub algorithm: AlgorithmId,
    /// Tree height for `sparse` and `general`. When absent, `sparse` uses the
    /// tallest tree fitting in `m` and `general` solves for it.
    #[serde(default)]
    pub height: Option<u32>,
}

impl RankerSpec {
    pub fn new(algorithm: AlgorithmId) -> Self {
        Self {
            algorithm,
            height: None,
        }
    }

    pub fn with_height(mut self, height: u32) -> Self {
        self.height = Some(height);
        self
    }
}

/// Concrete ranker, so that traces stay reachable after a run.
#[derive(Debug)]
pub enum AnyRanker {
    Dense(DenseRanker),
    Tree(TreeRanker),
    Random(RandomRanker),
}

impl AnyRanker {
    pub fn build(spec: RankerSpec, n: usize, m: u64, rng: TrialRng) -> Result<Self> {
        crate::instance::check_dimensions(n, m)?;
        let require_equal = |what: &str| {
            if m != n as u64 {
                Err(Error::Config(format!("{what} ranker needs m = n (n = {n}, m = {m})")))
            } else {
                Ok(())
            }
        };
        Ok(match spec.algorithm {
            AlgorithmId::Dense => {
                require_equal("dense")?;
                AnyRanker::Dense(DenseRanker::new(n, rng))
            }
            AlgorithmId::Noiseless => {
                require_equal("noiseless")?;
                AnyRanker::Dense(DenseRanker::noiseless(n))
            }
            AlgorithmId::ScaledDense => AnyRanker::Dense(DenseRanker::scaled(n, m, rng)),
            AlgorithmId::Random => AnyRanker::Random(RandomRanker::new(n, m, rng)),
            AlgorithmId::Sparse => {
                let h = match spec.height {
                    Some(h) => h,
                    None => TreeLayout::tallest_sparse_height(m),
                };
                AnyRanker::Tree(TreeRanker::sparse(h, m)?)
            }
            AlgorithmId::General => {
                let h = match spec.height {
                    Some(h) => h,
                    None if n < 2 => 1,
                    None => solve_general_height(n, m)?.height,
                };
                AnyRanker::Tree(TreeRanker::general(h, m, rng)?)
            }
        })
    }

    pub fn as_ranker(&mut self) -> &mut dyn OnlineRanker {
        match self {
            AnyRanker::Dense(r) => r,
            AnyRanker::Tree(r) => r,
            AnyRanker::Random(r) => r,
        }
    }
}

/// Result of feeding a whole instance to a ranker.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub placement: PlacementMap,
    /// Position given to the element arriving at each step.
    pub arrival_positions: Vec<u64>,
    pub queries: u64,
    pub overflows: u64,
}

/// Feeds `instance` to `ranker` one arrival at a time.
pub fn run_online(ranker: &mut dyn OnlineRanker, instance: &Instance) -> Result<RunOutcome> {
    let mut oracle = ArrivalOracle::new(instance.arrivals());
    run_with_oracle(ranker, instance, &mut oracle)
}

/// [`run_online`] with a caller-supplied oracle, e.g. a recording one.
pub fn run_with_oracle(
    ranker: &mut dyn OnlineRanker,
    instance: &Instance,
    oracle: &mut ArrivalOracle<'_>,
) -> Result<RunOutcome> {
    if ranker.positions() != instance.m() {
        return Err(Error::Config(format!(
            "ranker has {} positions, instance has m = {}",
            ranker.positions(),
            instance.m()
        )));
    }
    let mut arrival_positions = Vec::with_capacity(instance.n());
    for step in 0..instance.n() {
        oracle.set_current(step);
        arrival_positions.push(ranker.place(oracle)?);
    }
    let placement =
        PlacementMap::from_arrivals(instance.arrivals(), &arrival_positions, instance.m())?;
    Ok(RunOutcome {
        placement,
        arrival_positions,
        queries: oracle.queries(),
        overflows: ranker.overflows(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{derive_rng, generate_instance, ArrivalMode, SeedSpec};

    #[test]
    fn every_ranker_is_online_and_injective() {
        let cases: [(AlgorithmId, u64); 6] = [
            (AlgorithmId::Dense, 1),
            (AlgorithmId::Noiseless, 1),
            (AlgorithmId::Random, 1),
            (AlgorithmId::ScaledDense, 3),
            (AlgorithmId::Sparse, 2000),
            (AlgorithmId::General, 50),
        ];
        for (algo, mult) in cases {
            for trial in 0..20 {
                let n = 60;
                let m = n as u64 * mult;
                let seed = SeedSpec::new(21, trial);
                let inst = generate_instance(n, m, ArrivalMode::UniformRandom, seed).unwrap();
                let spec = RankerSpec::new(algo);
                let mut ranker = AnyRanker::build(spec, n, m, derive_rng(SeedSpec::new(99, trial))).unwrap();
                let mut oracle = ArrivalOracle::recording(inst.arrivals());
                let out = run_with_oracle(ranker.as_ranker(), &inst, &mut oracle).unwrap();
                assert!(oracle.log().unwrap().iter().all(|&(cur, earlier)| earlier < cur));
                let mut pos = out.arrival_positions.clone();
                pos.sort_unstable();
                pos.dedup();
                assert_eq!(pos.len(), n, "{algo}");
                assert!(pos.iter().all(|&p| (1..=m).contains(&p)));
            }
        }
    }

    #[test]
    fn dense_rejects_m_neq_n() {
        let r = AnyRanker::build(RankerSpec::new(AlgorithmId::Dense), 4, 5, derive_rng(SeedSpec::new(0, 0)));
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    #[should_panic(expected = "online constraint")]
    fn oracle_refuses_future_queries() {
        let arrivals = [2, 1, 3];
        let mut oracle = ArrivalOracle::new(&arrivals);
        oracle.set_current(1);
        oracle.current_less_than(2);
    }

    #[test]
    fn algorithm_ids_round_trip() {
        for id in [
            AlgorithmId::Dense,
            AlgorithmId::Sparse,
            AlgorithmId::General,
            AlgorithmId::Random,
            AlgorithmId::Noiseless,
            AlgorithmId::ScaledDense,
        ] {
            assert_eq!(AlgorithmId::parse(id.as_str()), Some(id));
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
    }
}
