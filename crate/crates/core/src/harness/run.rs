use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, THREADS_ENV};
use super::report::ExperimentReport;
use crate::error::{Error, Result};
use crate::instance::{derive_rng, generate_instance_with, ArrivalMode, SeedSpec};
use crate::metrics::{count_inversions, count_inversions_in, footrule};
use crate::rankers::{run_online, AlgorithmId, AnyRanker, PlacementKind, RankerSpec};

/// Scores of one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub algo: AlgorithmId,
    pub n: usize,
    pub m: u64,
    pub trial: u64,
    /// Stream id of the trial generator; with the master seed it reproduces
    /// the trial.
    pub seed: u64,
    pub inversions: u64,
    pub footrule: Option<u64>,
    /// `Σ |rank − erank|`, dense with `m = n` only.
    pub est_cost: Option<u64>,
    /// `Σ |erank − position|`, dense with `m = n` only.
    pub assign_cost: Option<u64>,
    pub overflows: u64,
    /// Inversions between elements not placed in the same leaf block
    /// (general ranker only).
    #[serde(default)]
    pub cross_leaf_inversions: Option<u64>,
    #[serde(default)]
    pub wall_ms: Option<f64>,
}

impl TrialResult {
    /// Non-negativity holds by type; this checks `K <= F <= 2K` when the
    /// footrule is defined.
    pub fn satisfies_invariants(&self) -> bool {
        match self.footrule {
            Some(f) => self.inversions <= f && f <= 2 * self.inversions,
            None => true,
        }
    }
}

/// Stream id for trial `trial` at size `n`.
fn stream_id(n: usize, trial: u64) -> u64 {
    ((n as u64) << 32) | (trial & 0xFFFF_FFFF)
}

/// Runs one trial: draw the instance, place it online, score it.
pub fn run_trial(
    spec: RankerSpec,
    n: usize,
    m: u64,
    mode: ArrivalMode,
    seed: SeedSpec,
    record_timing: bool,
) -> Result<TrialResult> {
    let started = Instant::now();
    let mut rng = derive_rng(seed);
    let instance = generate_instance_with(n, m, mode, &mut rng)?;
    let mut ranker = AnyRanker::build(spec, n, m, rng)?;
    let outcome = run_online(ranker.as_ranker(), &instance)?;
    let inversions = count_inversions(&outcome.placement);
    let footrule = footrule(&outcome.placement).ok();

    let (mut est_cost, mut assign_cost, mut cross_leaf) = (None, None, None);
    match &ranker {
        AnyRanker::Dense(dense) if spec.algorithm == AlgorithmId::Dense => {
            let (est, assign) = instance
                .arrivals()
                .iter()
                .zip(dense.trace())
                .fold((0u64, 0u64), |(e, a), (&rank, step)| {
                    (e + (rank as u64).abs_diff(step.erank), a + step.erank.abs_diff(step.position))
                });
            est_cost = Some(est);
            assign_cost = Some(assign);
        }
        AnyRanker::Tree(tree) if spec.algorithm == AlgorithmId::General => {
            let mut by_rank = vec![PlacementKind::Overflow; n];
            for (&rank, &kind) in instance.arrivals().iter().zip(tree.kinds()) {
                by_rank[rank - 1] = kind;
            }
            let mut leaves: HashMap<u64, Vec<u64>> = HashMap::new();
            for (i, kind) in by_rank.iter().enumerate() {
                if let PlacementKind::Leaf(j) = kind {
                    leaves.entry(*j).or_default().push(outcome.placement.positions()[i]);
                }
            }
            let within: u64 = leaves.values().map(|v| count_inversions_in(v)).sum();
            cross_leaf = Some(inversions - within);
        }
        _ => {}
    }

    Ok(TrialResult {
        algo: spec.algorithm,
        n,
        m,
        trial: seed.trial_index & 0xFFFF_FFFF,
        seed: seed.trial_index,
        inversions,
        footrule,
        est_cost,
        assign_cost,
        overflows: outcome.overflows,
        cross_leaf_inversions: cross_leaf,
        wall_ms: record_timing.then(|| started.elapsed().as_secs_f64() * 1e3),
    })
}

/// Worker count: `RANK_ARRIVAL_THREADS` if set and positive, otherwise the
/// number of available cores.
pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    run_experiment_with_threads(cfg, thread_count())
}

/// Runs every `(n, trial)` pair on a pool of `threads` workers. Results are
/// collected in `(n, trial)` order, so the report does not depend on the
/// schedule.
pub fn run_experiment_with_threads(cfg: &ExperimentConfig, threads: usize) -> Result<ExperimentReport> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let mut jobs = Vec::with_capacity(cfg.sizes.len() * cfg.trials as usize);
    for &n in &cfg.sizes {
        let (m, rule_height) = cfg.m_rule.resolve(n)?;
        let spec = cfg.ranker_spec(rule_height);
        for trial in 0..cfg.trials {
            jobs.push((spec, n, m, trial));
        }
    }
    let trials: Vec<TrialResult> = pool.install(|| {
        jobs.par_iter()
            .map(|&(spec, n, m, trial)| {
                let seed = SeedSpec::new(cfg.master_seed, stream_id(n, trial));
                run_trial(spec, n, m, cfg.arrival_mode, seed, cfg.record_timing)
            })
            .collect::<Result<_>>()
    })?;
    Ok(ExperimentReport::aggregate(cfg.clone(), trials))
}

/// Trials breaking `F <= est + assign` or `K <= F <= 2K`.
pub fn decomposition_violations(trials: &[TrialResult]) -> usize {
    trials
        .iter()
        .filter(|t| {
            let triangle = match (t.footrule, t.est_cost, t.assign_cost) {
                (Some(f), Some(e), Some(a)) => f <= e + a,
                _ => true,
            };
            !(triangle && t.satisfies_invariants())
        })
        .count()
}

pub fn verify_decomposition(trials: &[TrialResult]) -> bool {
    decomposition_violations(trials) == 0
}
