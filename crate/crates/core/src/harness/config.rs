use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analysis::bst::REED_ALPHA;
use crate::error::{Error, Result};
use crate::instance::ArrivalMode;
use crate::rankers::{AlgorithmId, RankerSpec};

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "RANK_ARRIVAL_THREADS";

/// How the number of positions follows from `n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MRule {
    /// `m = n`
    #[default]
    EqualN,
    /// `m = ⌈multiplier · n · ln n⌉`
    NLogN { multiplier: f64 },
    /// `m = round(n^beta)`
    Power { beta: f64 },
    /// Fixed `m` for every size.
    Explicit { m: u64 },
    /// Full tree for the sparse ranker: `h = ⌈(α_Reed + margin) ln n⌉`,
    /// `m = 2^{h+1} − 1`.
    BstHeight { margin: f64 },
}

impl MRule {
    /// Number of positions for `n`, plus the tree height the rule implies.
    pub fn resolve(&self, n: usize) -> Result<(u64, Option<u32>)> {
        let nf = n as f64;
        let (m, height) = match *self {
            MRule::EqualN => (n as u64, None),
            MRule::NLogN { multiplier } => ((multiplier * nf * nf.ln()).ceil().max(0.0) as u64, None),
            MRule::Power { beta } => (nf.powf(beta).round() as u64, None),
            MRule::Explicit { m } => (m, None),
            MRule::BstHeight { margin } => {
                let h = ((REED_ALPHA + margin) * nf.ln()).ceil().max(0.0) as u32;
                if h > 62 {
                    return Err(Error::Config(format!("tree height {h} too large for n = {n}")));
                }
                ((1u64 << (h + 1)) - 1, Some(h))
            }
        };
        if m < n as u64 {
            return Err(Error::Config(format!("m rule gives m = {m} < n = {n}")));
        }
        Ok((m, height))
    }
}

/// Where [`emit_report`](super::emit_report) writes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputPaths {
    #[serde(default)]
    pub results_csv: Option<PathBuf>,
    #[serde(default)]
    pub summary_json: Option<PathBuf>,
    #[serde(default)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithm: AlgorithmId,
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub m_rule: MRule,
    #[serde(default = "default_mode")]
    pub arrival_mode: ArrivalMode,
    pub trials: u64,
    pub master_seed: u64,
    /// Tree height override for `sparse` and `general`.
    #[serde(default)]
    pub height: Option<u32>,
    /// Record per-trial wall time. Off by default: timings are the only
    /// non-reproducible field of a report.
    #[serde(default)]
    pub record_timing: bool,
    #[serde(default)]
    pub output: OutputPaths,
}

fn default_mode() -> ArrivalMode {
    ArrivalMode::UniformRandom
}

impl ExperimentConfig {
    pub fn new(algorithm: AlgorithmId, sizes: Vec<usize>, trials: u64, master_seed: u64) -> Self {
        Self {
            algorithm,
            sizes,
            m_rule: MRule::EqualN,
            arrival_mode: ArrivalMode::UniformRandom,
            trials,
            master_seed,
            height: None,
            record_timing: false,
            output: OutputPaths::default(),
        }
    }

    pub fn with_m_rule(mut self, rule: MRule) -> Self {
        self.m_rule = rule;
        self
    }

    pub fn with_arrival_mode(mut self, mode: ArrivalMode) -> Self {
        self.arrival_mode = mode;
        self
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::Config("no sizes given".into()));
        }
        if self.sizes[0] == 0 {
            return Err(Error::Config("sizes must be positive".into()));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("sizes must be strictly increasing".into()));
        }
        for &n in &self.sizes {
            self.m_rule.resolve(n)?;
        }
        Ok(())
    }

    /// Ranker parameters for size `n`.
    pub(crate) fn ranker_spec(&self, rule_height: Option<u32>) -> RankerSpec {
        RankerSpec {
            algorithm: self.algorithm,
            height: self.height.or(match self.algorithm {
                AlgorithmId::Sparse => rule_height,
                _ => None,
            }),
        }
    }
}
