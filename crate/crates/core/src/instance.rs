//! Problem instances, arrival orders and per-trial randomness.
//!
//! Every random quantity in the crate is drawn from a [`TrialRng`] obtained
//! through [`derive_rng`]. The generator is ChaCha8 keyed by the master seed,
//! with the trial index selecting the ChaCha stream, so each
//! `(master_seed, trial_index)` pair owns an independent, platform-stable
//! sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator used for every trial.
pub type TrialRng = ChaCha8Rng;

/// Identifies one reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        Self {
            master_seed,
            trial_index,
        }
    }
}

/// Builds the generator for `seed`.
///
/// The master seed is expanded into a ChaCha key (`seed_from_u64`) and the
/// trial index becomes the 64-bit stream id, so distinct trials never share
/// keystream.
pub fn derive_rng(seed: SeedSpec) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.master_seed);
    rng.set_stream(seed.trial_index);
    rng
}

/// Uniform draw from `0..=upper` with 64-bit arithmetic on every platform.
///
/// `gen_range` on `u64` uses widening multiplication with rejection, so the
/// result carries no modulo bias.
pub(crate) fn uniform_index<R: Rng + ?Sized>(rng: &mut R, upper: usize) -> usize {
    rng.gen_range(0..=upper as u64) as usize
}

/// Order in which the true ranks are revealed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrivalMode {
    /// Uniformly random permutation.
    UniformRandom,
    /// Each step reveals either the smallest or the largest rank not yet
    /// seen, chosen by a fair coin.
    AdversarialMinMax,
}

impl ArrivalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ArrivalMode::UniformRandom => "uniform_random",
            ArrivalMode::AdversarialMinMax => "adversarial_min_max",
        }
    }
}

/// `n` elements arriving online into `m` positions.
///
/// `arrivals[t]` is the true rank (1-based) of the element arriving at step
/// `t` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    n: usize,
    m: u64,
    arrivals: Vec<usize>,
}

#[derive(Deserialize)]
struct RawInstance {
    n: usize,
    m: u64,
    arrivals: Vec<usize>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        Instance::new(raw.n, raw.m, raw.arrivals)
    }
}

impl Instance {
    /// Validates that `arrivals` is a permutation of `1..=n` and `m >= n`.
    pub fn new(n: usize, m: u64, arrivals: Vec<usize>) -> Result<Self> {
        check_dimensions(n, m)?;
        if arrivals.len() != n {
            return Err(Error::InvalidPlacement(format!(
                "expected {n} arrivals, got {}",
                arrivals.len()
            )));
        }
        let mut seen = vec![false; n];
        for &rank in &arrivals {
            if rank == 0 || rank > n || std::mem::replace(&mut seen[rank - 1], true) {
                return Err(Error::InvalidPlacement(format!(
                    "arrivals are not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Self { n, m, arrivals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn arrivals(&self) -> &[usize] {
        &self.arrivals
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub(crate) fn check_dimensions(n: usize, m: u64) -> Result<()> {
    if n == 0 || m < n as u64 {
        return Err(Error::InvalidDimensions { n, m });
    }
    Ok(())
}

/// Draws an instance from the stream identified by `seed`.
pub fn generate_instance(n: usize, m: u64, mode: ArrivalMode, seed: SeedSpec) -> Result<Instance> {
    let mut rng = derive_rng(seed);
    generate_instance_with(n, m, mode, &mut rng)
}

/// Same as [`generate_instance`] but consumes an existing generator, leaving
/// it positioned after the draws used for the arrival order.
pub fn generate_instance_with<R: Rng + ?Sized>(
    n: usize,
    m: u64,
    mode: ArrivalMode,
    rng: &mut R,
) -> Result<Instance> {
    check_dimensions(n, m)?;
    let arrivals = match mode {
        ArrivalMode::UniformRandom => uniform_permutation(n, rng),
        ArrivalMode::AdversarialMinMax => min_max_order(n, rng),
    };
    Ok(Instance { n, m, arrivals })
}

/// Fisher–Yates shuffle of `1..=n`.
fn uniform_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut ranks: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = uniform_index(rng, i);
        ranks.swap(i, j);
    }
    ranks
}

fn min_max_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    min_max_from_coins(n, || rng.gen::<bool>())
}

/// `take_min()` returning `true` emits the smallest remaining rank.
fn min_max_from_coins(n: usize, mut take_min: impl FnMut() -> bool) -> Vec<usize> {
    let (mut lo, mut hi) = (1, n);
    let mut out = Vec::with_capacity(n);
    while lo <= hi {
        if take_min() {
            out.push(lo);
            lo += 1;
        } else {
            out.push(hi);
            hi -= 1;
        }
    }
    out
}
