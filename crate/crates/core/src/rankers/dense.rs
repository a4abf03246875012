use std::io::Write;

use rand::Rng;
use serde::Serialize;

use super::{probe_vs, AlgorithmId, Comparator, OnlineRanker};
use crate::error::Result;
use crate::instance::TrialRng;
use crate::order::{FreePositionSet, RelativeRankIndex};

/// One step of a dense placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DenseStep {
    /// 1-based step within this dense instance.
    pub t: usize,
    /// Earlier elements of this instance smaller than the current one.
    pub r: usize,
    pub x: f64,
    pub erank: u64,
    pub position: u64,
}

/// Estimation plus nearest-free assignment over local positions `1..=slots`.
///
/// `scale` is the `n` in the estimate `x ∈ [r·n/t, (r+1)·n/t]`; when
/// `slots != scale` the estimate is stretched by `slots / scale` before
/// rounding.
#[derive(Debug, Clone)]
pub(crate) struct DenseCore {
    scale: usize,
    slots: u64,
    noise: bool,
    index: RelativeRankIndex<usize>,
    free: FreePositionSet,
}

impl DenseCore {
    pub(crate) fn new(scale: usize, slots: u64, noise: bool) -> Self {
        Self {
            scale,
            slots,
            noise,
            index: RelativeRankIndex::new(),
            free: FreePositionSet::new(slots),
        }
    }

    pub(crate) fn steps(&self) -> usize {
        self.index.len()
    }

    pub(crate) fn has_room(&self) -> bool {
        !self.free.is_empty()
    }

    /// Marks a local position as used by someone else.
    pub(crate) fn block(&mut self, local: u64) {
        if self.free.contains(local) {
            self.free.take(local).expect("checked free");
        }
    }

    pub(crate) fn place<R: Rng + ?Sized>(
        &mut self,
        arrival: usize,
        cmp: &mut dyn Comparator,
        rng: Option<&mut R>,
    ) -> Result<DenseStep> {
        let r = self.index.insert_by(arrival, |&earlier| probe_vs(cmp, earlier))?;
        let t = self.index.len();
        let width = self.scale as f64 / t as f64;
        let x = match (self.noise, rng) {
            (true, Some(rng)) => {
                let u: f64 = rng.gen();
                r as f64 * width + u * width
            }
            _ => (r as f64 + 0.5) * width,
        };
        let stretched = if self.slots == self.scale as u64 {
            x
        } else {
            x * self.slots as f64 / self.scale as f64
        };
        let erank = (stretched.ceil() as u64).clamp(1, self.slots);
        let position = self.free.nearest_free(erank)?;
        self.free.take(position)?;
        Ok(DenseStep {
            t,
            r,
            x,
            erank,
            position,
        })
    }
}

/// Dense ranking with `m = n`, its noiseless ablation, and the scaled
/// variant for `n <= m`.
#[derive(Debug)]
pub struct DenseRanker {
    algorithm: AlgorithmId,
    core: DenseCore,
    rng: Option<TrialRng>,
    trace: Vec<DenseStep>,
}

impl DenseRanker {
    /// Randomized estimate, `n` positions.
    pub fn new(n: usize, rng: TrialRng) -> Self {
        Self {
            algorithm: AlgorithmId::Dense,
            core: DenseCore::new(n, n as u64, true),
            rng: Some(rng),
            trace: Vec::with_capacity(n),
        }
    }

    /// Deterministic estimate `(r + 1/2)·n/t`.
    pub fn noiseless(n: usize) -> Self {
        Self {
            algorithm: AlgorithmId::Noiseless,
            core: DenseCore::new(n, n as u64, false),
            rng: None,
            trace: Vec::with_capacity(n),
        }
    }

    /// Randomized estimate stretched by `m / n` onto `m` positions.
    pub fn scaled(n: usize, m: u64, rng: TrialRng) -> Self {
        Self {
            algorithm: AlgorithmId::ScaledDense,
            core: DenseCore::new(n, m, true),
            rng: Some(rng),
            trace: Vec::with_capacity(n),
        }
    }

    pub fn trace(&self) -> &[DenseStep] {
        &self.trace
    }
}

impl OnlineRanker for DenseRanker {
    fn algorithm(&self) -> AlgorithmId {
        self.algorithm
    }

    fn positions(&self) -> u64 {
        self.core.slots
    }

    fn place(&mut self, cmp: &mut dyn Comparator) -> Result<u64> {
        let arrival = self.core.steps();
        let step = self.core.place(arrival, cmp, self.rng.as_mut())?;
        self.trace.push(step);
        Ok(step.position)
    }
}

/// Writes `t,r_t,x_t,erank,pi` rows.
pub fn write_dense_trace<W: Write>(mut out: W, steps: &[DenseStep]) -> std::io::Result<()> {
    writeln!(out, "t,r_t,x_t,erank,pi")?;
    for s in steps {
        writeln!(out, "{},{},{},{},{}", s.t, s.r, s.x, s.erank, s.position)?;
    }
    Ok(())
}
