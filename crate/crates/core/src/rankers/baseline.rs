use super::{AlgorithmId, Comparator, OnlineRanker};
use crate::error::{Error, Result};
use crate::instance::{uniform_index, TrialRng};
use crate::order::FreePositionSet;
use rand::Rng;

/// Pool sizes up to this bound are materialized.
const MAX_POOL: u64 = 1 << 22;

#[derive(Debug)]
enum FreeSlots {
    /// Every free position, in arbitrary order.
    Pool(Vec<u64>),
    /// Sparse occupancy; free fraction stays above 3/4.
    Sampled(FreePositionSet),
}

/// Places each arrival at a uniformly random free position, ignoring all
/// comparisons.
#[derive(Debug)]
pub struct RandomRanker {
    m: u64,
    slots: FreeSlots,
    rng: TrialRng,
}

impl RandomRanker {
    pub fn new(n: usize, m: u64, rng: TrialRng) -> Self {
        let slots = if m <= MAX_POOL.max(4 * n as u64) {
            FreeSlots::Pool((1..=m).collect())
        } else {
            FreeSlots::Sampled(FreePositionSet::new(m))
        };
        Self { m, slots, rng }
    }
}

impl OnlineRanker for RandomRanker {
    fn algorithm(&self) -> AlgorithmId {
        AlgorithmId::Random
    }

    fn positions(&self) -> u64 {
        self.m
    }

    fn place(&mut self, _cmp: &mut dyn Comparator) -> Result<u64> {
        match &mut self.slots {
            FreeSlots::Pool(pool) => {
                if pool.is_empty() {
                    return Err(Error::EmptySet);
                }
                let i = uniform_index(&mut self.rng, pool.len() - 1);
                Ok(pool.swap_remove(i))
            }
            FreeSlots::Sampled(free) => {
                if free.is_empty() {
                    return Err(Error::EmptySet);
                }
                loop {
                    let p = self.rng.gen_range(1..=self.m);
                    if free.contains(p) {
                        free.take(p)?;
                        return Ok(p);
                    }
                }
            }
        }
    }
}
