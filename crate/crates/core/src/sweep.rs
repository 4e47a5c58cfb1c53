//! Deterministic sampling for sweeps whose full range is infeasible.
//!
//! Quadruple sweeps (pairs of pairs) grow with the fourth power of the grid
//! size. When a sweep would exceed its cap, a fixed-seed shuffle picks the
//! sample, and the scope records exactly what was swept so reports can say
//! so.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fixed seed for every sampled sweep in this crate.
pub const SAMPLE_SEED: u64 = 0x00C0FFEE;

/// How a sweep's range was chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepScope {
    /// The entire range was swept.
    Full { count: usize },
    /// A fixed-seed sample of the range was swept.
    Sampled { count: usize, of: usize, seed: u64 },
}

impl fmt::Display for SweepScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepScope::Full { count } => write!(f, "full range of {count}"),
            SweepScope::Sampled { count, of, seed } => {
                write!(f, "{count} of {of}, seed {seed:#x}")
            }
        }
    }
}

/// A selected sample with its provenance.
pub struct PairSample<T> {
    pub items: Vec<T>,
    pub scope: SweepScope,
}

/// Sample `cap` indices out of `0..total` with the fixed seed, without
/// materializing the range; the whole range when it fits under the cap.
pub fn select_indices(total: usize, cap: usize) -> PairSample<usize> {
    if total <= cap {
        return PairSample {
            items: (0..total).collect(),
            scope: SweepScope::Full { count: total },
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut items = rand::seq::index::sample(&mut rng, total, cap).into_vec();
    items.sort_unstable();
    PairSample {
        items,
        scope: SweepScope::Sampled { count: cap, of: total, seed: SAMPLE_SEED },
    }
}

/// Keep the whole list when it fits under the cap, otherwise take a
/// fixed-seed random sample of `cap` items.
pub fn select_pairs<T>(items: Vec<T>, cap: usize) -> PairSample<T> {
    let total = items.len();
    if total <= cap {
        return PairSample { items, scope: SweepScope::Full { count: total } };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut indices: Vec<usize> = (0..total).collect();
    indices.shuffle(&mut rng);
    indices.truncate(cap);
    indices.sort_unstable();
    let mut picked = Vec::with_capacity(cap);
    let mut iter = indices.into_iter().peekable();
    for (i, item) in items.into_iter().enumerate() {
        match iter.peek() {
            Some(&next) if next == i => {
                picked.push(item);
                iter.next();
            }
            _ => {}
        }
    }
    PairSample {
        items: picked,
        scope: SweepScope::Sampled { count: cap, of: total, seed: SAMPLE_SEED },
    }
}
