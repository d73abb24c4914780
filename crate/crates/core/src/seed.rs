//! Seed derivation for reproducible multi-run experiments.
//!
//! Every stochastic routine in the crate takes a `u64` seed and builds its own
//! [`SimRng`]. Batches derive one sub-seed per run from a master seed with
//! [`sub_seed`], which is injective in the run index for a fixed master seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// RNG used throughout the crate. ChaCha8 output is stable across platforms
/// and crate versions, which keeps traces byte-reproducible.
pub type SimRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer. A bijection on `u64`.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for stream `index` under `master`.
///
/// `master + GOLDEN_GAMMA * (index + 1)` is distinct for every index below
/// 2^64 because the multiplier is odd, and `mix64` is a bijection, so two
/// indices never share a stream.
pub fn sub_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Named sub-streams of a single run seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Graph = 0,
    Thresholds = 1,
    Dynamics = 2,
    Baseline = 3,
}

pub fn stream_seed(run_seed: u64, stream: Stream) -> u64 {
    sub_seed(run_seed, stream as u64)
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}
