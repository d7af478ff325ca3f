//! Seed derivation. Every trial owns an independent ChaCha8 stream whose seed is a
//! pure function of `(base_seed, trial, stream)`, so results never depend on the
//! number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream used to place the real target of a trial.
pub const TARGET_STREAM: u64 = 0x7a72_6765_7400_0001;
/// Stream consumed by the searcher during a trial.
pub const SEARCH_STREAM: u64 = 0x7365_6172_6368_0002;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` under `base_seed`.
pub fn trial_seed(base_seed: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(base_seed) ^ trial.wrapping_mul(0xd1b5_4a32_d192_ed03))
}

/// Seed of one named stream inside a trial.
pub fn stream_seed(trial_seed: u64, stream: u64) -> u64 {
    splitmix64(trial_seed ^ splitmix64(stream))
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}
