//! Reproducible per-trial random streams.
//!
//! Trial `i` of a run seeded with `s` draws from a ChaCha8 stream keyed by
//! `substream_seed(s, i)`, so the outcome of a trial never depends on which
//! worker thread ran it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

/// The splitmix64 finalizer, a bijection on `u64`.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `mix(seed, trial) = splitmix64(seed + splitmix64(trial))`.
pub fn substream_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed.wrapping_add(splitmix64(trial)))
}

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(substream_seed(seed, trial))
}
