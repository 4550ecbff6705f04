//! Counter-based random streams.
//!
//! Every trial gets its own generator derived from `(seed, trial)`, so
//! results do not depend on scheduling or thread count and merge
//! order-insensitively.

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

/// SplitMix64 finalizer, used to spread `(seed, trial)` into a generator key.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for one trial of one experiment: `stream(seed, trial)`.
pub fn trial_rng(seed: u64, trial: u64) -> SmallRng {
    SmallRng::seed_from_u64(mix(seed ^ mix(trial.wrapping_mul(0xd605_bbb5_8c8a_bc2d))))
}

/// Bernoulli(p) draw via a thresholded uniform `u64`.
///
/// Thresholding (rather than skip sampling) keeps the common-random-numbers
/// coupling exact: with the same stream, raising `p` can only add sites.
pub fn bernoulli(rng: &mut SmallRng, p: f64) -> bool {
    rng.random::<u64>() < p_threshold(p)
}

fn p_threshold(p: f64) -> u64 {
    if p <= 0.0 {
        0
    } else if p >= 1.0 {
        u64::MAX
    } else {
        // floor(p * 2^64), computed without overflowing f64->u64 conversion
        (p * 18_446_744_073_709_551_616.0).min(u64::MAX as f64) as u64
    }
}
