//! Counter-based random streams for Monte Carlo walks.
//!
//! Every walk draws from a ChaCha8 stream selected by `(seed, walk_index)`, so
//! the numbers a walk sees do not depend on which thread runs it or in which
//! order walks are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for walk `index` under `seed`.
pub fn walk_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Derives an independent seed for a sub-task (e.g. one zero of a sequence).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    splitmix64(seed ^ splitmix64(tag.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
