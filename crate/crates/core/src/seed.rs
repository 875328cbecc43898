//! Sub-seed derivation.
//!
//! Every random choice in a run comes from one user seed. Each consumer gets
//! its own ChaCha8 stream seeded with `splitmix64(seed ^ purpose)`, so that
//! e.g. the generator and the phase-1 class assignment never share state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Distinct purposes that draw randomness from a run seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    /// Random vertex-to-class assignment of the coloring algorithms.
    PhaseOne = 0x5048_4153_4531,
    /// Graph generator.
    Generate = 0x4745_4e45_5241,
    /// Arrival-order shuffling.
    Order = 0x4f52_4445_5221,
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, purpose: Purpose) -> u64 {
    splitmix64(seed ^ purpose as u64)
}

pub fn rng_for(seed: u64, purpose: Purpose) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, purpose))
}
