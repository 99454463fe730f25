//! Seeded randomness with named substreams.
//!
//! Every stochastic stage draws from its own ChaCha stream derived from the
//! run seed plus stage/index tags, so stages can be rerun or reordered
//! without disturbing each other's draws.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flt;

/// Stage tags for substream derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    ClutterProfile,
    ReceiverNoise,
    PointCloud,
    Clustering,
}

impl Stage {
    fn tag(self) -> u64 {
        match self {
            Stage::ClutterProfile => 0x11,
            Stage::ReceiverNoise => 0x22,
            Stage::PointCloud => 0x33,
            Stage::Clustering => 0x44,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a generator for `(seed, stage, a, b)`; `a`/`b` index the unit of
/// work (radar, window, ...).
pub fn substream(seed: u64, stage: Stage, a: u64, b: u64) -> ChaCha8Rng {
    let mut s = splitmix64(seed ^ stage.tag());
    s = splitmix64(s ^ a.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    s = splitmix64(s ^ b.wrapping_mul(0xc2b2_ae3d_27d4_eb4f));
    ChaCha8Rng::seed_from_u64(s)
}

/// Uniform draw in `[0, 1)` with 53 bits of precision.
#[inline]
pub fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// One standard-normal pair via Box-Muller.
pub fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // Reject u1 == 0 so the log stays finite.
    let mut u1 = unit_f64(rng);
    while u1 == 0.0 {
        u1 = unit_f64(rng);
    }
    let u2 = unit_f64(rng);
    let r = flt::sqrt(-2.0 * flt::ln(u1));
    let (s, c) = flt::sin_cos(core::f64::consts::TAU * u2);
    (r * c, r * s)
}
