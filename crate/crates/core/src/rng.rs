//! Deterministic random streams.
//!
//! Every stochastic component of the crate draws from a ChaCha8 stream whose
//! seed is derived here, so results are reproducible bit-for-bit from a
//! single `u64` master seed regardless of thread count or platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Derive an independent 256-bit seed from a master seed and a stream index
/// (restart number, stage number, ...) via SplitMix64.
pub fn derive_seed(master: u64, stream: u64) -> [u8; 32] {
    let mut state = master ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let mut next = || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_mut(8) {
        chunk.copy_from_slice(&next().to_le_bytes());
    }
    seed
}

pub fn stream(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(derive_seed(master, index))
}

/// Collapse a (master, stream) pair to a fresh u64 master seed.
pub fn mix(master: u64, stream: u64) -> u64 {
    u64::from_le_bytes(derive_seed(master, stream)[..8].try_into().unwrap())
}

/// Standard normal via the polar Box-Muller transform.
///
/// Hand-rolled (rather than a distributions crate) so the exact stream is
/// pinned by this code alone.
pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u: f64 = rng.gen_range(-1.0..1.0);
        let v: f64 = rng.gen_range(-1.0..1.0);
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

/// Uniform point on S^n (a unit vector in R^{n+1}).
pub fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim + 1).map(|_| gaussian(rng)).collect();
        let n = crate::geom::norm(&v);
        if n > 1e-6 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}
