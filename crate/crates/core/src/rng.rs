//! Seeded random streams.
//!
//! Every random quantity in the crate comes from a [`SimRng`] built by
//! [`stream_rng`]: ChaCha8 keyed by a 64-bit seed, with the stream index
//! selecting one of 2^64 independent sequences. Work split into chunks gives
//! each chunk its own stream, so the output does not depend on which thread
//! ran which chunk.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Random stream `stream` under root `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for cell `(i, j, k)` of a grid run under `root`.
///
/// `splitmix64(root ^ splitmix64(i << 42 | j << 21 | k))`. Each index must fit
/// in 21 bits.
pub fn derive_cell_seed(root: u64, i: usize, j: usize, k: usize) -> u64 {
    debug_assert!(i < 1 << 21 && j < 1 << 21 && k < 1 << 21);
    let packed = ((i as u64) << 42) | ((j as u64) << 21) | k as u64;
    splitmix64(root ^ splitmix64(packed))
}

/// Seed for the `tag`-th named entry under `root`: `splitmix64(root ^ (tag << 56))`.
pub fn derive_named_seed(root: u64, tag: u8) -> u64 {
    splitmix64(root ^ ((tag as u64) << 56))
}
