//! Seeded random streams.
//!
//! Every random draw in the crate flows from a [`Stream`]: ChaCha8 keyed by a
//! `u64` seed, with an independent 64-bit stream id so parallel workers can
//! each take their own substream and still reproduce bit-for-bit.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub type Stream = ChaCha8Rng;

/// The stream for `seed` (stream id 0).
pub fn seeded(seed: u64) -> Stream {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Substream `id` of `seed`. Substreams of one seed never overlap.
pub fn substream(seed: u64, id: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Uniform draw from the open interval (0, 1), on a 2^-53 lattice offset by
/// half a step so neither endpoint can occur.
#[inline]
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    ((rng.next_u64() >> 11) as f64 + 0.5) * SCALE
}
