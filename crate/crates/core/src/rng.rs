//! Seeded, reproducible randomness.
//!
//! Every simulation draws from a ChaCha stream keyed by a single 64-bit
//! seed. Each protocol round gets its own stream, derived from
//! `(seed, round index)`, so a run produces the same records whether the
//! rounds execute one after another or concurrently.

use rand_chacha::ChaCha12Rng;

use rand::SeedableRng;

/// Stream index reserved for the privacy-amplification hash seed, so key
/// hashing never shares randomness with any protocol round.
const HASH_SEED_STREAM: u64 = u64::MAX;

/// Generator for the given protocol round.
pub fn round_rng(seed: u64, round: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(round);
    rng
}

/// Generator for drawing a public universal-hash seed.
pub fn hash_seed_rng(seed: u64) -> ChaCha12Rng {
    round_rng(seed, HASH_SEED_STREAM)
}
