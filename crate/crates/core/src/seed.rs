//! Stable seed derivation.
//!
//! Seeds have to be reproducible across platforms and toolchains, so this
//! avoids `std::hash` and uses SplitMix64 finalisation over FNV-1a.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG used for every seeded stream in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Folds a sequence of words into one seed.
pub fn mix(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x6A09_E667_F3BC_C908, |h, &p| splitmix64(h ^ splitmix64(p)))
}

/// Seed for run `run` of instance `instance_id` under `master`.
pub fn run_seed(master: u64, instance_id: &str, run: usize) -> u64 {
    mix(&[master, fnv1a(instance_id.as_bytes()), run as u64])
}
