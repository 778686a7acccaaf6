//! Seeded, splittable randomness.
//!
//! All randomness in the crate derives from a single `u64` seed. Independent
//! streams are addressed by a label and an instance index, so a sweep over
//! instances draws the same values regardless of execution order or thread
//! count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Generator for a bare seed.
pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Generator for instance `index` of the stream named `label` under `seed`.
pub fn stream(seed: u64, label: &str, index: u64) -> Rng {
    let mut rng = Rng::seed_from_u64(seed ^ fnv1a(label.as_bytes()));
    rng.set_stream(index);
    rng
}

// FNV-1a, 64 bit. Stable across platforms and toolchains, unlike std's hasher.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
