//! Seeded, platform-independent signal generation for checks and sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::specfun::ComplexValue;

pub const DEFAULT_SEED: u64 = 0x5EED_D1F7;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex samples with components uniform on [-1, 1).
pub fn random_signal<R: Rng>(rng: &mut R, len: usize) -> Vec<ComplexValue> {
    (0..len)
        .map(|_| ComplexValue::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn random_complex<R: Rng>(rng: &mut R) -> ComplexValue {
    ComplexValue::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}
