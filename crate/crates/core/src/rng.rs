//! Seeded random streams.
//!
//! Every randomized choice draws from a ChaCha stream derived from the user
//! seed and a fixed purpose tag, so one seed reproduces a whole run.

use core::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::C;

pub type SeededRng = ChaCha8Rng;

pub mod tag {
    pub const LENGTHS: u64 = 1;
    pub const GAMMA: u64 = 2;
    pub const SLICE: u64 = 3;
    pub const RANDOMIZE: u64 = 4;
    pub const MONODROMY: u64 = 5;
    pub const CERTIFY: u64 = 6;
}

/// Independent stream for `(seed, tag)`.
pub fn stream(seed: u64, tag: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag);
    rng
}

/// Derives a child seed, used when an operation re-runs itself.
pub fn child_seed(seed: u64, salt: u64) -> u64 {
    stream(seed, 0x5eed_0000 + salt).gen()
}

/// Point on the unit circle.
pub fn unit_complex(rng: &mut impl Rng) -> C {
    C::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Complex number with modulus in `[0.5, 1.5)` and uniform argument.
pub fn random_complex(rng: &mut impl Rng) -> C {
    C::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..TAU))
}
