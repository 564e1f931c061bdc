//! Seeded sampling for the randomized suites.
//!
//! The generator is ChaCha8 as implemented by `rand_chacha` 0.3, seeded
//! with `seed_from_u64(seed)`. An index below `n` is `next_u64() % n`.
//! Reports name the generator through [`GENERATOR`]; replays of a sampled
//! run need only the seed and the sample count.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GENERATOR: &str = "chacha8-v1";

#[derive(Debug, Clone)]
pub struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform-ish index in `0..n`; `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    /// Seed for a derived stream.
    pub fn seed(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// A nonzero index in `1..n` when `n > 1`, else 0.
    pub fn nonidentity(&mut self, n: usize) -> usize {
        if n > 1 {
            1 + self.index(n - 1)
        } else {
            0
        }
    }
}
