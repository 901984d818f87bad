//! Shared generators for the recall benchmarks.

use fuzzymm::{FundamentalMemorySet, FuzzyVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Deterministic random vector in [0, 1]^n.
pub fn random_vector(rng: &mut ChaCha12Rng, n: usize) -> FuzzyVector {
    FuzzyVector::new((0..n).map(|_| rng.gen_range(0.0..=1.0)).collect())
        .expect("sampled components are in range")
}

/// Deterministic memory set of k vectors in [0, 1]^n.
pub fn random_memories(seed: u64, k: usize, n: usize) -> FundamentalMemorySet {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    FundamentalMemorySet::new((0..k).map(|_| random_vector(&mut rng, n)).collect())
        .expect("sampled memories are valid")
}

/// A probe near the first stored vector: componentwise jitter of +-0.05.
pub fn jittered_probe(seed: u64, memories: &FundamentalMemorySet) -> FuzzyVector {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let first = memories.get(0);
    FuzzyVector::new(
        first
            .iter()
            .map(|&v| (v + rng.gen_range(-0.05..=0.05)).clamp(0.0, 1.0))
            .collect(),
    )
    .expect("jittered components are in range")
}
