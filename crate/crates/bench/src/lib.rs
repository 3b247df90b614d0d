//! Shared fixtures for the criterion benchmarks.

use hwmap::rng::SplitMix64;
use hwmap::{ComplexMatrix, WeightVector};

pub fn hermitian(n: usize, seed: u64) -> ComplexMatrix {
    SplitMix64::new(seed).hermitian(n)
}

/// Signed weights in `[-1, 1)`.
pub fn weights(d: usize, seed: u64) -> WeightVector {
    let mut rng = SplitMix64::new(seed);
    WeightVector::new(d, (0..d * d).map(|_| rng.uniform(-1.0, 1.0)).collect()).expect("d >= 2")
}
