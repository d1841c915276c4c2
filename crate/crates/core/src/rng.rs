//! Seeded Gaussian draws. Every random quantity in the crate comes from here.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::Matrix;

/// Deterministic standard-normal stream keyed by a `u64` seed.
pub struct GaussianStream {
    rng: ChaCha8Rng,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn vector(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.sample()).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| self.sample())
    }

    /// Fresh seed for a derived stream.
    pub fn fork(&mut self) -> u64 {
        self.rng.random()
    }
}

pub fn gaussian_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    GaussianStream::new(seed).matrix(rows, cols)
}

pub fn gaussian_vector(len: usize, seed: u64) -> Vec<f64> {
    GaussianStream::new(seed).vector(len)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        assert_eq!(gaussian_matrix(3, 4, 9), gaussian_matrix(3, 4, 9));
        assert_ne!(gaussian_matrix(3, 4, 9), gaussian_matrix(3, 4, 10));
    }
}
