use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// A reproducible random stream identified by `(seed, stream)`.
///
/// Streams with the same seed but different ids are independent ChaCha
/// streams, so callers can hand one to each sampled factor or worker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn generator(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Matrix of i.i.d. complex Gaussians with `E|z|^2 = variance`; real and
/// imaginary parts each carry `variance / 2`.
pub fn gaussian_complex(rng: RngStream, rows: usize, cols: usize, variance: f64) -> Result<ComplexMatrix> {
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::Parameter(format!("variance must be positive, got {variance}")));
    }
    let sd = (variance / 2.0).sqrt();
    let mut g = rng.generator();
    let data = (0..rows * cols)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut g);
            let im: f64 = StandardNormal.sample(&mut g);
            Complex64::new(sd * re, sd * im)
        })
        .collect();
    ComplexMatrix::from_row_major(rows, cols, data)
}

/// Deterministic unit vector used to seed iterative solvers.
pub(crate) fn unit_gaussian_vector(rng: RngStream, n: usize) -> Vec<Complex64> {
    let mut g = rng.generator();
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(&mut g), StandardNormal.sample(&mut g)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}
