//! Dense complex matrices, seeded Gaussian sampling and Hermitian eigensolvers.

mod eigen;
mod family;
mod kernel;
mod matrix;
mod rng;

pub use eigen::{
    eigenvalues, hermitian_eigenvalues, hermitian_extremal_eigenvalues, hermitian_top_eigenpair, EigenPair,
    KrylovSolver, DENSE_CUTOFF,
};
pub use family::{RotatedFamily, RotatedTop};
pub use matrix::ComplexMatrix;
pub(crate) use matrix::hermitian_from_upper;
pub use rng::{gaussian_complex, RngStream};
