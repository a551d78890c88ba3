//! Random-matrix numerical ranges: ensemble sampling, support-function
//! sweeps, closed-form limiting shapes and their comparison.

pub mod cli;
pub mod ensembles;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod numrange;
pub mod theory;
pub mod validation;

pub use error::{Error, Result};
