use std::path::PathBuf;

/// Errors raised across the library and the CLI.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied parameter is out of range (N = 0, tau outside [0, 1], ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An input violates an operation's precondition (shape, Hermiticity, grid mismatch).
    #[error("contract violation: {0}")]
    Contract(String),
    /// A mathematical invariant that must hold did not (root count, closed-form cross-check).
    #[error("internal consistency error: {0}")]
    Consistency(String),
    /// Half-plane intersection or boundary sampling failed.
    #[error("geometry error: {0}")]
    Geometry(String),
    /// An iterative solver ran out of iterations.
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Parameter(format!("tau must lie in [0, 1], got {tau}")));
    }
    Ok(())
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::Parameter(format!(
            "alpha must be finite and non-negative, got {alpha}"
        )));
    }
    Ok(())
}
