//! The one-parameter family `Re(e^{iθ}A) = cos θ · H − sin θ · K`.

use num_complex::Complex64;

use super::eigen::{dense_top, EigenPair, KrylovSolver, DENSE_CUTOFF};
use super::kernel::SplitSquare;
use super::{ComplexMatrix, RngStream};
use crate::error::{Error, Result};

/// Previous eigenvectors used to extrapolate a start vector.
const HISTORY: usize = 4;

/// Top eigenpair of `Re(e^{iθ}A)` and the boundary point `y^* A y`.
#[derive(Clone, Debug)]
pub struct RotatedTop {
    pub theta: f64,
    pub pair: EigenPair,
    pub point: Complex64,
}

pub struct RotatedFamily {
    a: SplitSquare,
    h: SplitSquare,
    k: SplitSquare,
}

impl RotatedFamily {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::Contract(format!(
                "rotated Hermitian parts need a non-empty square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let a = SplitSquare::from_matrix(a);
        let (h, k) = a.hermitian_parts();
        Ok(Self { a, h, k })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    fn at(&self, theta: f64) -> SplitSquare {
        let (s, c) = theta.sin_cos();
        self.h.combine(c, &self.k, -s)
    }

    /// `Re(e^{iθ}A)` as a dense matrix (exactly Hermitian).
    pub fn rotated(&self, theta: f64) -> ComplexMatrix {
        self.at(theta).to_matrix()
    }

    /// Solves the angles in order, warm-starting each from the previous ones.
    /// The output depends only on `thetas` and `rng`.
    pub fn top_run(&self, thetas: &[f64], rng: RngStream) -> Result<Vec<RotatedTop>> {
        let n = self.dim();
        let solver = KrylovSolver { rng, ..KrylovSolver::default() };
        let mut out: Vec<RotatedTop> = Vec::with_capacity(thetas.len());
        let mut ay = vec![Complex64::new(0.0, 0.0); n];
        for (idx, &theta) in thetas.iter().enumerate() {
            let h = self.at(theta);
            let pair = if n <= DENSE_CUTOFF {
                dense_top(&h.to_matrix())?
            } else {
                let start = extrapolate(&out, theta);
                solver.top_split(&h, start.as_deref()).map_err(|e| match e {
                    Error::Convergence(msg) => Error::Convergence(format!("{msg} at theta={theta} (index {idx})")),
                    other => other,
                })?
            };
            self.a.apply(&pair.vector, &mut ay);
            let point = pair.vector.iter().zip(&ay).map(|(y, w)| y.conj() * w).sum();
            out.push(RotatedTop { theta, pair, point });
        }
        Ok(out)
    }
}

/// Lagrange extrapolation through the last few eigenvectors (phase-aligned),
/// falling back to the latest vector when the weights blow up.
fn extrapolate(history: &[RotatedTop], theta: f64) -> Option<Vec<Complex64>> {
    let last = history.last()?;
    let used = &history[history.len().saturating_sub(HISTORY)..];
    let nodes: Vec<f64> = used.iter().map(|t| t.theta).collect();
    let weights: Vec<f64> = (0..nodes.len())
        .map(|j| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != j)
                .map(|(_, &x)| (theta - x) / (nodes[j] - x))
                .product()
        })
        .collect();
    if weights.iter().any(|w| !w.is_finite()) || weights.iter().map(|w| w.abs()).sum::<f64>() > 16.0 {
        return Some(last.pair.vector.clone());
    }
    // Align phases newest to oldest so the vectors vary smoothly.
    let mut aligned: Vec<Vec<Complex64>> = vec![last.pair.vector.clone()];
    for t in used.iter().rev().skip(1) {
        let newer = aligned.last().unwrap();
        let overlap: Complex64 = t.pair.vector.iter().zip(newer).map(|(x, y)| x.conj() * y).sum();
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
        aligned.push(t.pair.vector.iter().map(|x| x * phase).collect());
    }
    aligned.reverse();
    let mut v = vec![Complex64::new(0.0, 0.0); last.pair.vector.len()];
    for (w, vec) in weights.iter().zip(&aligned) {
        for (o, x) in v.iter_mut().zip(vec) {
            *o += x * *w;
        }
    }
    Some(v)
}
