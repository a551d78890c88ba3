//! Extremal eigenpairs of Hermitian matrices.
//!
//! Small matrices go through a dense Hermitian decomposition. Larger ones use a
//! thick-restart Krylov (Lanczos with full reorthogonalisation) iteration that
//! only ever touches the matrix through products, and that accepts a warm start
//! vector so θ-sweeps can reuse the previous angle's eigenvector.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::rng::{unit_gaussian_vector, RngStream};
use super::kernel::SplitSquare;
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest dimension handled by the dense path in [`hermitian_top_eigenpair`].
pub const DENSE_CUTOFF: usize = 48;

/// Residual target used internally; the returned pair is accepted at twice
/// this, which stays inside the advertised `1e-8`.
const RESIDUAL_TOL: f64 = 5e-9;

/// Relative weight of the seeded noise mixed into warm starts.
const START_NOISE: f64 = 1e-1;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit-norm eigenvector.
    pub vector: Vec<Complex64>,
}

impl EigenPair {
    /// `‖A v − λ v‖₂`.
    pub fn residual(&self, a: &ComplexMatrix) -> f64 {
        let av = a.matvec(&self.vector);
        av.iter()
            .zip(&self.vector)
            .map(|(x, v)| (x - v * self.value).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn require_hermitian(a: &ComplexMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Contract(format!(
            "expected a square Hermitian matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() == 0 {
        return Err(Error::Contract("empty matrix".into()));
    }
    if !a.is_hermitian() {
        return Err(Error::Contract(format!(
            "matrix is not Hermitian (defect {:e})",
            a.hermitian_defect()
        )));
    }
    Ok(())
}

/// Algebraically largest eigenvalue and a unit eigenvector.
pub fn hermitian_top_eigenpair(a: &ComplexMatrix) -> Result<EigenPair> {
    require_hermitian(a)?;
    if a.rows() <= DENSE_CUTOFF {
        return dense_top(a);
    }
    KrylovSolver::default().top(a, None)
}

/// `(λ_min, λ_max)` of a Hermitian matrix.
pub fn hermitian_extremal_eigenvalues(a: &ComplexMatrix) -> Result<(f64, f64)> {
    require_hermitian(a)?;
    if a.rows() <= DENSE_CUTOFF {
        let values = dense_eigenvalues(a);
        return Ok((values[0], values[values.len() - 1]));
    }
    let solver = KrylovSolver::default();
    let top = solver.top(a, None)?;
    let bottom = solver.top(&a.scale_real(-1.0), None)?;
    Ok((-bottom.value, top.value))
}

/// All eigenvalues of a Hermitian matrix, ascending (dense decomposition).
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    require_hermitian(a)?;
    Ok(dense_eigenvalues(a))
}

fn dense_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(a.to_nalgebra()).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

pub(crate) fn dense_top(a: &ComplexMatrix) -> Result<EigenPair> {
    let eig = SymmetricEigen::new(a.to_nalgebra());
    let (idx, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .ok_or_else(|| Error::Contract("empty matrix".into()))?;
    let mut vector: Vec<Complex64> = eig.eigenvectors.column(idx).iter().copied().collect();
    normalize(&mut vector);
    Ok(EigenPair { value, vector })
}

/// Eigenvalues of a general square complex matrix via complex Schur form.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::Contract(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let schur = nalgebra::Schur::try_new(a.to_nalgebra(), f64::EPSILON, 1000 * n.max(10))
        .ok_or_else(|| Error::Convergence(format!("Schur iteration on a {n}x{n} matrix")))?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Thick-restart Lanczos iteration (full reorthogonalisation) for the largest
/// eigenpair.
#[derive(Clone, Debug)]
pub struct KrylovSolver {
    /// Maximum Krylov basis size before a restart.
    pub max_basis: usize,
    /// Ritz vectors carried across a restart.
    pub keep: usize,
    pub max_restarts: usize,
    /// Relative residual target: `‖Av − λv‖ ≤ tol·(1+|λ|)`.
    pub tol: f64,
    /// Seed for the default start vector and for breakdown refills.
    pub rng: RngStream,
}

impl Default for KrylovSolver {
    fn default() -> Self {
        Self {
            max_basis: 40,
            keep: 10,
            max_restarts: 500,
            tol: RESIDUAL_TOL,
            rng: RngStream::new(0x5eed_0f_4a11, 0),
        }
    }
}

/// Lanczos steps between Ritz convergence checks.
const CHECK_EVERY: usize = 8;

impl KrylovSolver {
    /// Largest eigenpair of the Hermitian matrix `a`. `start`, when given, seeds
    /// the Krylov space (a nearby eigenvector makes convergence fast).
    pub fn top(&self, a: &ComplexMatrix, start: Option<&[Complex64]>) -> Result<EigenPair> {
        self.top_split(&SplitSquare::from_matrix(a), start)
    }

    pub(crate) fn top_split(&self, a: &SplitSquare, start: Option<&[Complex64]>) -> Result<EigenPair> {
        let n = a.dim();
        let m = self.max_basis.clamp(2, n.max(2)).min(n);
        let keep = self.keep.clamp(1, m.saturating_sub(1).max(1));
        let mut refill = 0u64;
        let mut next_refill = || {
            refill += 1;
            unit_gaussian_vector(RngStream::new(self.rng.seed, self.rng.stream.wrapping_add(refill)), n)
        };

        let mut v0 = unit_gaussian_vector(self.rng, n);
        match start {
            Some(s) if s.len() != n => {
                return Err(Error::Contract(format!("start vector has length {}, expected {n}", s.len())))
            }
            Some(s) if norm(s) > 0.0 => {
                // A little noise keeps every eigendirection in the Krylov space,
                // so a start lying in a lower invariant subspace cannot stall.
                let nrm = norm(s);
                for (v, x) in v0.iter_mut().zip(s) {
                    *v = x / nrm + *v * START_NOISE;
                }
            }
            _ => {}
        }
        normalize(&mut v0);

        let mut basis: Vec<Vec<Complex64>> = vec![v0];
        // Projected matrix Q^* A Q, row-major with side `basis.len()`.
        let mut proj: Vec<Vec<Complex64>> = Vec::new();
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        let mut since_check = 0;

        for _ in 0..self.max_restarts {
            // Residual direction f with A Q = Q T + f e_k^*.
            let mut f;
            loop {
                let j = proj.len();
                a.apply(&basis[j], &mut w);
                f = w.clone();
                let col = project_out(&mut f, &basis);
                for (i, row) in proj.iter_mut().enumerate() {
                    row.push(col[i]);
                }
                let mut row: Vec<Complex64> = col.iter().map(|z| z.conj()).collect();
                row[j] = Complex64::new(col[j].re, 0.0);
                proj.push(row);
                since_check += 1;

                let k = basis.len();
                if k >= m || k == n || since_check >= CHECK_EVERY {
                    break;
                }
                let fnorm = norm(&f);
                if fnorm <= 1e-10 * norm(&w).max(f64::MIN_POSITIVE) {
                    break;
                }
                f.iter_mut().for_each(|z| *z /= fnorm);
                basis.push(f.clone());
            }
            since_check = 0;

            let k = basis.len();
            let eig = SymmetricEigen::new(DMatrix::from_fn(k, k, |i, j| proj[i][j]));
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
            let theta = eig.eigenvalues[order[0]];
            let fnorm = norm(&f);
            let estimate = fnorm * eig.eigenvectors[(k - 1, order[0])].norm();
            let target = self.tol * (1.0 + theta.abs());

            let ritz = |col: usize, basis: &[Vec<Complex64>]| -> Vec<Complex64> {
                let mut out = vec![Complex64::new(0.0, 0.0); n];
                for (s, v) in eig.eigenvectors.column(col).iter().zip(basis) {
                    for (o, x) in out.iter_mut().zip(v) {
                        *o += s * x;
                    }
                }
                out
            };

            if estimate <= target || k == n {
                let mut vector = ritz(order[0], &basis);
                normalize(&mut vector);
                a.apply(&vector, &mut w);
                let res = w.iter().zip(&vector).map(|(p, q)| (p - q * theta).norm_sqr()).sum::<f64>().sqrt();
                if res <= 2.0 * target || k == n {
                    return Ok(EigenPair { value: theta, vector });
                }
            }

            let breakdown = fnorm <= 1e-10 * norm(&w).max(f64::MIN_POSITIVE);
            if k < m && !breakdown {
                let mut next = f;
                normalize(&mut next);
                basis.push(next);
                continue;
            }

            // Thick restart onto the leading Ritz vectors; their residuals are
            // all parallel to f, which becomes the next basis vector.
            let kept: Vec<usize> = order.iter().copied().take(keep.min(k)).collect();
            let new_basis: Vec<Vec<Complex64>> = kept.iter().map(|&c| ritz(c, &basis)).collect();
            proj = kept
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let mut row = vec![Complex64::new(0.0, 0.0); kept.len()];
                    row[i] = Complex64::new(eig.eigenvalues[c], 0.0);
                    row
                })
                .collect();
            basis = new_basis;
            let mut next = if breakdown { next_refill() } else { f };
            project_out(&mut next, &basis);
            if norm(&next) <= 1e-8 {
                next = next_refill();
                project_out(&mut next, &basis);
            }
            normalize(&mut next);
            basis.push(next);
        }
        Err(Error::Convergence(format!(
            "Krylov top eigenpair of a {n}x{n} matrix after {} restarts",
            self.max_restarts
        )))
    }
}

/// `x^* y` with independent partial sums so the loop vectorises.
fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    const W: usize = 4;
    let mut re = [0.0f64; W];
    let mut im = [0.0f64; W];
    for (a, b) in x.chunks_exact(W).zip(y.chunks_exact(W)) {
        for l in 0..W {
            re[l] += a[l].re * b[l].re + a[l].im * b[l].im;
            im[l] += a[l].re * b[l].im - a[l].im * b[l].re;
        }
    }
    let tail = x.len() - x.len() % W;
    let head = Complex64::new(re.iter().sum(), im.iter().sum());
    head + x[tail..].iter().zip(&y[tail..]).map(|(a, b)| a.conj() * b).sum::<Complex64>()
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(x: &mut [Complex64]) {
    let nrm = norm(x);
    if nrm > 0.0 {
        x.iter_mut().for_each(|z| *z /= nrm);
    }
}

/// Removes the span of `basis` from `x` (classical Gram–Schmidt, two passes)
/// and returns the total coefficients `Q^* x`.
fn project_out(x: &mut [Complex64], basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut total = vec![Complex64::new(0.0, 0.0); basis.len()];
    for _ in 0..2 {
        let coeffs: Vec<Complex64> = basis.iter().map(|b| dot(b, x)).collect();
        for ((c, b), t) in coeffs.iter().zip(basis).zip(total.iter_mut()) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi -= c * bi;
            }
            *t += c;
        }
    }
    total
}
