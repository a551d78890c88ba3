//! Numerical ranges through the support function `θ ↦ λ_max(Re(e^{iθ}A))`.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::convex_hull;
use crate::linalg::{hermitian_from_upper, ComplexMatrix, RngStream, RotatedFamily};

/// Default number of sweep angles.
pub const DEFAULT_THETAS: usize = 720;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Empirical,
    Theoretical,
}

/// Support values on a strictly increasing angle grid in `[0, 2π)`, with
/// optional boundary points `z(θ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportCurve {
    thetas: Vec<f64>,
    values: Vec<f64>,
    points: Option<Vec<Complex64>>,
    provenance: Provenance,
}

/// `count` equally spaced angles `2πk/count`.
pub fn uniform_thetas(count: usize) -> Vec<f64> {
    (0..count).map(|k| TAU * k as f64 / count as f64).collect()
}

fn check_grid(thetas: &[f64]) -> Result<()> {
    if thetas.is_empty() {
        return Err(Error::Contract("angle grid is empty".into()));
    }
    if thetas.iter().any(|t| !(0.0..TAU).contains(t)) {
        return Err(Error::Contract("angles must lie in [0, 2π)".into()));
    }
    if thetas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Contract("angles must be strictly increasing".into()));
    }
    Ok(())
}

impl SupportCurve {
    pub fn new(
        thetas: Vec<f64>,
        values: Vec<f64>,
        points: Option<Vec<Complex64>>,
        provenance: Provenance,
    ) -> Result<Self> {
        check_grid(&thetas)?;
        if values.len() != thetas.len() {
            return Err(Error::Contract(format!("{} angles but {} values", thetas.len(), values.len())));
        }
        if let Some(pts) = &points {
            if pts.len() != thetas.len() {
                return Err(Error::Contract(format!("{} angles but {} points", thetas.len(), pts.len())));
            }
            for ((&t, &v), &z) in thetas.iter().zip(&values).zip(pts) {
                let gap = ((Complex64::from_polar(1.0, t) * z).re - v).abs();
                if gap > 1e-8 * (1.0 + v.abs()) {
                    return Err(Error::Consistency(format!(
                        "boundary point {z} misses support value {v} at theta={t} by {gap:e}"
                    )));
                }
            }
        }
        Ok(Self { thetas, values, points, provenance })
    }

    /// Theoretical curve from a support function.
    pub fn from_fn(thetas: Vec<f64>, f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let values = thetas.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Self::new(thetas, values, None, Provenance::Theoretical)
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn points(&self) -> Option<&[Complex64]> {
        self.points.as_deref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// CSV with columns `theta,lambda,re_z,im_z` (the last two empty when
    /// there are no points).
    pub fn to_csv(&self) -> String {
        let mut s = String::from("theta,lambda,re_z,im_z\n");
        for (k, (t, v)) in self.thetas.iter().zip(&self.values).enumerate() {
            match &self.points {
                Some(p) => writeln!(s, "{t:.17e},{v:.17e},{:.17e},{:.17e}", p[k].re, p[k].im),
                None => writeln!(s, "{t:.17e},{v:.17e},,"),
            }
            .unwrap();
        }
        s
    }
}

/// `(e^{iθ}A + e^{−iθ}A^*)/2`, exactly Hermitian.
pub fn rotated_hermitian_part(a: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    let e = Complex64::from_polar(1.0, theta);
    hermitian_from_upper(a, |a_ij, a_ji| (e * a_ij + (e * a_ji).conj()) * 0.5)
}

/// Options for [`support_sweep_with`].
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// Seed for solver start vectors.
    pub seed: u64,
    /// Consecutive angles solved with warm starts; chunks run in parallel.
    pub chunk: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { seed: 0x5eed, chunk: 90 }
    }
}

/// Empirical support curve of `a` on `thetas` with boundary points.
pub fn support_sweep(a: &ComplexMatrix, thetas: &[f64]) -> Result<SupportCurve> {
    support_sweep_with(a, thetas, &SweepOptions::default())
}

/// The grid is split into fixed chunks, each started from its own random
/// stream, so the result does not depend on the number of threads.
pub fn support_sweep_with(a: &ComplexMatrix, thetas: &[f64], opts: &SweepOptions) -> Result<SupportCurve> {
    check_grid(thetas)?;
    let family = RotatedFamily::new(a)?;
    let chunk = opts.chunk.max(1);
    let runs = thetas
        .par_chunks(chunk)
        .enumerate()
        .map(|(i, part)| family.top_run(part, RngStream::new(opts.seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    let tops: Vec<_> = runs.into_iter().flatten().collect();
    let values = tops.iter().map(|t| t.pair.value).collect();
    let points = tops.iter().map(|t| t.point).collect();
    SupportCurve::new(thetas.to_vec(), values, Some(points), Provenance::Empirical)
}

/// `max_k |z(θₖ)|`.
pub fn numerical_radius(curve: &SupportCurve) -> Result<f64> {
    let pts = curve.points().ok_or_else(|| Error::Contract("numerical radius needs boundary points".into()))?;
    if pts.is_empty() {
        return Err(Error::Contract("empty curve".into()));
    }
    Ok(pts.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// `max_k |empirical[k] − theoretical[k]|` over a shared grid.
pub fn uniform_gap(empirical: &SupportCurve, theoretical: &SupportCurve) -> Result<f64> {
    if empirical.thetas != theoretical.thetas {
        return Err(Error::Contract("support curves are on different angle grids".into()));
    }
    Ok(empirical.values.iter().zip(&theoretical.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// `2·max_k |values[k]|`, an upper bound for `‖A‖` when the grid contains the
/// four axis directions.
pub fn norm_bound(curve: &SupportCurve) -> f64 {
    2.0 * curve.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Largest excess `|Δvalue| − c·|Δθ|` over cyclically adjacent angles
/// (non-positive when the curve is `c`-Lipschitz).
pub fn lipschitz_excess(curve: &SupportCurve, c: f64) -> f64 {
    let n = curve.len();
    (0..n)
        .map(|k| {
            let j = (k + 1) % n;
            let mut dt = (curve.thetas[j] - curve.thetas[k]).abs();
            if j == 0 {
                dt = TAU - dt;
            }
            (curve.values[j] - curve.values[k]).abs() - c * dt
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Largest `Re(e^{iθₖ}μ) − values[k]` over eigenvalues `μ` and angles.
pub fn spectrum_excess(curve: &SupportCurve, eigenvalues: &[Complex64]) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for (&t, &v) in curve.thetas.iter().zip(&curve.values) {
        let e = Complex64::from_polar(1.0, t);
        for mu in eigenvalues {
            worst = worst.max((e * mu).re - v);
        }
    }
    worst
}

/// Fraction of the distinct boundary points that are not hull vertices.
pub fn hull_discard_fraction(curve: &SupportCurve) -> Result<f64> {
    let pts = curve.points().ok_or_else(|| Error::Contract("hull check needs boundary points".into()))?;
    let mut distinct = pts.to_vec();
    distinct.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    distinct.dedup();
    let hull = convex_hull(&distinct)?;
    Ok(1.0 - hull.vertices().len() as f64 / distinct.len() as f64)
}
