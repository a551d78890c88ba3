//! Closed-form limiting objects: ellipse axes, droplets, the Wishart quartic
//! and its larger root, the Cauchy-transform cubic, discriminants and
//! resultants.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::{EnsembleKind, EnsembleSpec, Letter};
use crate::error::{check_alpha, check_tau, Error, Result};

/// Default real-root tolerance, relative to `1 + |root|`.
pub const ROOT_TOL: f64 = 1e-8;
const MAX_DEGREE: usize = 8;
const TRIM: f64 = 1e-14;

/// Real polynomial with ascending coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyReal {
    coeffs: Vec<f64>,
}

impl PolyReal {
    /// Trims trailing coefficients with `|c| ≤ 1e-14·max|c|`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parameter("polynomial coefficients must be finite".into()));
        }
        let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.abs() <= TRIM * scale) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::Contract(format!("degree {} exceeds {MAX_DEGREE}", coeffs.len() - 1)));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `Σ|c_k||x|^k`, the natural rounding scale of [`PolyReal::eval`].
    pub fn magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> PolyReal {
        if self.coeffs.len() == 1 {
            return PolyReal { coeffs: vec![0.0] };
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
        PolyReal { coeffs }
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &PolyReal) -> Result<PolyReal> {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyReal::new(out)
    }
}

/// All real roots of `p`, ascending.
///
/// Roots come from the eigenvalues of the companion matrix. Clusters of
/// eigenvalues that straddle a multiple root are averaged; isolated ones are
/// refined by Newton's method. A root counts as real when its imaginary
/// part is at most `tol·(1+|root|)`; real roots closer than that are merged.
pub fn real_roots(p: &PolyReal, tol: f64) -> Result<Vec<f64>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::Contract("constant polynomials have no roots to find".into()));
    }
    let lead = p.leading();
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -p.coeffs[i] / lead;
    }
    let eig = companion.complex_eigenvalues();
    let candidates: Vec<Complex64> = eig.iter().map(|z| Complex64::new(z.re, z.im)).collect();

    // Merge nearby clusters while their combined mean is still a numerical root.
    let mut clusters: Vec<(Complex64, usize)> = candidates.iter().map(|&z| (z, 1)).collect();
    'merge: loop {
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let ((a, na), (b, nb)) = (clusters[i], clusters[j]);
                if (a - b).norm() > 1e-4 * (1.0 + a.norm()) {
                    continue;
                }
                let m = (a * na as f64 + b * nb as f64) / (na + nb) as f64;
                if p.eval_complex(m).norm() <= 64.0 * f64::EPSILON * p.magnitude(m.norm()) {
                    clusters[i] = (m, na + nb);
                    clusters.swap_remove(j);
                    continue 'merge;
                }
            }
        }
        break;
    }

    let mut reals: Vec<f64> = clusters
        .into_iter()
        .map(|(z, k)| if k == 1 { polish(p, z) } else { z })
        .filter(|z| z.im.abs() <= tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    reals.sort_by(f64::total_cmp);
    reals.dedup_by(|a, b| (*a - *b).abs() <= tol * (1.0 + b.abs()));
    Ok(reals)
}

fn polish(p: &PolyReal, mut z: Complex64) -> Complex64 {
    let dp = p.derivative();
    let mut best = p.eval_complex(z).norm();
    for _ in 0..16 {
        let d = dp.eval_complex(z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - p.eval_complex(z) / d;
        let val = p.eval_complex(next).norm();
        if !(val < best) {
            break;
        }
        z = next;
        best = val;
    }
    z
}

fn check_open_tau(tau: f64) -> Result<()> {
    check_tau(tau)?;
    if tau >= 1.0 {
        return Err(Error::Parameter("the Wishart quartic degenerates at tau = 1; use tau < 1".into()));
    }
    Ok(())
}

/// Coefficients `(a₀, …, a₄)` of `D_θ(x)`.
pub fn wishart_quartic_coeffs(tau: f64, alpha: f64, theta: f64) -> [f64; 5] {
    let c = theta.cos();
    let t2 = tau * tau;
    let (c2, a2) = (c * c, alpha * alpha);
    let om = 1.0 - t2;
    let lead = 1.0 - t2 + c2 * t2;
    [
        (2.0 * alpha + 1.0).powi(2) * om * om * (a2 * c2 * t2 - (2.0 * alpha + 1.0) * om),
        4.0 * c * tau * om * (2.0 * a2 * c2 * t2 - om * (2.0 * alpha.powi(3) + 5.0 * a2 + 8.0 * alpha + 3.0)),
        16.0 * a2 * c2 * c2 * t2 * t2
            + 4.0 * (a2 - 8.0 * alpha - 11.0) * om * om
            + 8.0 * c2 * t2 * (2.0 * a2 - 5.0 * alpha - 6.0) * om,
        -32.0 * c * tau * (alpha + 2.0) * lead,
        16.0 * lead,
    ]
}

/// The quartic `D_θ` whose larger real root is the support value of the
/// Wishart envelope in direction θ.
pub fn wishart_quartic(tau: f64, alpha: f64, theta: f64) -> Result<PolyReal> {
    check_open_tau(tau)?;
    check_alpha(alpha)?;
    PolyReal::new(wishart_quartic_coeffs(tau, alpha, theta).to_vec())
}

/// The two real roots `(ξ₋, ξ₊)` of `D_θ`.
pub fn wishart_roots(tau: f64, alpha: f64, theta: f64) -> Result<(f64, f64)> {
    let q = wishart_quartic(tau, alpha, theta)?;
    let roots = real_roots(&q, ROOT_TOL)?;
    if roots.len() != 2 {
        return Err(Error::Consistency(format!(
            "D_theta has {} real roots at tau={tau}, alpha={alpha}, theta={theta}: {roots:?}",
            roots.len()
        )));
    }
    let (lo, hi) = (roots[0], roots[1]);
    if hi - lo <= 1e-6 * (1.0 + hi.abs()) {
        return Err(Error::Consistency(format!(
            "D_theta roots {lo} and {hi} nearly coincide at tau={tau}, alpha={alpha}, theta={theta}"
        )));
    }
    Ok((lo, hi))
}

/// Support function of the Wishart envelope: the larger real root of `D_θ`.
pub fn wishart_support(tau: f64, alpha: f64, theta: f64) -> Result<f64> {
    wishart_roots(tau, alpha, theta).map(|(_, hi)| hi)
}

/// Coefficients of the cubic satisfied by the Cauchy transform, descending:
/// `[z(1−τ²), (2α+1)(1−τ²)+4τz cos θ, 4τα cos θ − 4z, 4]`.
pub fn cauchy_cubic(tau: f64, alpha: f64, theta: f64, z: Complex64) -> [Complex64; 4] {
    let c = theta.cos();
    let om = 1.0 - tau * tau;
    [
        z * om,
        (2.0 * alpha + 1.0) * om + z * (4.0 * tau * c),
        Complex64::new(4.0 * tau * alpha * c, 0.0) - z * 4.0,
        Complex64::new(4.0, 0.0),
    ]
}

/// Discriminant of `ax³ + bx² + cx + d`.
pub fn cubic_discriminant(a: f64, b: f64, c: f64, d: f64) -> f64 {
    b * b * c * c - 4.0 * a * c * c * c - 4.0 * b * b * b * d - 27.0 * a * a * d * d + 18.0 * a * b * c * d
}

/// `|disc(cubic)/16 − D_θ(x)|` at real `x`.
pub fn discriminant_matches_quartic(tau: f64, alpha: f64, theta: f64, x: f64) -> Result<f64> {
    let q = wishart_quartic(tau, alpha, theta)?;
    Ok(discriminant_mismatch(&q, tau, alpha, theta, x))
}

/// As [`discriminant_matches_quartic`] but against a caller-supplied quartic.
pub fn discriminant_mismatch(quartic: &PolyReal, tau: f64, alpha: f64, theta: f64, x: f64) -> f64 {
    let [a, b, c, d] = cauchy_cubic(tau, alpha, theta, Complex64::new(x, 0.0));
    (cubic_discriminant(a.re, b.re, c.re, d.re) / 16.0 - quartic.eval(x)).abs()
}

/// Determinant of the Sylvester matrix of `p` and `q`.
pub fn sylvester_resultant(p: &PolyReal, q: &PolyReal) -> Result<f64> {
    let (m, n) = (p.degree(), q.degree());
    if m == 0 || n == 0 {
        return Err(Error::Contract("resultants need polynomials of degree at least 1".into()));
    }
    let size = m + n;
    let mut s = DMatrix::<f64>::zeros(size, size);
    for r in 0..n {
        for (k, c) in p.coeffs.iter().rev().enumerate() {
            s[(r, r + k)] = *c;
        }
    }
    for r in 0..m {
        for (k, c) in q.coeffs.iter().rev().enumerate() {
            s[(n + r, r + k)] = *c;
        }
    }
    Ok(s.determinant())
}

/// The certificate polynomial `F(α, τ, u)` whose positivity on `[0, 1]`
/// rules out a double root of `D_θ` (with `u = sin²θ`).
pub fn f_certificate(alpha: f64, tau: f64, u: f64) -> f64 {
    let (a, t2) = (alpha, tau * tau);
    let (a2, a3) = (a * a, a * a * a);
    let (t4, t6) = (t2 * t2, t2 * t2 * t2);
    -16.0 * a3 * t6 * u.powi(3) + 24.0 * a2 * t4 * (a * t2 + a + t2 - 1.0) * u * u
        - 3.0
            * t2
            * (4.0 * a3 * (t2 + 1.0).powi(2) + a2 * (t2 - 1.0) * (17.0 * t2 - 1.0) + (22.0 * a + 9.0) * (t2 - 1.0).powi(2))
            * u
        + 2.0 * (a + 1.0).powi(3) * t6
        + 3.0 * (a + 1.0).powi(2) * (2.0 * a + 7.0) * t4
        + 6.0 * (a + 1.0) * (a2 - 11.0 * a - 8.0) * t2
        + (2.0 * a + 1.0) * (a + 5.0).powi(2)
}

/// Factored form of `Res(D_θ, D_θ')`:
/// `−2²⁰(α+1)²(1−τ)²(1+τ)²(1−τ²sin²θ)²·F(α, τ, sin²θ)³`.
pub fn quartic_resultant_closed_form(tau: f64, alpha: f64, theta: f64) -> f64 {
    let s2 = theta.sin().powi(2);
    let f = f_certificate(alpha, tau, s2);
    -(2f64.powi(20))
        * (alpha + 1.0).powi(2)
        * (1.0 - tau).powi(2)
        * (1.0 + tau).powi(2)
        * (1.0 - tau * tau * s2).powi(2)
        * f.powi(3)
}

/// Semi-axes `a` (real direction) and `b` (imaginary direction) of an ellipse
/// centred at `center`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipseAxes {
    pub a: f64,
    pub b: f64,
    pub center: Complex64,
}

impl EllipseAxes {
    pub fn centered(a: f64, b: f64) -> Self {
        Self { a, b, center: Complex64::new(0.0, 0.0) }
    }

    pub fn support(&self, theta: f64) -> f64 {
        ellipse_support(self, theta)
    }
}

/// `a = √(2(1+τ))`, `b = √(2(1−τ))`.
pub fn elliptic_axes(tau: f64) -> Result<EllipseAxes> {
    chiral_axes(tau, 0.0)
}

/// `a = √(1+τ)(√(1+α)+1)/√2`, `b = √(1−τ)(√(1+α)+1)/√2`, evaluated as
/// `√((1±τ)/2)·(√(1+α)+1)` so that α=0 reproduces [`elliptic_axes`] exactly.
pub fn chiral_axes(tau: f64, alpha: f64) -> Result<EllipseAxes> {
    check_tau(tau)?;
    check_alpha(alpha)?;
    let k = (1.0 + alpha).sqrt() + 1.0;
    Ok(EllipseAxes::centered(((1.0 + tau) / 2.0).sqrt() * k, ((1.0 - tau) / 2.0).sqrt() * k))
}

/// `Re(e^{iθ}·center) + √(a²cos²θ + b²sin²θ)`.
pub fn ellipse_support(axes: &EllipseAxes, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (Complex64::from_polar(1.0, theta) * axes.center).re + (axes.a * axes.a * c * c + axes.b * axes.b * s * s).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DropletKind {
    /// `S^e`.
    Ellipse,
    /// `S^ce`.
    ChiralQuartic,
    /// `S^w`.
    ShiftedEllipse,
}

/// Limiting eigenvalue support of one of the models.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Droplet {
    pub kind: DropletKind,
    pub tau: f64,
    pub alpha: f64,
}

/// `(v/s)²`, with `s = 0` meaning `v` must vanish.
fn ratio_sq(v: f64, s: f64) -> f64 {
    if s == 0.0 {
        if v == 0.0 { 0.0 } else { f64::INFINITY }
    } else {
        (v / s) * (v / s)
    }
}

impl Droplet {
    pub fn new(kind: DropletKind, tau: f64, alpha: f64) -> Result<Self> {
        check_tau(tau)?;
        check_alpha(alpha)?;
        Ok(Self { kind, tau, alpha })
    }

    /// Left side minus right side of the defining inequality; `≤ 0` inside.
    pub fn level(&self, z: Complex64) -> f64 {
        let (x, y, t, a) = (z.re, z.im, self.tau, self.alpha);
        match self.kind {
            DropletKind::Ellipse => ratio_sq(x, 1.0 + t) + ratio_sq(y, 1.0 - t) - 1.0,
            DropletKind::ChiralQuartic => {
                let om = 1.0 - t * t;
                let cross = if om == 0.0 {
                    if x * y == 0.0 { 0.0 } else { f64::INFINITY }
                } else {
                    16.0 * t * t / (om * om) * x * x * y * y
                };
                let r2 = x * x + y * y;
                r2 * r2 + cross - 2.0 * t * (2.0 + a) * (x * x - y * y) - (1.0 + a - t * t) * (1.0 - (1.0 + a) * t * t)
            }
            DropletKind::ShiftedEllipse => {
                let s = (1.0 + a).sqrt();
                ratio_sq(x - t * (2.0 + a), (1.0 + t * t) * s) + ratio_sq(y, (1.0 - t * t) * s) - 1.0
            }
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.level(z) <= 0.0
    }

    /// The droplet dilated by `factor` about its centre point.
    pub fn contains_dilated(&self, z: Complex64, factor: f64) -> bool {
        let c = self.center();
        self.contains(c + (z - c) / factor)
    }

    /// Centre of symmetry.
    pub fn center(&self) -> Complex64 {
        match self.kind {
            DropletKind::ShiftedEllipse => Complex64::new(self.tau * (2.0 + self.alpha), 0.0),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// Intersection with the positive real axis, `[lo, hi]`.
    pub fn real_extent(&self) -> (f64, f64) {
        let (t, a) = (self.tau, self.alpha);
        match self.kind {
            DropletKind::Ellipse => (0.0, 1.0 + t),
            DropletKind::ShiftedEllipse => {
                let c = t * (2.0 + a);
                let r = (1.0 + t * t) * (1.0 + a).sqrt();
                ((c - r).max(0.0), c + r)
            }
            DropletKind::ChiralQuartic => {
                // x⁴ − 2τ(2+α)x² − R = 0 in s = x².
                let p = t * (2.0 + a);
                let r = (1.0 + a - t * t) * (1.0 - (1.0 + a) * t * t);
                let disc = (p * p + r).max(0.0).sqrt();
                let lo = if r < 0.0 { (p - disc).max(0.0).sqrt() } else { 0.0 };
                (lo, (p + disc).sqrt())
            }
        }
    }

    pub fn component_count(&self) -> usize {
        match self.kind {
            DropletKind::ChiralQuartic => chiral_component_count(self.tau, self.alpha),
            _ => 1,
        }
    }
}

/// Convenience wrapper for [`Droplet::contains`].
pub fn droplet_contains(d: &Droplet, point: Complex64) -> bool {
    d.contains(point)
}

/// 2 when `τ > 1/√(1+α)`, else 1.
pub fn chiral_component_count(tau: f64, alpha: f64) -> usize {
    if tau > 1.0 / (1.0 + alpha).sqrt() { 2 } else { 1 }
}

/// `(λ₋, λ₊) = ((√(α+1)−1)², (√(α+1)+1)²)`.
pub fn hermitian_limit_endpoints(alpha: f64) -> (f64, f64) {
    let r = (alpha + 1.0).sqrt();
    ((r - 1.0).powi(2), (r + 1.0).powi(2))
}

/// Eigenvalues `(λ₊, λ₋)` of `T(θ)`: `τ cos θ ± √(1 − τ² sin²θ)`.
pub fn lambda_pm(tau: f64, theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let r = (1.0 - tau * tau * s * s).max(0.0).sqrt();
    (tau * c + r, tau * c - r)
}

/// `B(α) = √((−α²+8α+11+(α+5)√(α²+6α+5))/8)`.
pub fn b_alpha(alpha: f64) -> f64 {
    let a = alpha;
    ((-a * a + 8.0 * a + 11.0 + (a + 5.0) * (a * a + 6.0 * a + 5.0).sqrt()) / 8.0).sqrt()
}

/// Largest real root of `16(16z⁴ − 44z² − 1)`, checked against
/// `√((11+5√5)/8)`.
pub fn power_ginibre_radius() -> Result<f64> {
    let p = PolyReal::new(vec![-16.0, 0.0, -704.0, 0.0, 256.0])?;
    let roots = real_roots(&p, ROOT_TOL)?;
    let r = *roots.last().ok_or_else(|| Error::Consistency("no real root".into()))?;
    let closed = ((11.0 + 5.0 * 5f64.sqrt()) / 8.0).sqrt();
    if (r - closed).abs() > 1e-12 {
        return Err(Error::Consistency(format!("root {r} differs from closed form {closed}")));
    }
    Ok(r)
}

/// The ellipse through the real extent of the Wishart envelope with minor
/// semi-axis `√(1−τ²)·B(α)`.
pub fn ellipse_ansatz(tau: f64, alpha: f64) -> Result<EllipseAxes> {
    let (lo, hi) = wishart_roots(tau, alpha, 0.0)?;
    Ok(EllipseAxes {
        a: (hi - lo) / 2.0,
        b: (1.0 - tau * tau).sqrt() * b_alpha(alpha),
        center: Complex64::new((hi + lo) / 2.0, 0.0),
    })
}

/// Support function of the limiting numerical range of an ensemble, with
/// `α = ν/N` taken from the spec.
pub fn limit_support(spec: &EnsembleSpec, theta: f64) -> Result<f64> {
    limit_support_at(spec.kind, spec.tau, spec.alpha(), &spec.word, theta)
}

/// Support function of the limiting numerical range for explicit parameters.
///
/// Ginibre words are covered for two letters (products and squares share
/// the limit disc of radius [`power_ginibre_radius`]) and for one letter.
pub fn limit_support_at(kind: EnsembleKind, tau: f64, alpha: f64, word: &[Letter], theta: f64) -> Result<f64> {
    match kind {
        EnsembleKind::Ginibre => Ok(elliptic_axes(0.0)?.support(theta)),
        EnsembleKind::Elliptic => Ok(elliptic_axes(tau)?.support(theta)),
        EnsembleKind::ChiralElliptic => Ok(chiral_axes(tau, alpha)?.support(theta)),
        EnsembleKind::Wishart => wishart_support(tau, alpha, theta),
        EnsembleKind::GinibreWord => match word.len() {
            1 => Ok(elliptic_axes(0.0)?.support(theta)),
            2 if word.iter().all(|l| !l.adjoint) => power_ginibre_radius(),
            _ => Err(Error::Parameter(format!(
                "no limiting shape is available for the word {}",
                word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
            ))),
        },
    }
}

/// Limiting eigenvalue droplet of an ensemble, when one is known.
pub fn limit_droplet(spec: &EnsembleSpec) -> Result<Option<Droplet>> {
    limit_droplet_at(spec.kind, spec.tau, spec.alpha(), &spec.word)
}

pub fn limit_droplet_at(kind: EnsembleKind, tau: f64, alpha: f64, word: &[Letter]) -> Result<Option<Droplet>> {
    Ok(match kind {
        EnsembleKind::Ginibre => Some(Droplet::new(DropletKind::Ellipse, 0.0, 0.0)?),
        EnsembleKind::Elliptic => Some(Droplet::new(DropletKind::Ellipse, tau, 0.0)?),
        EnsembleKind::ChiralElliptic => Some(Droplet::new(DropletKind::ChiralQuartic, tau, alpha)?),
        EnsembleKind::Wishart => Some(Droplet::new(DropletKind::ShiftedEllipse, tau, alpha)?),
        EnsembleKind::GinibreWord if word.iter().all(|l| !l.adjoint) => {
            Some(Droplet::new(DropletKind::Ellipse, 0.0, 0.0)?)
        }
        EnsembleKind::GinibreWord => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn poly(c: &[f64]) -> PolyReal {
        PolyReal::new(c.to_vec()).unwrap()
    }

    #[test]
    fn trimming_and_degree_limit() {
        assert_eq!(poly(&[1.0, 2.0, 1e-20]).degree(), 1);
        assert!(PolyReal::new(vec![1.0; 10]).is_err());
        assert!(PolyReal::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn roots_of_simple_polynomials() {
        assert_eq!(real_roots(&poly(&[-1.0, 0.0, 1.0]), ROOT_TOL).unwrap(), vec![-1.0, 1.0]);
        assert!(real_roots(&poly(&[1.0, 0.0, 1.0]), ROOT_TOL).unwrap().is_empty());
        assert!(real_roots(&poly(&[3.0]), ROOT_TOL).is_err());
    }

    #[test]
    fn double_root_reported_once() {
        // (x−2)²(x+1) = x³ − 3x² + 4
        let r = real_roots(&poly(&[4.0, 0.0, -3.0, 1.0]), ROOT_TOL).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] + 1.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-7);
        // (x−1)³
        let r = real_roots(&poly(&[-1.0, 3.0, -3.0, 1.0]), ROOT_TOL).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn quartic_at_tau_zero() {
        for alpha in [0.0, 0.7, 3.0] {
            for theta in [0.0, 1.0, 2.5] {
                let q = wishart_quartic(0.0, alpha, theta).unwrap();
                let want = [-(2.0 * alpha + 1.0f64).powi(3), 0.0, 4.0 * (alpha * alpha - 8.0 * alpha - 11.0), 0.0, 16.0];
                for (g, w) in q.coeffs().iter().zip(want) {
                    assert!((g - w).abs() <= 1e-12 * (1.0 + w.abs()));
                }
            }
        }
        assert_eq!(wishart_quartic(0.0, 0.0, 0.3).unwrap().coeffs(), &[-1.0, 0.0, -44.0, 0.0, 16.0]);
        let q = wishart_quartic(0.6, 1.3, FRAC_PI_2).unwrap();
        assert!(q.coeffs()[1].abs() < 1e-12 && q.coeffs()[3].abs() < 1e-12);
        assert!(wishart_quartic(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn support_at_tau_zero_is_b() {
        for alpha in [0.0, 0.5, 1.0, 2.0, 5.0] {
            assert!((wishart_support(0.0, alpha, 0.4).unwrap() - b_alpha(alpha)).abs() < 1e-10);
        }
        assert!((b_alpha(0.0) - 1.665_095_338_392_780_7).abs() < 1e-15);
    }

    #[test]
    fn hermitian_limit() {
        let (lm, lp) = hermitian_limit_endpoints(1.0);
        let (lo, hi) = wishart_roots(0.9999, 1.0, 0.0).unwrap();
        assert!((hi - lp).abs() < 2e-2);
        assert!((lo - lm).abs() < 2e-2);
        assert!((wishart_support(0.9999, 1.0, PI).unwrap() + lm).abs() < 2e-2);
        assert_eq!(hermitian_limit_endpoints(3.0), (1.0, 9.0));
        assert_eq!(hermitian_limit_endpoints(0.0), (0.0, 4.0));
    }

    #[test]
    fn cubic_discriminant_examples() {
        assert_eq!(cubic_discriminant(1.0, 0.0, -3.0, 2.0), 0.0);
        assert_eq!(cubic_discriminant(1.0, 0.0, 0.0, -1.0), -27.0);
        assert_eq!(cubic_discriminant(1.0, 0.0, 1.0, 0.0), -4.0);
    }

    #[test]
    fn cauchy_cubic_examples() {
        let z = Complex64::new(0.7, 0.2);
        let c = cauchy_cubic(0.0, 1.5, 0.8, z);
        assert_eq!(c, [z, Complex64::new(4.0, 0.0), -z * 4.0, Complex64::new(4.0, 0.0)]);
        assert_eq!(cauchy_cubic(0.5, 1.0, 0.0, Complex64::new(0.0, 0.0))[0], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn discriminant_identity_examples() {
        assert!(discriminant_matches_quartic(0.0, 0.0, 0.0, 0.0).unwrap() <= 1e-12);
        assert_eq!(wishart_quartic(0.0, 0.0, 0.0).unwrap().eval(0.0), -1.0);
        let q = wishart_quartic(0.5, 1.0, 0.0).unwrap();
        assert!(discriminant_matches_quartic(0.5, 1.0, 0.0, 2.0).unwrap() <= 1e-8 * (1.0 + q.eval(2.0).abs()));
    }

    #[test]
    fn resultant_examples() {
        assert!((sylvester_resultant(&poly(&[-1.0, 0.0, 1.0]), &poly(&[0.0, 2.0])).unwrap() + 4.0).abs() < 1e-12);
        assert!((sylvester_resultant(&poly(&[-3.0, 1.0]), &poly(&[-1.0, 1.0])).unwrap() - 2.0).abs() < 1e-12);
        assert!(sylvester_resultant(&poly(&[1.0]), &poly(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn resultant_matches_certificate() {
        for &(tau, alpha, theta) in &[(0.3, 0.5, 0.4), (0.7, 2.0, 2.0), (0.5, 1.0, 4.0)] {
            let q = wishart_quartic(tau, alpha, theta).unwrap();
            let res = sylvester_resultant(&q, &q.derivative()).unwrap();
            let closed = quartic_resultant_closed_form(tau, alpha, theta);
            assert!(res != 0.0);
            assert!((res - closed).abs() <= 1e-9 * closed.abs(), "{res} vs {closed}");
        }
    }

    #[test]
    fn certificate_endpoint() {
        for &(a, t) in &[(0.0f64, 0.5f64), (1.0, 0.3), (4.0, 0.9)] {
            let want = (a + 5.0f64).powi(2) * (2.0 * a + 1.0) * (1.0 - t).powi(3) * (1.0 + t).powi(3);
            assert!((f_certificate(a, t, 1.0) - want).abs() <= 1e-12 * want.abs().max(1.0));
            assert!(f_certificate(a, t, 0.0) > f_certificate(a, t, 1.0));
        }
    }

    #[test]
    fn axes() {
        let e = elliptic_axes(0.0).unwrap();
        assert!((e.a - 2f64.sqrt()).abs() < 1e-15 && (e.b - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(elliptic_axes(1.0).unwrap(), EllipseAxes::centered(2.0, 0.0));
        let e = elliptic_axes(0.5).unwrap();
        assert!((e.a - 3f64.sqrt()).abs() < 1e-15 && (e.b - 1.0).abs() < 1e-15);
        for tau in [0.0, 0.4, 1.0] {
            let (c, e) = (chiral_axes(tau, 0.0).unwrap(), elliptic_axes(tau).unwrap());
            assert_eq!(c, e);
            assert!((e.a - (2.0 * (1.0 + tau)).sqrt()).abs() < 1e-15);
        }
        let c = chiral_axes(1.0, 3.0).unwrap();
        assert!((c.a - 3.0).abs() < 1e-14 && c.b == 0.0);
        let c = chiral_axes(0.0, 1.0).unwrap();
        assert!((c.a - (2f64.sqrt() + 1.0) / 2f64.sqrt()).abs() < 1e-15 && c.a == c.b);
        let c = chiral_axes(0.5, 1.0).unwrap();
        assert!((c.a - 2.091).abs() < 1e-3 && (c.b - 1.207).abs() < 1e-3);
    }

    #[test]
    fn support_of_ellipse() {
        let e = EllipseAxes::centered(2.0, 1.0);
        assert_eq!(ellipse_support(&e, 0.0), 2.0);
        assert!((ellipse_support(&e, FRAC_PI_2) - 1.0).abs() < 1e-15);
        let d = EllipseAxes::centered(1.5, 1.5);
        assert!((ellipse_support(&d, 2.2) - 1.5).abs() < 1e-15);
        let s = EllipseAxes { center: Complex64::new(1.0, 0.0), ..e };
        assert!((ellipse_support(&s, PI) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn droplet_membership() {
        let e = Droplet::new(DropletKind::Ellipse, 0.3, 0.0).unwrap();
        assert!(droplet_contains(&e, Complex64::new(1.3, 0.0)));
        assert!(!droplet_contains(&e, Complex64::new(1.31, 0.0)));
        let ce = Droplet::new(DropletKind::ChiralQuartic, 0.85, 1.0).unwrap();
        assert!(!ce.contains(Complex64::new(0.0, 0.0)));
        assert_eq!(ce.component_count(), 2);
        let w = Droplet::new(DropletKind::ShiftedEllipse, 0.5, 1.0).unwrap();
        assert!(w.contains(Complex64::new(1.5, 0.0)));
        let h = Droplet::new(DropletKind::Ellipse, 1.0, 0.0).unwrap();
        assert!(h.contains(Complex64::new(1.9, 0.0)));
        assert!(!h.contains(Complex64::new(0.0, 0.01)));
    }

    #[test]
    fn chiral_quartic_reduces_to_ellipse_at_alpha_zero() {
        let (ce, e) = (
            Droplet::new(DropletKind::ChiralQuartic, 0.4, 0.0).unwrap(),
            Droplet::new(DropletKind::Ellipse, 0.4, 0.0).unwrap(),
        );
        for k in 0..200 {
            let z = Complex64::from_polar(0.02 * k as f64, 0.37 * k as f64);
            if e.level(z).abs() > 1e-9 {
                assert_eq!(ce.contains(z), e.contains(z), "{z}");
            }
        }
    }

    #[test]
    fn component_threshold() {
        assert_eq!(chiral_component_count(0.5, 1.0), 1);
        assert_eq!(chiral_component_count(0.85, 1.0), 2);
        assert_eq!(chiral_component_count(1.0 / 2f64.sqrt(), 1.0), 1);
        assert_eq!(chiral_component_count(0.99, 0.0), 1);
    }

    #[test]
    fn lambda_pm_values() {
        assert_eq!(lambda_pm(0.4, 0.0), (1.4, 0.4 - 1.0));
        let (p, m) = lambda_pm(0.6, FRAC_PI_2);
        assert!((p - 0.8).abs() < 1e-15 && (m + 0.8).abs() < 1e-15);
        let (p, m) = lambda_pm(0.7, 1.3);
        assert!((p * m + (1.0 - 0.49)).abs() < 1e-14);
    }

    #[test]
    fn power_radius() {
        let r = power_ginibre_radius().unwrap();
        assert!((r - 1.665_095_338_392_780_7).abs() < 1e-12);
        assert!(r < 2.0);
        assert!((r - b_alpha(0.0)).abs() < 1e-12);
    }

    #[test]
    fn ansatz() {
        let e = ellipse_ansatz(0.0, 1.5).unwrap();
        assert!(e.center.norm() < 1e-10);
        assert!((e.a - b_alpha(1.5)).abs() < 1e-10 && (e.b - b_alpha(1.5)).abs() < 1e-10);
        let (lm, lp) = hermitian_limit_endpoints(1.0);
        let e = ellipse_ansatz(0.9999, 1.0).unwrap();
        assert!((e.a - (lp - lm) / 2.0).abs() < 2e-2 && e.b < 0.05);
    }
}
