//! Samplers for the random-matrix models.
//!
//! Every Gaussian factor is drawn from its own [`RngStream`]: the Ginibre
//! matrix `G` and the word letter `Y1` share stream 0, `Y2` and `Y3` use
//! streams 1 and 2, and the rectangular pair `(P, Q)` uses streams 10 and 11.
//! Sharing a stream between `G` and `Y1` makes `[Y1]` and `ginibre` identical
//! for the same seed.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_tau, Error, Result};
use crate::linalg::{gaussian_complex, ComplexMatrix, RngStream};

const STREAM_G: u64 = 0;
const STREAM_P: u64 = 10;
const STREAM_Q: u64 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    Ginibre,
    Elliptic,
    ChiralElliptic,
    Wishart,
    GinibreWord,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 5] = [
        EnsembleKind::Ginibre,
        EnsembleKind::Elliptic,
        EnsembleKind::ChiralElliptic,
        EnsembleKind::Wishart,
        EnsembleKind::GinibreWord,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Ginibre => "ginibre",
            EnsembleKind::Elliptic => "elliptic",
            EnsembleKind::ChiralElliptic => "chiral-elliptic",
            EnsembleKind::Wishart => "wishart",
            EnsembleKind::GinibreWord => "ginibre-word",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        match key.as_str() {
            "chiral" => return Ok(EnsembleKind::ChiralElliptic),
            "word" => return Ok(EnsembleKind::GinibreWord),
            _ => {}
        }
        Self::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Parameter(format!("unknown ensemble '{s}'")))
    }
}

/// One factor of a Ginibre word: `Yk` or its adjoint `Yk*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Letter {
    /// 1, 2 or 3.
    pub index: u8,
    pub adjoint: bool,
}

impl Letter {
    pub const fn new(index: u8, adjoint: bool) -> Self {
        Self { index, adjoint }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y{}{}", self.index, if self.adjoint { "*" } else { "" })
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (body, adjoint) = match t.strip_suffix('*') {
            Some(b) => (b, true),
            None => (t, false),
        };
        let index = body
            .strip_prefix('Y')
            .or_else(|| body.strip_prefix('y'))
            .and_then(|d| d.parse::<u8>().ok())
            .filter(|i| (1..=3).contains(i))
            .ok_or_else(|| Error::Parameter(format!("unknown word letter '{s}' (expected Y1, Y2, Y3 or Yk*)")))?;
        Ok(Letter { index, adjoint })
    }
}

impl TryFrom<String> for Letter {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Letter> for String {
    fn from(l: Letter) -> String {
        l.to_string()
    }
}

/// Parses a word such as `"Y1,Y2"`, `"Y1 Y1*"` or `"Y1Y2*Y3"`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    let mut letters = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let mut end = rest.find(|c: char| c.is_ascii_digit()).map_or(rest.len(), |d| d + 1);
        if rest[end..].starts_with('*') {
            end += 1;
        }
        letters.push(rest[..end].parse()?);
        rest = &rest[end..];
    }
    if letters.is_empty() {
        return Err(Error::Parameter("a Ginibre word needs at least one letter".into()));
    }
    Ok(letters)
}

/// Declarative description of one sampled matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    #[serde(default)]
    pub tau: f64,
    #[serde(default)]
    pub nu: usize,
    #[serde(default)]
    pub word: Vec<Letter>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_seed() -> u64 {
    1
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize) -> Self {
        Self { kind, n, tau: 0.0, nu: 0, word: Vec::new(), seed: 1 }
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_nu(mut self, nu: usize) -> Self {
        self.nu = nu;
        self
    }

    /// Sets `ν = round(α·N)`.
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.nu = nu_from_alpha(alpha, self.n);
        self
    }

    pub fn with_word(mut self, word: Vec<Letter>) -> Self {
        self.word = word;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// `α = ν/N`.
    pub fn alpha(&self) -> f64 {
        self.nu as f64 / self.n.max(1) as f64
    }

    /// Side length of the sampled square matrix.
    pub fn dim(&self) -> usize {
        match self.kind {
            EnsembleKind::ChiralElliptic => 2 * self.n + self.nu,
            _ => self.n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        check_tau(self.tau)?;
        if self.kind == EnsembleKind::GinibreWord && self.word.is_empty() {
            return Err(Error::Parameter("kind ginibre-word requires a non-empty word".into()));
        }
        Ok(())
    }

    pub fn sample(&self) -> Result<ComplexMatrix> {
        self.validate()?;
        match self.kind {
            EnsembleKind::Ginibre => sample_ginibre(self.n, self.seed),
            EnsembleKind::Elliptic => sample_elliptic(self.n, self.tau, self.seed),
            EnsembleKind::ChiralElliptic => sample_chiral(self.n, self.nu, self.tau, self.seed),
            EnsembleKind::Wishart => sample_wishart(self.n, self.nu, self.tau, self.seed),
            EnsembleKind::GinibreWord => sample_ginibre_word(self.n, &self.word, self.seed),
        }
    }
}

/// `ν = round(α·N)`.
pub fn nu_from_alpha(alpha: f64, n: usize) -> usize {
    (alpha.max(0.0) * n as f64).round() as usize
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("N must be at least 1".into()));
    }
    Ok(())
}

/// `N×N` Ginibre matrix with entry variance `1/N`.
pub fn sample_ginibre(n: usize, seed: u64) -> Result<ComplexMatrix> {
    check_n(n)?;
    gaussian_complex(RngStream::new(seed, STREAM_G), n, n, 1.0 / n as f64)
}

/// `(√(1+τ)/2)(G+G^*) + (√(1−τ)/2)(G−G^*)`, evaluated as
/// `(c₊+c₋)G + (c₊−c₋)G^*` so that τ=0 returns `G` and τ=1 an exactly
/// Hermitian matrix.
pub fn sample_elliptic(n: usize, tau: f64, seed: u64) -> Result<ComplexMatrix> {
    check_tau(tau)?;
    let g = sample_ginibre(n, seed)?;
    let (cp, cm) = ((1.0 + tau).sqrt() / 2.0, (1.0 - tau).sqrt() / 2.0);
    let (s, d) = (cp + cm, cp - cm);
    Ok(ComplexMatrix::from_fn(n, n, |i, j| g[(i, j)] * s + g[(j, i)].conj() * d))
}

/// Independent `N×(N+ν)` matrices `P`, `Q` with entry variance `1/(2N)`.
pub fn sample_pq_pair(n: usize, nu: usize, seed: u64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_n(n)?;
    let var = 1.0 / (2.0 * n as f64);
    let p = gaussian_complex(RngStream::new(seed, STREAM_P), n, n + nu, var)?;
    let q = gaussian_complex(RngStream::new(seed, STREAM_Q), n, n + nu, var)?;
    Ok((p, q))
}

/// `X₁ = √(1+τ)P + √(1−τ)Q`, `X₂ = √(1+τ)P − √(1−τ)Q`.
pub fn correlated_pair(p: &ComplexMatrix, q: &ComplexMatrix, tau: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_tau(tau)?;
    if p.rows() != q.rows() || p.cols() != q.cols() {
        return Err(Error::Contract(format!(
            "P is {}x{} but Q is {}x{}",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols()
        )));
    }
    let (a, b) = ((1.0 + tau).sqrt(), (1.0 - tau).sqrt());
    let x1 = ComplexMatrix::from_fn(p.rows(), p.cols(), |i, j| p[(i, j)] * a + q[(i, j)] * b);
    let x2 = ComplexMatrix::from_fn(p.rows(), p.cols(), |i, j| p[(i, j)] * a - q[(i, j)] * b);
    Ok((x1, x2))
}

/// The `(2N+ν)×(2N+ν)` Dirac matrix `[[0, X₁], [X₂^*, 0]]`.
pub fn sample_chiral(n: usize, nu: usize, tau: f64, seed: u64) -> Result<ComplexMatrix> {
    check_tau(tau)?;
    let (p, q) = sample_pq_pair(n, nu, seed)?;
    let (x1, x2) = correlated_pair(&p, &q, tau)?;
    let m = n + nu;
    let zero = Complex64::new(0.0, 0.0);
    Ok(ComplexMatrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, false) => x1[(i, j - n)],
        (false, true) => x2[(j, i - n)].conj(),
        _ => zero,
    }))
}

/// `X^w = X₁X₂^*` (`N×N`).
pub fn sample_wishart(n: usize, nu: usize, tau: f64, seed: u64) -> Result<ComplexMatrix> {
    check_tau(tau)?;
    let (p, q) = sample_pq_pair(n, nu, seed)?;
    let (x1, x2) = correlated_pair(&p, &q, tau)?;
    x1.mul_adjoint(&x2)
}

/// Product of the word's letters in order; each distinct `Yk` is one Ginibre
/// sample (variance `1/N`) reused for every occurrence.
pub fn sample_ginibre_word(n: usize, word: &[Letter], seed: u64) -> Result<ComplexMatrix> {
    check_n(n)?;
    if word.is_empty() {
        return Err(Error::Parameter("a Ginibre word needs at least one letter".into()));
    }
    let mut factors: [Option<ComplexMatrix>; 3] = [None, None, None];
    let mut out: Option<ComplexMatrix> = None;
    for letter in word {
        if !(1..=3).contains(&letter.index) {
            return Err(Error::Parameter(format!("unknown word letter {letter}")));
        }
        let slot = usize::from(letter.index - 1);
        if factors[slot].is_none() {
            let stream = STREAM_G + slot as u64;
            factors[slot] = Some(gaussian_complex(RngStream::new(seed, stream), n, n, 1.0 / n as f64)?);
        }
        let y = factors[slot].as_ref().unwrap();
        let y = if letter.adjoint { y.adjoint() } else { y.clone() };
        out = Some(match out {
            None => y,
            Some(acc) => acc.matmul(&y)?,
        });
    }
    Ok(out.unwrap())
}

/// `T(θ) = [[(1+τ)cos θ, −i√(1−τ²) sin θ], [i√(1−τ²) sin θ, −(1−τ)cos θ]]`.
pub fn t_matrix(tau: f64, theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    let r = (1.0 - tau * tau).max(0.0).sqrt() * s;
    [
        [Complex64::new((1.0 + tau) * c, 0.0), Complex64::new(0.0, -r)],
        [Complex64::new(0.0, r), Complex64::new(-(1.0 - tau) * c, 0.0)],
    ]
}

/// `R S(θ) R^*` with `R = [P Q]` and `S(θ) = T(θ) ⊗ I_M`; equals
/// `Re(e^{iθ} X₁X₂^*)`.
pub fn wishart_rotated_via_s(p: &ComplexMatrix, q: &ComplexMatrix, tau: f64, theta: f64) -> Result<ComplexMatrix> {
    check_tau(tau)?;
    if p.rows() != q.rows() || p.cols() != q.cols() {
        return Err(Error::Contract("P and Q must have equal shapes".into()));
    }
    let t = t_matrix(tau, theta);
    // R S = [P t00 + Q t10, P t01 + Q t11].
    let left = ComplexMatrix::from_fn(p.rows(), p.cols(), |i, j| p[(i, j)] * t[0][0] + q[(i, j)] * t[1][0]);
    let right = ComplexMatrix::from_fn(p.rows(), p.cols(), |i, j| p[(i, j)] * t[0][1] + q[(i, j)] * t[1][1]);
    let a = left.mul_adjoint(p)?;
    let b = right.mul_adjoint(q)?;
    ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] + b[(i, j)]).hermitian_part()
}
