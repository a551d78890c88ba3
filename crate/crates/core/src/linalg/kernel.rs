//! Square complex matrices stored as separate real and imaginary planes, with a
//! matrix–vector kernel that vectorises well.

use num_complex::Complex64;

use super::ComplexMatrix;

#[derive(Clone, Debug)]
pub(crate) struct SplitSquare {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl SplitSquare {
    /// `a` must be square.
    pub fn from_matrix(a: &ComplexMatrix) -> Self {
        debug_assert!(a.is_square());
        Self {
            n: a.rows(),
            re: a.as_slice().iter().map(|z| z.re).collect(),
            im: a.as_slice().iter().map(|z| z.im).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `(H, K)` with `A = H + iK`, both exactly Hermitian.
    pub fn hermitian_parts(&self) -> (Self, Self) {
        let n = self.n;
        let mut h = Self { n, re: vec![0.0; n * n], im: vec![0.0; n * n] };
        let mut k = h.clone();
        for i in 0..n {
            for j in i..n {
                let (ar, ai) = (self.re[i * n + j], self.im[i * n + j]);
                let (br, bi) = (self.re[j * n + i], self.im[j * n + i]);
                // H_ij = (a_ij + conj a_ji)/2, K_ij = (a_ij − conj a_ji)/(2i).
                let (hr, hi) = (0.5 * (ar + br), 0.5 * (ai - bi));
                let (kr, ki) = (0.5 * (ai + bi), -0.5 * (ar - br));
                h.set_mirrored(i, j, hr, hi);
                k.set_mirrored(i, j, kr, ki);
            }
        }
        (h, k)
    }

    fn set_mirrored(&mut self, i: usize, j: usize, re: f64, im: f64) {
        let n = self.n;
        self.re[i * n + j] = re;
        self.re[j * n + i] = re;
        if i == j {
            self.im[i * n + i] = 0.0;
        } else {
            self.im[i * n + j] = im;
            self.im[j * n + i] = -im;
        }
    }

    /// `c·self + d·other`, entrywise on both planes.
    pub fn combine(&self, c: f64, other: &Self, d: f64) -> Self {
        let mix = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| c * p + d * q).collect();
        Self { n: self.n, re: mix(&self.re, &other.re), im: mix(&self.im, &other.im) }
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| {
            Complex64::new(self.re[i * self.n + j], self.im[i * self.n + j])
        })
    }

    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        let xr: Vec<f64> = x.iter().map(|z| z.re).collect();
        let xi: Vec<f64> = x.iter().map(|z| z.im).collect();
        #[cfg(target_arch = "x86_64")]
        {
            if std::is_x86_feature_detected!("avx2") && std::is_x86_feature_detected!("fma") {
                // SAFETY: the required CPU features were detected at runtime.
                unsafe { apply_avx2(self.n, &self.re, &self.im, &xr, &xi, y) };
                return;
            }
        }
        apply_body::<false>(self.n, &self.re, &self.im, &xr, &xi, y);
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,fma")]
unsafe fn apply_avx2(n: usize, re: &[f64], im: &[f64], xr: &[f64], xi: &[f64], y: &mut [Complex64]) {
    apply_body::<true>(n, re, im, xr, xi, y)
}

#[inline(always)]
fn apply_body<const FMA: bool>(n: usize, re: &[f64], im: &[f64], xr: &[f64], xi: &[f64], y: &mut [Complex64]) {
    const W: usize = 8;
    for ((ar, ai), out) in re.chunks_exact(n).zip(im.chunks_exact(n)).zip(y.iter_mut()) {
        let mut sr = [0.0f64; W];
        let mut si = [0.0f64; W];
        let chunks = ar
            .chunks_exact(W)
            .zip(ai.chunks_exact(W))
            .zip(xr.chunks_exact(W).zip(xi.chunks_exact(W)));
        for ((a, b), (p, q)) in chunks {
            for l in 0..W {
                if FMA {
                    sr[l] = (-b[l]).mul_add(q[l], a[l].mul_add(p[l], sr[l]));
                    si[l] = b[l].mul_add(p[l], a[l].mul_add(q[l], si[l]));
                } else {
                    sr[l] += a[l] * p[l] - b[l] * q[l];
                    si[l] += a[l] * q[l] + b[l] * p[l];
                }
            }
        }
        let mut zr: f64 = sr.iter().sum();
        let mut zi: f64 = si.iter().sum();
        let tail = n - n % W;
        for j in tail..n {
            zr += ar[j] * xr[j] - ai[j] * xi[j];
            zi += ar[j] * xi[j] + ai[j] * xr[j];
        }
        *out = Complex64::new(zr, zi);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gaussian_complex, RngStream};

    #[test]
    fn apply_matches_dense_product() {
        for n in [1usize, 7, 8, 19, 64] {
            let a = gaussian_complex(RngStream::new(9, n as u64), n, n, 1.0).unwrap();
            let x: Vec<Complex64> = (0..n).map(|k| Complex64::new(k as f64 * 0.1, 1.0 - k as f64 * 0.05)).collect();
            let mut y = vec![Complex64::new(0.0, 0.0); n];
            let split = SplitSquare::from_matrix(&a);
            split.apply(&x, &mut y);
            let want = a.matvec(&x);
            for (p, q) in y.iter().zip(&want) {
                assert!((p - q).norm() < 1e-12);
            }
            let mut z = vec![Complex64::new(0.0, 0.0); n];
            apply_body::<false>(n, &split.re, &split.im,
                &x.iter().map(|z| z.re).collect::<Vec<_>>(),
                &x.iter().map(|z| z.im).collect::<Vec<_>>(), &mut z);
            for (p, q) in z.iter().zip(&want) {
                assert!((p - q).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_parts_recombine() {
        let n = 9;
        let a = gaussian_complex(RngStream::new(4, 0), n, n, 1.0).unwrap();
        let (h, k) = SplitSquare::from_matrix(&a).hermitian_parts();
        let (h, k) = (h.to_matrix(), k.to_matrix());
        assert_eq!(h.hermitian_defect(), 0.0);
        assert_eq!(k.hermitian_defect(), 0.0);
        let i = Complex64::new(0.0, 1.0);
        for r in 0..n {
            for c in 0..n {
                assert!((h[(r, c)] + i * k[(r, c)] - a[(r, c)]).norm() < 1e-14);
            }
        }
    }
}
