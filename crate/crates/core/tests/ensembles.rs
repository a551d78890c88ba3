use num_complex::Complex64;
use numrange_lab::ensembles::*;
use numrange_lab::linalg::{eigenvalues, ComplexMatrix};
use numrange_lab::numrange::rotated_hermitian_part;
use numrange_lab::theory::limit_droplet;

fn off_diagonal(a: &ComplexMatrix) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..a.rows()).flat_map(move |i| (0..a.cols()).filter(move |&j| j != i).map(move |j| (i, j)))
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    s / n as f64
}

#[test]
fn ginibre_entry_variance_is_one_over_n() {
    let n = 300;
    let g = sample_ginibre(n, 11).unwrap();
    let v = mean(g.as_slice().iter().map(|z| z.norm_sqr())) * n as f64;
    assert!((v - 1.0).abs() < 0.01, "{v}");
    // Mean of N² entries with standard deviation N^{-1/2}: 4σ = 4·N^{-3/2}.
    let m = g.as_slice().iter().sum::<Complex64>() / (n * n) as f64;
    assert!(m.norm() <= 4.0 / (n as f64).powf(1.5), "{m}");
}

#[test]
fn elliptic_pair_correlation_is_tau() {
    let n = 300;
    for tau in [0.0, 0.3, 0.8] {
        let x = sample_elliptic(n, tau, 5).unwrap();
        let var = mean(x.as_slice().iter().map(|z| z.norm_sqr())) * n as f64;
        let corr = mean(off_diagonal(&x).map(|(i, j)| (x[(i, j)] * x[(j, i)]).re)) * n as f64;
        assert!((var - 1.0).abs() < 0.01, "tau={tau}: {var}");
        assert!((corr - tau).abs() < 0.01, "tau={tau}: {corr}");
    }
}

/// Off-diagonal entries of `Re(e^{iθ}X)` have `E|h|² = (1 + τ cos 2θ)/(2N)`.
#[test]
fn rotated_elliptic_entry_variance() {
    let (n, tau, theta) = (300, 0.6, std::f64::consts::FRAC_PI_3);
    let h = rotated_hermitian_part(&sample_elliptic(n, tau, 8).unwrap(), theta).unwrap();
    let measured = mean(off_diagonal(&h).map(|(i, j)| h[(i, j)].norm_sqr())) * 2.0 * n as f64;
    let expected = 1.0 + tau * (2.0 * theta).cos();
    assert!((measured - expected).abs() < 0.01, "{measured} vs {expected}");
}

#[test]
fn p_and_q_are_uncorrelated_with_variance_one_over_2n() {
    let (n, nu) = (200, 100);
    let (p, q) = sample_pq_pair(n, nu, 3).unwrap();
    assert_eq!((p.rows(), p.cols()), (n, n + nu));
    let scale = 2.0 * n as f64;
    let vp = mean(p.as_slice().iter().map(|z| z.norm_sqr())) * scale;
    let vq = mean(q.as_slice().iter().map(|z| z.norm_sqr())) * scale;
    assert!((vp - 1.0).abs() < 0.1 && (vq - 1.0).abs() < 0.1, "{vp} {vq}");
    // Each product has standard deviation 1/(2N); the mean over m entries
    // has 1/(2N·√m).
    let m = (n * (n + nu)) as f64;
    let cross = p.as_slice().iter().zip(q.as_slice()).map(|(a, b)| a * b.conj()).sum::<Complex64>() / m;
    assert!(cross.norm() <= 4.0 / (scale * m.sqrt()), "{cross}");
}

#[test]
fn samples_are_reproducible_and_seed_dependent() {
    for kind in [EnsembleKind::Ginibre, EnsembleKind::Elliptic, EnsembleKind::ChiralElliptic, EnsembleKind::Wishart] {
        let spec = EnsembleSpec::new(kind, 12).with_tau(0.4).with_nu(3).with_seed(21);
        let a = spec.sample().unwrap();
        assert_eq!(a, spec.sample().unwrap(), "{kind}");
        assert!(a.max_abs_diff(&spec.clone().with_seed(22).sample().unwrap()) > 0.0, "{kind}");
        assert_eq!(a.rows(), spec.dim());
    }
}

#[test]
fn sizes() {
    assert_eq!(EnsembleSpec::new(EnsembleKind::ChiralElliptic, 250).with_nu(250).sample().unwrap().rows(), 750);
    assert_eq!(EnsembleSpec::new(EnsembleKind::Wishart, 30).with_alpha(2.0).sample().unwrap().rows(), 30);
    let w = EnsembleSpec::new(EnsembleKind::GinibreWord, 20).with_word(parse_word("Y1,Y2*,Y3").unwrap());
    assert_eq!(w.sample().unwrap().rows(), 20);
}

#[test]
fn alpha_rounds_to_nearest_nu() {
    assert_eq!(nu_from_alpha(0.5, 7), 4);
    assert_eq!(nu_from_alpha(1.0, 250), 250);
    assert_eq!(nu_from_alpha(0.0, 9), 0);
    assert_eq!(EnsembleSpec::new(EnsembleKind::Wishart, 500).with_alpha(1.0 / 3.0).nu, 167);
}

/// Fraction of eigenvalues inside the droplet dilated by 5% about its centre.
fn containment(spec: &EnsembleSpec) -> f64 {
    let d = limit_droplet(spec).unwrap().unwrap();
    let eigs = eigenvalues(&spec.sample().unwrap()).unwrap();
    eigs.iter().filter(|&&z| d.contains_dilated(z, 1.05)).count() as f64 / eigs.len() as f64
}

#[test]
fn chiral_eigenvalues_fill_the_quartic_droplet() {
    let spec = EnsembleSpec::new(EnsembleKind::ChiralElliptic, 250).with_nu(250).with_tau(0.5);
    let f = containment(&spec);
    assert!(f >= 0.99, "{f}");
}

#[test]
fn wishart_eigenvalues_fill_the_shifted_ellipse() {
    let f = containment(&EnsembleSpec::new(EnsembleKind::Wishart, 500));
    assert!(f >= 0.99, "{f}");
    let f = containment(&EnsembleSpec::new(EnsembleKind::Wishart, 300).with_alpha(1.0).with_tau(0.5));
    assert!(f >= 0.99, "{f}");
}

#[test]
fn ginibre_type_eigenvalues_fill_their_discs_and_ellipses() {
    for spec in [
        EnsembleSpec::new(EnsembleKind::Ginibre, 400),
        EnsembleSpec::new(EnsembleKind::Elliptic, 400).with_tau(0.5),
        EnsembleSpec::new(EnsembleKind::GinibreWord, 300).with_word(parse_word("Y1Y2").unwrap()),
    ] {
        let f = containment(&spec);
        assert!(f >= 0.99, "{:?} tau={}: {f}", spec.kind, spec.tau);
    }
}

#[test]
fn invalid_specs_are_parameter_errors() {
    use numrange_lab::Error;
    for spec in [
        EnsembleSpec::new(EnsembleKind::Ginibre, 0),
        EnsembleSpec::new(EnsembleKind::Elliptic, 5).with_tau(-0.1),
        EnsembleSpec::new(EnsembleKind::GinibreWord, 5),
    ] {
        assert!(matches!(spec.sample(), Err(Error::Parameter(_))), "{spec:?}");
    }
}
