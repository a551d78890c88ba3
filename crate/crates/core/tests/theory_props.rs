use std::f64::consts::TAU;

use numrange_lab::geometry::intersect_halfplanes;
use numrange_lab::numrange::uniform_thetas;
use numrange_lab::theory::*;
use proptest::prelude::*;

fn from_roots(roots: &[f64]) -> PolyReal {
    roots.iter().fold(PolyReal::new(vec![1.0]).unwrap(), |p, &r| p.mul(&PolyReal::new(vec![-r, 1.0]).unwrap()).unwrap())
}

fn params() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0..5.0f64, 0.01..0.99f64, 0.0..TAU)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn real_roots_recovers_separated_roots(mut roots in prop::collection::vec(-5.0..5.0f64, 1..=4)) {
        roots.sort_by(f64::total_cmp);
        prop_assume!(roots.windows(2).all(|w| w[1] - w[0] > 0.05));
        let found = real_roots(&from_roots(&roots), ROOT_TOL).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (a, b) in found.iter().zip(&roots) {
            prop_assert!((a - b).abs() < 1e-7 * (1.0 + b.abs()), "{} vs {}", a, b);
        }
    }

    #[test]
    fn complex_pairs_are_not_real(re in -3.0..3.0f64, im in 0.1..3.0f64, r in -3.0..3.0f64) {
        // (x − r)(x² − 2·re·x + re² + im²)
        let p = from_roots(&[r]).mul(&PolyReal::new(vec![re * re + im * im, -2.0 * re, 1.0]).unwrap()).unwrap();
        let found = real_roots(&p, ROOT_TOL).unwrap();
        prop_assert_eq!(found.len(), 1);
        prop_assert!((found[0] - r).abs() < 1e-8 * (1.0 + r.abs()));
    }

    #[test]
    fn quartic_has_exactly_two_distinct_real_roots((alpha, tau, theta) in params()) {
        let d = wishart_quartic(tau, alpha, theta).unwrap();
        let roots = real_roots(&d, ROOT_TOL).unwrap();
        prop_assert_eq!(roots.len(), 2, "roots {:?}", roots);
        let scale = 1.0 + roots.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        prop_assert!((roots[1] - roots[0]).abs() > 1e-6 * scale);
        prop_assert!(d.eval(tau * theta.cos() * alpha) < 0.0);
        let (lo, hi) = wishart_roots(tau, alpha, theta).unwrap();
        prop_assert!(lo < hi);
        prop_assert_eq!(wishart_support(tau, alpha, theta).unwrap(), hi);
    }

    #[test]
    fn discriminant_identity_holds((alpha, tau, theta) in params(), x in -10.0..10.0f64) {
        let rel = discriminant_matches_quartic(tau, alpha, theta, x).unwrap();
        prop_assert!(rel <= 1e-8, "{}", rel);
    }

    #[test]
    fn quartic_is_symmetric_in_theta((alpha, tau, theta) in params()) {
        let a = wishart_quartic_coeffs(tau, alpha, theta);
        let b = wishart_quartic_coeffs(tau, alpha, TAU - theta);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
        }
        let (s, t) = (wishart_support(tau, alpha, theta).unwrap(), wishart_support(tau, alpha, TAU - theta).unwrap());
        prop_assert!((s - t).abs() <= 1e-10 * (1.0 + s.abs()));
    }

    #[test]
    fn resultant_matches_closed_form((alpha, tau, theta) in params()) {
        let d = wishart_quartic(tau, alpha, theta).unwrap();
        let res = sylvester_resultant(&d, &d.derivative()).unwrap();
        let closed = quartic_resultant_closed_form(tau, alpha, theta);
        prop_assert!((res - closed).abs() <= 1e-7 * closed.abs().max(1e-300), "{} vs {}", res, closed);
    }

    /// Every constraint of the envelope is active: the polygon's support at
    /// each grid angle equals the quartic root there.
    #[test]
    fn envelope_is_a_valid_support_function(alpha in 0.0..5.0f64, tau in 0.0..0.99f64) {
        let grid = uniform_thetas(180);
        let values: Vec<f64> = grid.iter().map(|&t| wishart_support(tau, alpha, t).unwrap()).collect();
        let region = intersect_halfplanes(&grid, &values).unwrap();
        prop_assert!(region.area() > 0.0);
        let scale = region.scale();
        for (&t, &v) in grid.iter().zip(&values) {
            prop_assert!((region.support(t) - v).abs() <= 1e-9 * scale, "theta {}: {} vs {}", t, region.support(t), v);
        }
    }

    #[test]
    fn chiral_at_alpha_zero_is_elliptic(tau in 0.0..=1.0f64, theta in 0.0..TAU) {
        let (c, e) = (chiral_axes(tau, 0.0).unwrap(), elliptic_axes(tau).unwrap());
        prop_assert_eq!(c, e);
        prop_assert_eq!(ellipse_support(&c, theta), ellipse_support(&e, theta));
    }

    #[test]
    fn ansatz_matches_envelope_on_the_real_axis(alpha in 0.0..5.0f64, tau in 0.0..0.99f64) {
        let a = ellipse_ansatz(tau, alpha).unwrap();
        for t in [0.0, std::f64::consts::PI] {
            let d = (a.support(t) - wishart_support(tau, alpha, t).unwrap()).abs();
            prop_assert!(d <= 1e-9 * (1.0 + a.a + a.center.norm()), "theta {}: {}", t, d);
        }
    }
}

#[test]
fn tau_zero_support_is_constant_b() {
    for alpha in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let b = b_alpha(alpha);
        for t in uniform_thetas(36) {
            assert!((wishart_support(0.0, alpha, t).unwrap() - b).abs() <= 1e-10, "alpha {alpha}");
        }
        let a = ellipse_ansatz(0.0, alpha).unwrap();
        assert!(a.center.norm() < 1e-12 && (a.a - b).abs() < 1e-10 && (a.b - b).abs() < 1e-12);
    }
}

#[test]
fn two_factor_radius_closed_form() {
    let r = power_ginibre_radius().unwrap();
    let closed = ((11.0 + 5.0 * 5f64.sqrt()) / 8.0).sqrt();
    assert!((r - closed).abs() < 1e-12);
    assert!((r - b_alpha(0.0)).abs() < 1e-12);
    assert!(r < 2.0);
    assert!((r - 1.6651).abs() < 5e-5);
}

#[test]
fn hermitian_limit_of_the_real_extent() {
    let (lo, hi) = wishart_roots(0.9999, 1.0, 0.0).unwrap();
    let (lm, lp) = hermitian_limit_endpoints(1.0);
    assert!((lo - lm).abs() < 2e-2 && (hi - lp).abs() < 2e-2, "{lo} {hi} vs {lm} {lp}");
}

#[test]
fn tau_one_is_rejected() {
    assert!(wishart_quartic(1.0, 1.0, 0.0).is_err());
}
