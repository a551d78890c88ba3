use std::ffi::CStr;
use std::ptr;

use numrange_lab_ffi::*;

fn last_error() -> String {
    let p = nrl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(nrl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn sample_sweep_and_compare_round_trip() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(nrl_sample(NrlEnsemble::Elliptic as u32, 40, 0.5, 0, 7, &mut m), NrlStatus::Ok);
        assert_eq!(nrl_matrix_dim(m), 40);
        let mut buf = vec![0.0; 2 * 40 * 40];
        assert_eq!(nrl_matrix_entries(m, buf.as_mut_ptr(), buf.len()), NrlStatus::Ok);
        assert!(buf.iter().any(|&x| x != 0.0));
        assert_eq!(nrl_matrix_entries(m, buf.as_mut_ptr(), 10), NrlStatus::BufferTooSmall);

        let mut emp = ptr::null_mut();
        assert_eq!(nrl_support_sweep(m, 90, &mut emp), NrlStatus::Ok);
        assert_eq!(nrl_curve_len(emp), 90);
        let mut theo = ptr::null_mut();
        assert_eq!(nrl_theory_curve(NrlEnsemble::Elliptic as u32, 0.5, 0.0, 90, &mut theo), NrlStatus::Ok);

        let (mut thetas, mut values) = (vec![0.0; 90], vec![0.0; 90]);
        assert_eq!(nrl_curve_values(theo, thetas.as_mut_ptr(), values.as_mut_ptr(), 90), NrlStatus::Ok);
        // Ellipse with semi-axes √3 and 1.
        assert!((values[0] - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(thetas[0], 0.0);

        let (mut r, mut d) = (0.0, 0.0);
        assert_eq!(nrl_numerical_radius(emp, &mut r), NrlStatus::Ok);
        assert_eq!(nrl_hausdorff(emp, theo, &mut d), NrlStatus::Ok);
        assert!(r > 1.0 && r < 2.5, "{r}");
        assert!(d > 0.0 && d < 1.0, "{d}");
        let mut self_d = 1.0;
        assert_eq!(nrl_hausdorff(theo, theo, &mut self_d), NrlStatus::Ok);
        assert_eq!(self_d, 0.0);

        nrl_curve_free(emp);
        nrl_curve_free(theo);
        nrl_matrix_free(m);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(nrl_sample(9, 10, 0.0, 0, 1, &mut m), NrlStatus::Parameter);
        assert!(last_error().contains("unknown ensemble"));
        assert_eq!(nrl_sample(1, 10, 1.5, 0, 1, &mut m), NrlStatus::Parameter);
        assert!(last_error().contains("tau"));
        assert!(m.is_null());
        assert_eq!(nrl_sample(0, 10, 0.0, 0, 1, ptr::null_mut()), NrlStatus::NullPointer);
        assert_eq!(nrl_curve_values(ptr::null(), ptr::null_mut(), ptr::null_mut(), 0), NrlStatus::NullPointer);
        let mut x = 0.0;
        assert_eq!(nrl_wishart_support(1.0, 0.0, 0.0, &mut x), NrlStatus::Parameter);
        // Theoretical curves carry no boundary points.
        let mut theo = ptr::null_mut();
        assert_eq!(nrl_theory_curve(0, 0.0, 0.0, 16, &mut theo), NrlStatus::Ok);
        assert_eq!(nrl_numerical_radius(theo, &mut x), NrlStatus::Contract);
        nrl_curve_free(theo);
        assert_eq!(nrl_matrix_dim(ptr::null()), 0);
        assert_eq!(nrl_curve_len(ptr::null()), 0);
        nrl_matrix_free(ptr::null_mut());
        nrl_curve_free(ptr::null_mut());
    }
}

#[test]
fn wishart_support_at_tau_zero() {
    let mut x = 0.0;
    assert_eq!(unsafe { nrl_wishart_support(0.0, 0.0, 1.0, &mut x) }, NrlStatus::Ok);
    assert!((x - 1.6650953383927807).abs() < 1e-12);
}

#[test]
fn chiral_sample_dimension() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(nrl_sample(NrlEnsemble::ChiralElliptic as u32, 10, 0.3, 4, 1, &mut m), NrlStatus::Ok);
        assert_eq!(nrl_matrix_dim(m), 24);
        nrl_matrix_free(m);
    }
}
