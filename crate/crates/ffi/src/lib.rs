//! C ABI over `numrange_lab`.
//!
//! Objects cross the boundary as opaque heap handles created by `nrl_*_new`
//! style constructors and released with the matching `*_free`. Every fallible
//! call returns an [`NrlStatus`]; the message of the most recent failure on the
//! calling thread is available from [`nrl_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use numrange_lab::ensembles::{EnsembleKind, EnsembleSpec};
use numrange_lab::geometry::{halfplane_intersection, hausdorff};
use numrange_lab::linalg::ComplexMatrix;
use numrange_lab::numrange::{numerical_radius, support_sweep, uniform_thetas, SupportCurve};
use numrange_lab::theory::{limit_support_at, wishart_support};
use numrange_lab::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NrlStatus {
    Ok = 0,
    NullPointer = 1,
    Parameter = 2,
    Contract = 3,
    Consistency = 4,
    Geometry = 5,
    Convergence = 6,
    Io = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Ensemble selector; values match the integer codes accepted by [`nrl_sample`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NrlEnsemble {
    Ginibre = 0,
    Elliptic = 1,
    ChiralElliptic = 2,
    Wishart = 3,
}

/// A sampled square complex matrix.
pub struct NrlMatrix {
    inner: ComplexMatrix,
}

/// A support curve on a uniform angle grid.
pub struct NrlCurve {
    inner: SupportCurve,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> NrlStatus {
    match e {
        Error::Parameter(_) => NrlStatus::Parameter,
        Error::Contract(_) => NrlStatus::Contract,
        Error::Consistency(_) => NrlStatus::Consistency,
        Error::Geometry(_) => NrlStatus::Geometry,
        Error::Convergence(_) => NrlStatus::Convergence,
        Error::Io { .. } => NrlStatus::Io,
    }
}

/// Runs `f`, translating library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (NrlStatus, String)>) -> NrlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NrlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside numrange_lab".into());
            NrlStatus::Panic
        }
    }
}

fn lib<T>(r: numrange_lab::Result<T>) -> Result<T, (NrlStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (NrlStatus, String) {
    (NrlStatus::NullPointer, format!("{what} is null"))
}

fn kind_from(code: u32) -> Result<EnsembleKind, (NrlStatus, String)> {
    Ok(match code {
        0 => EnsembleKind::Ginibre,
        1 => EnsembleKind::Elliptic,
        2 => EnsembleKind::ChiralElliptic,
        3 => EnsembleKind::Wishart,
        other => return Err((NrlStatus::Parameter, format!("unknown ensemble code {other}"))),
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nrl_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => c"",
    };
    VERSION.as_ptr()
}

/// Message of the last failure on this thread, or null if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nrl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Samples one matrix. `ensemble` is an [`NrlEnsemble`] code; `nu` is used by
/// the chiral and Wishart ensembles.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn nrl_sample(ensemble: u32, n: usize, tau: f64, nu: usize, seed: u64, out: *mut *mut NrlMatrix) -> NrlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = EnsembleSpec::new(kind_from(ensemble)?, n).with_tau(tau).with_nu(nu).with_seed(seed);
        let m = lib(spec.sample())?;
        // SAFETY: checked non-null above; the caller guarantees validity.
        unsafe { *out = Box::into_raw(Box::new(NrlMatrix { inner: m })) };
        Ok(())
    })
}

/// Side length of a matrix, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a handle from [`nrl_sample`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nrl_matrix_dim(m: *const NrlMatrix) -> usize {
    // SAFETY: caller contract.
    unsafe { m.as_ref() }.map_or(0, |m| m.inner.rows())
}

/// Copies the matrix in row-major order as interleaved `(re, im)` pairs into
/// `buf`, which must hold `2·dim²` doubles.
///
/// # Safety
/// `m` must be a live handle and `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nrl_matrix_entries(m: *const NrlMatrix, buf: *mut f64, len: usize) -> NrlStatus {
    guard(|| {
        // SAFETY: caller contract.
        let m = unsafe { m.as_ref() }.ok_or_else(|| null("matrix"))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let data = m.inner.as_slice();
        if len < 2 * data.len() {
            return Err((NrlStatus::BufferTooSmall, format!("need {} doubles, got {len}", 2 * data.len())));
        }
        // SAFETY: `buf` holds at least 2·data.len() doubles.
        let out = unsafe { std::slice::from_raw_parts_mut(buf, 2 * data.len()) };
        for (k, z) in data.iter().enumerate() {
            out[2 * k] = z.re;
            out[2 * k + 1] = z.im;
        }
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nrl_matrix_free(m: *mut NrlMatrix) {
    if !m.is_null() {
        // SAFETY: the handle came from Box::into_raw in nrl_sample.
        drop(unsafe { Box::from_raw(m) });
    }
}

fn store_curve(curve: SupportCurve, out: *mut *mut NrlCurve) {
    // SAFETY: callers check `out` for null first.
    unsafe { *out = Box::into_raw(Box::new(NrlCurve { inner: curve })) };
}

/// Empirical support curve of `m` on `thetas` uniform angles.
///
/// # Safety
/// `m` must be a live matrix handle and `out` valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn nrl_support_sweep(m: *const NrlMatrix, thetas: usize, out: *mut *mut NrlCurve) -> NrlStatus {
    guard(|| {
        // SAFETY: caller contract.
        let m = unsafe { m.as_ref() }.ok_or_else(|| null("matrix"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        store_curve(lib(support_sweep(&m.inner, &uniform_thetas(thetas)))?, out);
        Ok(())
    })
}

/// Limiting support curve of an ensemble at real `alpha` on `thetas` angles.
///
/// # Safety
/// `out` must be valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn nrl_theory_curve(ensemble: u32, tau: f64, alpha: f64, thetas: usize, out: *mut *mut NrlCurve) -> NrlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let kind = kind_from(ensemble)?;
        let curve = lib(SupportCurve::from_fn(uniform_thetas(thetas), |t| limit_support_at(kind, tau, alpha, &[], t)))?;
        store_curve(curve, out);
        Ok(())
    })
}

/// Number of angles in a curve, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn nrl_curve_len(c: *const NrlCurve) -> usize {
    // SAFETY: caller contract.
    unsafe { c.as_ref() }.map_or(0, |c| c.inner.len())
}

/// Copies angles and support values; either output may be null.
///
/// # Safety
/// `c` must be a live curve handle; non-null outputs must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nrl_curve_values(c: *const NrlCurve, thetas: *mut f64, values: *mut f64, len: usize) -> NrlStatus {
    guard(|| {
        // SAFETY: caller contract.
        let c = unsafe { c.as_ref() }.ok_or_else(|| null("curve"))?;
        let n = c.inner.len();
        if len < n {
            return Err((NrlStatus::BufferTooSmall, format!("need {n} doubles, got {len}")));
        }
        for (dst, src) in [(thetas, c.inner.thetas()), (values, c.inner.values())] {
            if !dst.is_null() {
                // SAFETY: `dst` holds at least `len >= n` doubles.
                unsafe { ptr::copy_nonoverlapping(src.as_ptr(), dst, n) };
            }
        }
        Ok(())
    })
}

/// Numerical radius of an empirical curve.
///
/// # Safety
/// `c` must be a live curve handle and `out` a writable double.
#[no_mangle]
pub unsafe extern "C" fn nrl_numerical_radius(c: *const NrlCurve, out: *mut f64) -> NrlStatus {
    guard(|| {
        // SAFETY: caller contract.
        let c = unsafe { c.as_ref() }.ok_or_else(|| null("curve"))?;
        // SAFETY: caller contract.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = lib(numerical_radius(&c.inner))?;
        Ok(())
    })
}

/// Hausdorff distance between the half-plane polygons of two curves.
///
/// # Safety
/// `a` and `b` must be live curve handles and `out` a writable double.
#[no_mangle]
pub unsafe extern "C" fn nrl_hausdorff(a: *const NrlCurve, b: *const NrlCurve, out: *mut f64) -> NrlStatus {
    guard(|| {
        // SAFETY: caller contract.
        let (a, b) = unsafe { (a.as_ref(), b.as_ref()) };
        let (a, b) = (a.ok_or_else(|| null("a"))?, b.ok_or_else(|| null("b"))?);
        // SAFETY: caller contract.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let (pa, pb) = (lib(halfplane_intersection(&a.inner))?, lib(halfplane_intersection(&b.inner))?);
        *out = lib(hausdorff(&pa, &pb))?;
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nrl_curve_free(c: *mut NrlCurve) {
    if !c.is_null() {
        // SAFETY: the handle came from Box::into_raw in store_curve.
        drop(unsafe { Box::from_raw(c) });
    }
}

/// Larger real root of the Wishart quartic at one angle.
///
/// # Safety
/// `out` must be a writable double.
#[no_mangle]
pub unsafe extern "C" fn nrl_wishart_support(tau: f64, alpha: f64, theta: f64, out: *mut f64) -> NrlStatus {
    guard(|| {
        // SAFETY: caller contract.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = lib(wishart_support(tau, alpha, theta))?;
        Ok(())
    })
}
