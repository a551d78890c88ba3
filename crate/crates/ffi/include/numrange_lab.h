#ifndef NUMRANGE_LAB_H
#define NUMRANGE_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum NrlStatus {
  NRL_STATUS_OK = 0,
  NRL_STATUS_NULL_POINTER = 1,
  NRL_STATUS_PARAMETER = 2,
  NRL_STATUS_CONTRACT = 3,
  NRL_STATUS_CONSISTENCY = 4,
  NRL_STATUS_GEOMETRY = 5,
  NRL_STATUS_CONVERGENCE = 6,
  NRL_STATUS_IO = 7,
  NRL_STATUS_BUFFER_TOO_SMALL = 8,
  NRL_STATUS_PANIC = 9,
} NrlStatus;

/**
 * Ensemble selector; values match the integer codes accepted by [`nrl_sample`].
 */
typedef enum NrlEnsemble {
  NRL_ENSEMBLE_GINIBRE = 0,
  NRL_ENSEMBLE_ELLIPTIC = 1,
  NRL_ENSEMBLE_CHIRAL_ELLIPTIC = 2,
  NRL_ENSEMBLE_WISHART = 3,
} NrlEnsemble;

/**
 * A support curve on a uniform angle grid.
 */
typedef struct NrlCurve NrlCurve;

/**
 * A sampled square complex matrix.
 */
typedef struct NrlMatrix NrlMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *nrl_version(void);

/**
 * Message of the last failure on this thread, or null if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *nrl_last_error(void);

/**
 * Samples one matrix. `ensemble` is an [`NrlEnsemble`] code; `nu` is used by
 * the chiral and Wishart ensembles.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum NrlStatus nrl_sample(uint32_t ensemble,
                          size_t n,
                          double tau,
                          size_t nu,
                          uint64_t seed,
                          struct NrlMatrix **out);

/**
 * Side length of a matrix, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a handle from [`nrl_sample`] not yet freed.
 */
size_t nrl_matrix_dim(const struct NrlMatrix *m);

/**
 * Copies the matrix in row-major order as interleaved `(re, im)` pairs into
 * `buf`, which must hold `2·dim²` doubles.
 *
 * # Safety
 * `m` must be a live handle and `buf` must point to `len` writable doubles.
 */
enum NrlStatus nrl_matrix_entries(const struct NrlMatrix *m, double *buf, size_t len);

/**
 * # Safety
 * `m` must be null or a live handle; it must not be used afterwards.
 */
void nrl_matrix_free(struct NrlMatrix *m);

/**
 * Empirical support curve of `m` on `thetas` uniform angles.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` valid for one handle.
 */
enum NrlStatus nrl_support_sweep(const struct NrlMatrix *m, size_t thetas, struct NrlCurve **out);

/**
 * Limiting support curve of an ensemble at real `alpha` on `thetas` angles.
 *
 * # Safety
 * `out` must be valid for one handle.
 */
enum NrlStatus nrl_theory_curve(uint32_t ensemble,
                                double tau,
                                double alpha,
                                size_t thetas,
                                struct NrlCurve **out);

/**
 * Number of angles in a curve, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live curve handle.
 */
size_t nrl_curve_len(const struct NrlCurve *c);

/**
 * Copies angles and support values; either output may be null.
 *
 * # Safety
 * `c` must be a live curve handle; non-null outputs must hold `len` doubles.
 */
enum NrlStatus nrl_curve_values(const struct NrlCurve *c,
                                double *thetas,
                                double *values,
                                size_t len);

/**
 * Numerical radius of an empirical curve.
 *
 * # Safety
 * `c` must be a live curve handle and `out` a writable double.
 */
enum NrlStatus nrl_numerical_radius(const struct NrlCurve *c, double *out);

/**
 * Hausdorff distance between the half-plane polygons of two curves.
 *
 * # Safety
 * `a` and `b` must be live curve handles and `out` a writable double.
 */
enum NrlStatus nrl_hausdorff(const struct NrlCurve *a, const struct NrlCurve *b, double *out);

/**
 * # Safety
 * `c` must be null or a live handle; it must not be used afterwards.
 */
void nrl_curve_free(struct NrlCurve *c);

/**
 * Larger real root of the Wishart quartic at one angle.
 *
 * # Safety
 * `out` must be a writable double.
 */
enum NrlStatus nrl_wishart_support(double tau, double alpha, double theta, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUMRANGE_LAB_H */
