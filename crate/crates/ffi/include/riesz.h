/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef RIESZ_H
#define RIESZ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes.
typedef enum RieszStatus {
  RIESZ_STATUS_OK = 0,
  // A required pointer was null.
  RIESZ_STATUS_NULL_POINTER = 1,
  // Bad shape text, parameters or exponent.
  RIESZ_STATUS_INVALID_ARGUMENT = 2,
  // The numerics failed (fit conditioning, quadrature, disagreement).
  RIESZ_STATUS_NUMERICAL = 3,
  // The exponent is a pole of the requested quantity.
  RIESZ_STATUS_POLE = 4,
  // Dimension or shape kind not supported by this call.
  RIESZ_STATUS_UNSUPPORTED = 5,
  // A Rust panic was caught.
  RIESZ_STATUS_PANIC = 6,
} RieszStatus;

// Opaque parsed shape.
typedef struct RieszShape RieszShape;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after success is
// not guaranteed. The pointer stays valid until the next failing call.
const char *riesz_last_error(void);

// Library version as a static NUL-terminated string.
const char *riesz_version(void);

// Parse a shape such as `"ellipse(a=2,b=1)"` into `*out`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum RieszStatus riesz_shape_new(const char *spec, struct RieszShape **out);

// Release a shape. Null is ignored.
//
// # Safety
// `shape` must come from [`riesz_shape_new`] and not be used afterwards.
void riesz_shape_free(struct RieszShape *shape);

// Intrinsic dimension: 1 for curves, 2 for surfaces, n for domains in Rⁿ.
//
// # Safety
// `shape` must be a live handle; `out` must be writable.
enum RieszStatus riesz_shape_dim(const struct RieszShape *shape, uint32_t *out);

// Regularized energy E(z), pole-removed at poles. `residue_*` may be null;
// otherwise they receive the residue at z (zero off the pole set).
//
// # Safety
// `shape` must be a live handle; non-null pointers must be writable.
enum RieszStatus riesz_energy(const struct RieszShape *shape,
                              double z_re,
                              double z_im,
                              double *value_re,
                              double *value_im,
                              double *residue_re,
                              double *residue_im);

// Residue at z = −k from curvature integrals. Writes 0 when −k is not a pole.
//
// # Safety
// `shape` must be a live handle; `out` must be writable.
enum RieszStatus riesz_residue(const struct RieszShape *shape, uint32_t k, double *out);

// Closed-form beta function of the unit sphere Sⁿ ⊂ Rⁿ⁺¹.
//
// # Safety
// `out_re` and `out_im` must be writable.
enum RieszStatus riesz_beta_sphere(uint32_t n,
                                   double z_re,
                                   double z_im,
                                   double *out_re,
                                   double *out_im);

// Closed-form beta function of the unit ball Bⁿ.
//
// # Safety
// `out_re` and `out_im` must be writable.
enum RieszStatus riesz_beta_ball(uint32_t n,
                                 double z_re,
                                 double z_im,
                                 double *out_re,
                                 double *out_im);

// Hadamard finite part of ∫₀^d t^z φ(t) dt for the polynomial
// φ(t) = Σ coeffs[i]·tⁱ. `parity`: 0 none, 1 even, 2 odd.
//
// # Safety
// `coeffs` must point at `len` doubles; outputs must be writable.
enum RieszStatus riesz_finite_part(const double *coeffs,
                                   size_t len,
                                   uint32_t parity,
                                   double d,
                                   double z_re,
                                   double z_im,
                                   double *out_re,
                                   double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIESZ_H */
