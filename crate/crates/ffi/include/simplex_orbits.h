#ifndef SIMPLEX_ORBITS_H
#define SIMPLEX_ORBITS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum SoStatus {
  SO_STATUS_OK = 0,
  /*
   A required pointer was null or a string was not UTF-8.
   */
  SO_STATUS_NULL_ARGUMENT = 1,
  SO_STATUS_INVALID_INPUT = 2,
  SO_STATUS_PLANAR_INPUT = 3,
  SO_STATUS_NON_PLANAR_INPUT = 4,
  SO_STATUS_NON_CONVEX_LABELING = 5,
  /*
   The iteration is undefined at this configuration.
   */
  SO_STATUS_DEGENERATE = 6,
  SO_STATUS_INSUFFICIENT_DATA = 7,
  SO_STATUS_CONSISTENCY_FAULT = 8,
  SO_STATUS_REJECTION_EXHAUSTED = 9,
  SO_STATUS_INDEX_OUT_OF_RANGE = 10,
  SO_STATUS_PANIC = 11,
} SoStatus;

/*
 Working precision and tolerances.
 */
typedef struct SoContext SoContext;

/*
 A computed orbit.
 */
typedef struct SoOrbit SoOrbit;

/*
 Squared edge lengths of a tetrahedron or cyclic quadrilateral.
 */
typedef struct SoParams SoParams;

/*
 Closed-form limit of an edge-parameter orbit.
 */
typedef struct SoLimit {
  /*
   0 for tetrahedra, 1 for quadrilaterals.
   */
  int32_t regime;
  double d12_inf;
  double d13_inf;
  double d14_inf;
  double l_factor;
  double rate_r;
} SoLimit;

/*
 Fitted convergence order of `|OG_n|`.
 */
typedef struct SoOrderEstimate {
  double order;
  double constant;
  /*
   Meaningful only when `has_lambda` is nonzero.
   */
  double lambda;
  int32_t has_lambda;
  double residual;
  uintptr_t points;
} SoOrderEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static string.
 */
const char *so_version(void);

/*
 Message of the last failure on this thread, or null. Free with
 `so_string_free`.
 */
char *so_last_error_message(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void so_string_free(char *s);

/*
 # Safety
 `out` must be a valid pointer to write the handle to.
 */
enum SoStatus so_context_new(uint32_t significand_bits, struct SoContext **out);

/*
 # Safety
 `ctx` must be null or a handle from `so_context_new`, not yet freed.
 */
void so_context_free(struct SoContext *ctx);

/*
 Validated edge parameters `(d12, d13, d14, d23, d24, d34)` from six decimal
 strings.

 # Safety
 `values` must point to six valid C strings; `ctx` and `out` must be valid.
 */
enum SoStatus so_params_from_strings(const struct SoContext *ctx,
                                     const char *const *values,
                                     struct SoParams **out);

/*
 Validated edge parameters from six doubles (converted exactly).

 # Safety
 `values` must point to six doubles; `ctx` and `out` must be valid.
 */
enum SoStatus so_params_from_doubles(const struct SoContext *ctx,
                                     const double *values,
                                     struct SoParams **out);

/*
 # Safety
 `params` must be null or a live handle.
 */
void so_params_free(struct SoParams *params);

/*
 Entry `index` (0..6, storage order `d12, d13, d14, d23, d24, d34`).

 # Safety
 Pointers must be valid.
 */
enum SoStatus so_params_get(const struct SoParams *params, uintptr_t index, double *out);

/*
 `|OG|²`, the Cayley-Menger determinant and the Ptolemy quantity.

 # Safety
 Pointers must be valid; any of the outputs may be null to skip it.
 */
enum SoStatus so_params_quantities(const struct SoParams *params,
                                   double *og_squared,
                                   double *gamma,
                                   double *ptolemy);

/*
 Limit of a non-planar tetrahedron.

 # Safety
 Pointers must be valid.
 */
enum SoStatus so_tetra_limit(const struct SoContext *ctx,
                             const struct SoParams *params,
                             struct SoLimit *out);

/*
 Limit rectangle of a convex cyclic quadrilateral.

 # Safety
 Pointers must be valid.
 */
enum SoStatus so_quad_limit(const struct SoContext *ctx,
                            const struct SoParams *params,
                            struct SoLimit *out);

/*
 Writes 1 when the limit is regular (tetrahedron) or a square
 (quadrilateral), else 0.

 # Safety
 Pointers must be valid.
 */
enum SoStatus so_is_isodynamic(const struct SoContext *ctx,
                               const struct SoParams *params,
                               int32_t *out);

/*
 Orbit of the edge-parameter map.

 # Safety
 Pointers must be valid.
 */
enum SoStatus so_orbit_run_params(const struct SoContext *ctx,
                                  const struct SoParams *params,
                                  uintptr_t steps,
                                  int32_t stop_when_converged,
                                  struct SoOrbit **out);

/*
 Orbit of the triangle map from decimal strings `s`, `t` (`u = 4t - s²`).

 # Safety
 Pointers must be valid C strings / handles.
 */
enum SoStatus so_orbit_run_triangle(const struct SoContext *ctx,
                                    const char *s,
                                    const char *t,
                                    uintptr_t steps,
                                    int32_t stop_when_converged,
                                    struct SoOrbit **out);

/*
 Orbit of the isosceles-trapezoid abscissa map from decimal strings.

 # Safety
 Pointers must be valid C strings / handles.
 */
enum SoStatus so_orbit_run_trapezoid(const struct SoContext *ctx,
                                     const char *a,
                                     const char *b,
                                     uintptr_t steps,
                                     int32_t stop_when_converged,
                                     struct SoOrbit **out);

/*
 # Safety
 `orbit` must be null or a live handle.
 */
void so_orbit_free(struct SoOrbit *orbit);

/*
 Number of records (the initial state included).

 # Safety
 `orbit` must be a live handle or null (returns 0).
 */
uintptr_t so_orbit_len(const struct SoOrbit *orbit);

/*
 `og2` and `p` of record `index`; either output may be null.

 # Safety
 Pointers must be valid.
 */
enum SoStatus so_orbit_record(const struct SoOrbit *orbit, uintptr_t index, double *og2, double *p);

/*
 Full orbit as a JSON (`json != 0`) or CSV document with decimal strings.
 Free with `so_string_free`.

 # Safety
 Pointers must be valid.
 */
enum SoStatus so_orbit_document(const struct SoContext *ctx,
                                const struct SoOrbit *orbit,
                                int32_t json,
                                char **out);

/*
 Fits `|OG_{n+1}| ≈ C |OG_n|^q` on the orbit tail.

 # Safety
 Pointers must be valid.
 */
enum SoStatus so_orbit_estimate_order(const struct SoContext *ctx,
                                      const struct SoOrbit *orbit,
                                      struct SoOrderEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIMPLEX_ORBITS_H */
