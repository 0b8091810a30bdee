#ifndef MODCONT_H
#define MODCONT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * The functions of the construction.
 */
typedef enum McFunctionKind {
  MC_FUNCTION_KIND_F = 0,
  MC_FUNCTION_KIND_G = 1,
  MC_FUNCTION_KIND_H = 2,
  MC_FUNCTION_KIND_F1 = 3,
  MC_FUNCTION_KIND_F2 = 4,
  MC_FUNCTION_KIND_F3 = 5,
} McFunctionKind;

typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_POINTER = 1,
  MC_STATUS_DOMAIN = 2,
  MC_STATUS_PRECONDITION = 3,
  MC_STATUS_CONSISTENCY = 4,
  MC_STATUS_BUFFER_TOO_SMALL = 5,
  MC_STATUS_PANIC = 6,
} McStatus;

/**
 * Opaque piecewise function.
 */
typedef struct McFunction McFunction;

/**
 * Opaque modulus-of-continuity table.
 */
typedef struct McModulusTable McModulusTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`) and returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t mc_last_error_message(char *buf, size_t len);

/**
 * `α = log 2 / log 3`.
 */
double mc_alpha(void);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_cantor_eval(double x, uint32_t digits, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_f2_eval(double x, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_f3_eval(double x, double *out);

/**
 * `φ(x, δ) = g(x + δ) − g(x)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_phi(double x, double delta, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_psi(double delta, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_find_delta_star(double tol, double *out);

/**
 * Closed-form `ω_g(δ)` for `δ ∈ [0, 7]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_omega_g_closed(double delta, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_max_phi_boundary(double delta, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_max_phi_critical(double delta, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_function_new(enum McFunctionKind kind, struct McFunction **out);

/**
 * Continuous piecewise-linear function through `n ≥ 2` knots with strictly increasing `xs`.
 *
 * # Safety
 * `xs` and `ys` must be valid for `n` reads; `out` must be valid for writes.
 */
enum McStatus mc_function_piecewise_linear(const double *xs,
                                           const double *ys,
                                           size_t n,
                                           struct McFunction **out);

/**
 * # Safety
 * `fun` must be a live handle or null.
 */
void mc_function_free(struct McFunction *fun);

/**
 * # Safety
 * `fun` must be a live handle; `out` must be valid for writes.
 */
enum McStatus mc_function_eval(const struct McFunction *fun, double x, double *out);

/**
 * # Safety
 * `fun` must be a live handle; `lo` and `hi` must be valid for writes.
 */
enum McStatus mc_function_domain(const struct McFunction *fun, double *lo, double *hi);

/**
 * Sum of `|fun(b) − fun(a)|` over the `2^level` intervals of the Cantor
 * construction stage `level`, placed in `[2, 3]`; `total_length` receives the
 * cover's length `(2/3)^level`. Either out-pointer may be null.
 *
 * # Safety
 * `fun` must be a live handle whose domain contains `[2, 3]`.
 */
enum McStatus mc_singular_cover_increment(const struct McFunction *fun,
                                          uint32_t level,
                                          double *sum,
                                          double *total_length);

/**
 * Grid-oracle modulus of `fun` on `grid_n ≥ 2` equally spaced points.
 *
 * # Safety
 * `fun` must be a live handle; `out` must be valid for writes.
 */
enum McStatus mc_modulus_grid(const struct McFunction *fun,
                              size_t grid_n,
                              struct McModulusTable **out);

/**
 * Closed-form `ω_g` tabulated on `grid_n` points of `[0, 7]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum McStatus mc_omega_g_table(size_t grid_n, struct McModulusTable **out);

/**
 * Least concave majorant of `table`.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid for writes.
 */
enum McStatus mc_modulus_concave_majorant(const struct McModulusTable *table,
                                          struct McModulusTable **out);

/**
 * # Safety
 * `table` must be a live handle or null.
 */
void mc_modulus_free(struct McModulusTable *table);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `table` must be a live handle or null.
 */
size_t mc_modulus_len(const struct McModulusTable *table);

/**
 * Copies the δ and ω columns into caller buffers of capacity `cap`.
 * Either buffer may be null to skip that column.
 *
 * # Safety
 * `table` must be a live handle; non-null buffers must be valid for `cap` writes.
 */
enum McStatus mc_modulus_copy(const struct McModulusTable *table,
                              double *deltas,
                              double *values,
                              size_t cap);

/**
 * Linear interpolation of the table at `delta`, constant beyond its ends.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid for writes.
 */
enum McStatus mc_modulus_value_at(const struct McModulusTable *table, double delta, double *out);

/**
 * Whether the table's values are nondecreasing in δ; false for a null handle.
 *
 * # Safety
 * `table` must be a live handle or null.
 */
bool mc_modulus_is_nondecreasing(const struct McModulusTable *table);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODCONT_H */
