#ifndef HYPERSPEC_H
#define HYPERSPEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  HS_STATUS_NULL_POINTER = 1,
  HS_STATUS_INVALID_ARGUMENT = 2,
  HS_STATUS_PARSE_ERROR = 3,
  HS_STATUS_DIMENSION_MISMATCH = 4,
  HS_STATUS_NOT_CONNECTED = 5,
  HS_STATUS_BAD_PARITY = 6,
  HS_STATUS_NO_CONVERGENCE = 7,
  HS_STATUS_INFEASIBLE = 8,
  HS_STATUS_COMPUTE_ERROR = 9,
  HS_STATUS_PANIC = 10,
} HsStatus;

typedef enum HsOperator {
  HS_OPERATOR_ADJACENCY = 0,
  HS_OPERATOR_LAPLACIAN = 1,
  HS_OPERATOR_SIGNLESS_LAPLACIAN = 2,
} HsOperator;

typedef enum HsMethod {
  HS_METHOD_NQZ = 0,
  HS_METHOD_SHIFTED_ASCENT = 1,
  HS_METHOD_MULTISTART = 2,
} HsMethod;

typedef enum HsClosedForm {
  /**
   * `(1 - l)^{k-1} (l - d) + d = 0`, even k
   */
  HS_CLOSED_FORM_HYPERSTAR_LAPLACIAN = 0,
  /**
   * `a^k + (1 - d) a^{k-1} - d = 0`
   */
  HS_CLOSED_FORM_HYPERSTAR_SIGNLESS = 1,
  /**
   * `2 b^k + b^2 - 1 = 0`, `d` ignored
   */
  HS_CLOSED_FORM_HYPERCYCLE_SIGNLESS = 2,
} HsClosedForm;

/**
 * Opaque hypergraph handle.
 */
typedef struct HsHypergraph HsHypergraph;

/**
 * Solver settings. Zero-valued fields fall back to library defaults.
 */
typedef struct HsSolverOptions {
  double tol;
  size_t max_iters;
  size_t starts;
  uint64_t seed;
} HsSolverOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * success. Valid until the next call into this library on the same thread.
 */
const char *hs_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hs_version(void);

/**
 * Builds a hypergraph from `num_edges * k` 1-based vertex labels.
 *
 * # Safety
 * `edges` must point to `num_edges * k` readable values and `out` must be
 * writable. The handle stored in `*out` must be released with
 * `hs_hypergraph_free`.
 */
enum HsStatus hs_hypergraph_new(size_t n,
                                size_t k,
                                const uint32_t *edges,
                                size_t num_edges,
                                struct HsHypergraph **out);

/**
 * Parses the text format: a header line `n k`, then one edge per line.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum HsStatus hs_hypergraph_parse(const char *text, struct HsHypergraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HsStatus hs_hypergraph_hyperstar(size_t k, size_t d, struct HsHypergraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HsStatus hs_hypergraph_hypercycle(size_t k, size_t s, struct HsHypergraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HsStatus hs_hypergraph_complete(size_t n, size_t k, struct HsHypergraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HsStatus hs_hypergraph_random(size_t n,
                                   size_t k,
                                   size_t m,
                                   uint64_t seed,
                                   struct HsHypergraph **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `g` must be NULL or a handle from this library that was not freed yet.
 */
void hs_hypergraph_free(struct HsHypergraph *g);

/**
 * Vertex count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t hs_hypergraph_num_vertices(const struct HsHypergraph *g);

/**
 * Uniformity `k`, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t hs_hypergraph_uniformity(const struct HsHypergraph *g);

/**
 * Edge count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t hs_hypergraph_num_edges(const struct HsHypergraph *g);

/**
 * Canonical text serialization. Free the result with `hs_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum HsStatus hs_hypergraph_serialize(const struct HsHypergraph *g, char **out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library that was not freed yet.
 */
void hs_string_free(char *s);

/**
 * `out = T x^{k-1}`; both buffers hold `len` = n values.
 *
 * # Safety
 * `x` must hold `len` readable values and `out` `len` writable ones.
 */
enum HsStatus hs_apply(const struct HsHypergraph *g,
                       enum HsOperator op,
                       const double *x,
                       size_t len,
                       double *out);

/**
 * Max-norm residual of `T x^{k-1} - λ x^{[k-1]}` with `x` scaled to unit
 * max-norm.
 *
 * # Safety
 * `x` must hold `len` readable values and `out` must be writable.
 */
enum HsStatus hs_residual(const struct HsHypergraph *g,
                          enum HsOperator op,
                          double lambda,
                          const double *x,
                          size_t len,
                          double *out);

/**
 * Largest H-eigenvalue of `op` by `method`.
 *
 * `out_x` may be NULL; otherwise it receives the n-entry eigenvector.
 * `out_lower_bound` (nullable) is set when the value is only known to bound
 * the largest eigenvalue from below.
 *
 * # Safety
 * `opts` may be NULL for defaults. Non-NULL out pointers must be writable,
 * `out_x` for n values.
 */
enum HsStatus hs_largest_eigenvalue(const struct HsHypergraph *g,
                                    enum HsOperator op,
                                    enum HsMethod method,
                                    const struct HsSolverOptions *opts,
                                    double *out_lambda,
                                    double *out_residual,
                                    double *out_x,
                                    bool *out_lower_bound);

/**
 * Odd-bipartition for even k. On success `*out_feasible` tells whether one
 * exists and, when it does, `out_side[i]` is 1 for vertices of `V1`.
 *
 * # Safety
 * `out_side` must hold n writable bytes and `out_feasible` be writable.
 */
enum HsStatus hs_odd_bipartition(const struct HsHypergraph *g,
                                 uint8_t *out_side,
                                 bool *out_feasible);

/**
 * Root and eigenvalue of a characteristic equation.
 *
 * # Safety
 * `out_root` and `out_lambda` must be writable.
 */
enum HsStatus hs_closed_form(enum HsClosedForm which,
                             size_t k,
                             size_t d,
                             double *out_root,
                             double *out_lambda);

/**
 * Runs the verification suite and returns the report as JSON. `tol <= 0`
 * keeps the default value tolerance. `*out_passed` is false when any check
 * failed. Free `*out_json` with `hs_string_free`.
 *
 * # Safety
 * `out_json` and `out_passed` must be writable.
 */
enum HsStatus hs_verify_json(const struct HsHypergraph *g,
                             double tol,
                             char **out_json,
                             bool *out_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERSPEC_H */
