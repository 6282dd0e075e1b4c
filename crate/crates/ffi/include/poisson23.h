#ifndef POISSON23_H
#define POISSON23_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum {
  P23_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  P23_STATUS_NULL_ARGUMENT = 1,
  /**
   * The algebra file failed to parse or validate.
   */
  P23_STATUS_PARSE_ERROR = 2,
  /**
   * The dimension exceeds the axiom-scan cap.
   */
  P23_STATUS_DIMENSION_CAP = 3,
  P23_STATUS_INTERNAL_ERROR = 4,
} P23Status;

/**
 * Opaque algebra handle.
 */
typedef struct P23Algebra P23Algebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for this thread, or null when none is recorded.
 * The returned string must be released with [`p23_string_free`].
 */
char *p23_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by a `p23_*` function and not
 * yet freed, or null.
 */
void p23_string_free(char *s);

/**
 * Parses an algebra-definition file (JSON text) into a handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
P23Status p23_algebra_parse_json(const char *text, P23Algebra **out);

/**
 * Releases an algebra handle.
 *
 * # Safety
 * `alg` must be a handle from this library not yet freed, or null.
 */
void p23_algebra_free(P23Algebra *alg);

/**
 * Dimension of the algebra, through an out-parameter.
 *
 * # Safety
 * `alg` and `out` must be valid pointers.
 */
P23Status p23_algebra_dim(const P23Algebra *alg, uint32_t *out);

/**
 * Canonical file serialization of the algebra.
 *
 * # Safety
 * `alg` and `out` must be valid pointers.
 */
P23Status p23_algebra_write_json(const P23Algebra *alg, char **out);

/**
 * Adjoins a multiplicative identity, producing a new handle.
 *
 * # Safety
 * `alg` and `out` must be valid pointers.
 */
P23Status p23_algebra_unitalize(const P23Algebra *alg, P23Algebra **out);

/**
 * Runs the axiom scan. `max_dim` of 0 selects the default cap. The JSON
 * result carries `passed` and the violation list; a failing algebra still
 * returns `Ok` (the failure is data, not an error).
 *
 * # Safety
 * `alg` and `out` must be valid pointers.
 */
P23Status p23_check_axioms_json(const P23Algebra *alg, uint32_t max_dim, char **out);

/**
 * Runs the Schur-type analysis and returns the full report as JSON.
 *
 * # Safety
 * `alg` and `out` must be valid pointers.
 */
P23Status p23_schur_json(const P23Algebra *alg, char **out);

/**
 * Computes the center and returns `{dim, codim_d, center}` as JSON.
 *
 * # Safety
 * `alg` and `out` must be valid pointers.
 */
P23Status p23_center_json(const P23Algebra *alg, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* POISSON23_H */
