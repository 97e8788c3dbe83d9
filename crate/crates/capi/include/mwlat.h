#ifndef MWLAT_H
#define MWLAT_H

/* Generated by cbindgen from mwlat-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Call outcome; mirrors the CLI exit codes.
 */
typedef enum {
  /**
   * Success.
   */
  MWLAT_STATUS_OK = 0,
  /**
   * Invalid input (bad field spec, repeated roots, budget, ...).
   */
  MWLAT_STATUS_INVALID_INPUT = 1,
  /**
   * Internal invariant failure.
   */
  MWLAT_STATUS_INTERNAL_ERROR = 2,
  /**
   * A required pointer argument was NULL.
   */
  MWLAT_STATUS_NULL_POINTER = 3,
} MwlatStatus;

/**
 * Opaque solution-set handle.
 */
typedef struct MwlatSolutionSet MwlatSolutionSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Most recent error message on this thread (empty when no error yet).
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *mwlat_last_error_message(void);

/**
 * Frees a string returned by this library.  NULL is ignored.
 *
 * # Safety
 * `s` must be a pointer previously returned through a `char **`
 * out-parameter of this library and not yet freed.
 */
void mwlat_string_free(char *s);

/**
 * Runs the lattice / covers self-test and hands back the fingerprint JSON.
 * Returns `MWLAT_STATUS_INTERNAL_ERROR` when any fingerprint mismatches.
 */
MwlatStatus mwlat_selftest_json(char **out_json);

/**
 * Involution-tuple census JSON for `branch_points` in {4, 6, 8}.
 */
MwlatStatus mwlat_covers_census_json(uint32_t branch_points, char **out_json);

/**
 * Enumerates minimal solutions of `y^2 = x^3 + S(t)`.
 *
 * `field` uses the CLI syntax (`"7"`, `"7^2"`); `sextic_csv` is the
 * comma-separated ascending integer coefficient list; fields with
 * `q^3 > budget` are rejected.
 *
 * # Safety
 * `field` and `sextic_csv` must be NUL-terminated strings; `out` must be a
 * valid pointer.
 */
MwlatStatus mwlat_solve_open(const char *field,
                             const char *sextic_csv,
                             uint64_t budget,
                             MwlatSolutionSet **out);

/**
 * Releases a solution set.  NULL is ignored.
 *
 * # Safety
 * `handle` must come from [`mwlat_solve_open`] and not be freed twice.
 */
void mwlat_solution_set_free(MwlatSolutionSet *handle);

/**
 * Number of minimal solutions in the set.
 *
 * # Safety
 * `handle` must be a live pointer from [`mwlat_solve_open`].
 */
uintptr_t mwlat_solution_count(const MwlatSolutionSet *handle);

/**
 * Number of same-y (mu_3) classes.
 *
 * # Safety
 * `handle` must be a live pointer from [`mwlat_solve_open`].
 */
uintptr_t mwlat_y_class_count(const MwlatSolutionSet *handle);

/**
 * Number of same-x (sign) classes.
 *
 * # Safety
 * `handle` must be a live pointer from [`mwlat_solve_open`].
 */
uintptr_t mwlat_x_class_count(const MwlatSolutionSet *handle);

/**
 * Full solve report JSON (solutions, class partitions, class-level Gram
 * with the orthogonality partition).
 *
 * # Safety
 * `handle` must be live; `out_json` must be a valid pointer.
 */
MwlatStatus mwlat_solve_report_json(const MwlatSolutionSet *handle, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MWLAT_H */
