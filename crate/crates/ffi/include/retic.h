#ifndef RETIC_H
#define RETIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which file format a handle was created from.
 */
typedef enum ReticKind {
  RETIC_KIND_ALGEBRA = 0,
  RETIC_KIND_STRUCTURE = 1,
} ReticKind;

/**
 * Result of every fallible call.
 */
typedef enum ReticStatus {
  RETIC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  RETIC_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  RETIC_STATUS_INVALID_UTF8 = 2,
  /**
   * The input failed to parse or validate.
   */
  RETIC_STATUS_INVALID_INPUT = 3,
  /**
   * The computation was rejected (e.g. an asymmetric commutator).
   */
  RETIC_STATUS_COMPUTATION_FAILED = 4,
  /**
   * The operation does not apply to this kind of input.
   */
  RETIC_STATUS_WRONG_KIND = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  RETIC_STATUS_PANIC = 6,
} ReticStatus;

/**
 * An algebra or a commutator structure.
 */
typedef struct ReticInput ReticInput;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `json` as the given kind. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum ReticStatus retic_input_from_json(const char *json,
                                       enum ReticKind kind,
                                       struct ReticInput **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `input` must come from this library and not be used afterwards.
 */
void retic_input_free(struct ReticInput *input);

/**
 * The kind of input behind a handle.
 *
 * # Safety
 * `input` and `out` must be valid pointers.
 */
enum ReticStatus retic_input_kind(const struct ReticInput *input, enum ReticKind *out);

/**
 * Universe size of an algebra, or number of elements of a structure.
 *
 * # Safety
 * `input` and `out` must be valid pointers.
 */
enum ReticStatus retic_input_size(const struct ReticInput *input, size_t *out);

/**
 * Number of congruences of an algebra, or elements of a structure.
 *
 * # Safety
 * `input` and `out` must be valid pointers.
 */
enum ReticStatus retic_con_count(const struct ReticInput *input, size_t *out);

/**
 * The commutator structure of an algebra's congruence lattice, as a new
 * handle of kind [`ReticKind::Structure`].
 *
 * # Safety
 * `input` and `out` must be valid pointers.
 */
enum ReticStatus retic_structure_from_algebra(const struct ReticInput *input,
                                              struct ReticInput **out);

/**
 * Primes, radicals and the Zariski topology as JSON.
 *
 * # Safety
 * `input` and `out` must be valid pointers; free `*out` with
 * [`retic_string_free`].
 */
enum ReticStatus retic_spectrum_json(const struct ReticInput *input, char **out);

/**
 * The reticulation as JSON; `variant` is `'K'` or `'C'`.
 *
 * # Safety
 * `input` and `out` must be valid pointers; free `*out` with
 * [`retic_string_free`].
 */
enum ReticStatus retic_reticulation_json(const struct ReticInput *input, char variant, char **out);

/**
 * Runs a verification suite (`"core"`, `"reticulation"`, `"boolean"`,
 * `"annihilator"`, `"minprime"`, `"functor"` or `"all"`). `*failures`
 * receives the number of failed checks; `report` may be null, otherwise it
 * receives the JSON report.
 *
 * # Safety
 * `input`, `suite` and `failures` must be valid; `report` may be null.
 */
enum ReticStatus retic_verify(const struct ReticInput *input,
                              const char *suite,
                              size_t *failures,
                              char **report);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void retic_string_free(char *s);

/**
 * The last error message on this thread, or null. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *retic_last_error(void);

/**
 * A static description of a status code.
 */
const char *retic_status_message(enum ReticStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RETIC_H */
