/* C interface for the arrfree arrangement analysis library. */

#ifndef ARRFREE_H
#define ARRFREE_H

/* Generated by cbindgen from the arrfree-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum ArrfreeStatus {
  // Success.
  ARRFREE_STATUS_OK = 0,
  // A required pointer argument was null.
  ARRFREE_STATUS_NULL_ARGUMENT = 1,
  // Input text could not be parsed.
  ARRFREE_STATUS_PARSE_ERROR = 2,
  // The input violates a precondition of the requested operation.
  ARRFREE_STATUS_INVALID_INPUT = 3,
  // A string argument was not valid UTF-8.
  ARRFREE_STATUS_UTF8_ERROR = 4,
  // An internal invariant was violated.
  ARRFREE_STATUS_INTERNAL_ERROR = 5,
} ArrfreeStatus;

// Opaque arrangement handle.
typedef struct ArrfreeArrangement ArrfreeArrangement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Detail message for the most recent failure on this thread. The pointer
// stays valid until the next failing call on the same thread; do not free.
const char *arrfree_last_error_message(void);

// Library version as a static string; do not free.
const char *arrfree_version(void);

// Parses an arrangement from the text format into a new handle.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum ArrfreeStatus arrfree_arrangement_parse(const char *text, struct ArrfreeArrangement **out);

// Builds a catalog arrangement. `lambda` is an optional rational like
// `"2/3"` (pass null for the default); `k` is the family size parameter
// (pass 0 when not applicable).
//
// # Safety
// `name` must be a valid NUL-terminated string; `lambda` may be null;
// `out` must be a valid pointer.
enum ArrfreeStatus arrfree_arrangement_from_catalog(const char *name,
                                                    const char *lambda,
                                                    size_t k,
                                                    struct ArrfreeArrangement **out);

// Releases an arrangement handle. Null is ignored.
//
// # Safety
// `handle` must come from this library and not have been freed already.
void arrfree_arrangement_free(struct ArrfreeArrangement *handle);

// Number of lines in the arrangement; 0 on a null handle.
//
// # Safety
// `handle` must be a live handle from this library, or null.
size_t arrfree_arrangement_line_count(const struct ArrfreeArrangement *handle);

// Serializes the arrangement in the text format.
//
// # Safety
// `handle` must be a live handle; `out` a valid pointer. The result is
// released with `arrfree_string_free`.
enum ArrfreeStatus arrfree_arrangement_serialize(const struct ArrfreeArrangement *handle,
                                                 char **out);

// Full analysis (lattice invariants, profiles, verdict) as JSON.
//
// # Safety
// `handle` must be a live handle; `out` a valid pointer.
enum ArrfreeStatus arrfree_analyze_json(const struct ArrfreeArrangement *handle, char **out);

// Freeness verdict as JSON.
//
// # Safety
// `handle` must be a live handle; `out` a valid pointer.
enum ArrfreeStatus arrfree_decide_free_json(const struct ArrfreeArrangement *handle, char **out);

// Inductive-filtration search result as JSON (`null` chain when none).
//
// # Safety
// `handle` must be a live handle; `out` a valid pointer.
enum ArrfreeStatus arrfree_inductive_json(const struct ArrfreeArrangement *handle, char **out);

// Free-neighbor search result as JSON (`null` when not stuck).
//
// # Safety
// `handle` must be a live handle; `out` a valid pointer.
enum ArrfreeStatus arrfree_stuck_json(const struct ArrfreeArrangement *handle, char **out);

// Balanced-profile enumeration up to `ell_max` as JSON.
//
// # Safety
// `out` must be a valid pointer.
enum ArrfreeStatus arrfree_profiles_json(size_t ell_max, char **out);

// Runs the full reproduction suite; the report is returned as JSON and the
// status is `Ok` even when items fail (inspect the `passed` field).
//
// # Safety
// `lambda` may be null; `out` must be a valid pointer.
enum ArrfreeStatus arrfree_verify_paper_json(const char *lambda, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must have been returned by this library and not freed already.
void arrfree_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARRFREE_H */
