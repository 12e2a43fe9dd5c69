#ifndef RAUZYLAB_H
#define RAUZYLAB_H

/* Generated with cbindgen:0.26.0 */

/* Generated from the Rust sources by the crate build script; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible entry point.
typedef enum RzlStatus {
    // Success.
    RZL_STATUS_OK = 0,
    // A required pointer argument was null.
    RZL_STATUS_NULL_ARGUMENT = 1,
    // Text input could not be parsed.
    RZL_STATUS_PARSE = 2,
    // Structurally valid input outside an operation's domain (including
    // expected terminations such as a boundary tie).
    RZL_STATUS_DOMAIN = 3,
    // An internal panic was caught at the boundary.
    RZL_STATUS_PANIC = 4,
} RzlStatus;

// Opaque induction state: positive lengths plus an irreducible permutation.
typedef struct RzlRauzyState RzlRauzyState;

// Opaque exact rational vector.
typedef struct RzlVector RzlVector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the thread-local message for the most recent failure. The pointer
// stays valid until the next failing call on the same thread.
const char *rzl_last_error(void);

// Library version as a static NUL-terminated string; do not free.
const char *rzl_version(void);

// Frees a string returned by this library. Null is a no-op.
//
// # Safety
// `text` must come from this library and must not be freed twice.
void rzl_string_free(char *text);

// Parses a comma-separated list of rationals ("5,3" or "1/2,2/3,4") into a
// new vector handle.
//
// # Safety
// `text` must be NUL-terminated; `out` must be a valid pointer.
enum RzlStatus rzl_vector_parse(const char *text, struct RzlVector **out);

// Releases a vector handle. Null is a no-op.
//
// # Safety
// `vector` must come from this library and must not be freed twice.
void rzl_vector_free(struct RzlVector *vector);

// Number of coordinates.
//
// # Safety
// `vector` must be a live handle; `out` must be valid.
enum RzlStatus rzl_vector_len(const struct RzlVector *vector, size_t *out);

// Renders the vector as comma-separated `"p/q"` text.
//
// # Safety
// `vector` must be a live handle; `out` must be valid. Free the result with
// `rzl_string_free`.
enum RzlStatus rzl_vector_to_string(const struct RzlVector *vector, char **out);

// One subtractive step on a planar vector. Writes the branch letter (1 or
// 2) and a fresh handle for the image.
//
// # Safety
// `vector` must be a live two-coordinate handle; `out` and `letter` must be
// valid pointers.
enum RzlStatus rzl_euclid_step(const struct RzlVector *vector,
                               struct RzlVector **out,
                               int32_t *letter);

// Full subtractive expansion of a planar vector as a JSON document with the
// branch letters, continued-fraction digits, and final vector.
//
// # Safety
// `vector` must be a live two-coordinate handle; `out` must be valid. Free
// the result with `rzl_string_free`.
enum RzlStatus rzl_expand_json(const struct RzlVector *vector,
                               size_t depth_cap,
                               char **out);

// Builds an induction state from positive lengths and a permutation bottom
// row (`row` holds `n` one-based symbols).
//
// # Safety
// `lambda` must be a live handle of `n` coordinates; `row` must point to
// `n` readable entries; `out` must be valid.
enum RzlStatus rzl_rauzy_new(const struct RzlVector *lambda,
                             const size_t *row,
                             size_t n,
                             struct RzlRauzyState **out);

// Releases an induction state. Null is a no-op.
//
// # Safety
// `state` must come from this library and must not be freed twice.
void rzl_rauzy_free(struct RzlRauzyState *state);

// Advances the state by one induction step and writes the move taken (0
// for the first move, 1 for the second). A boundary tie leaves the state
// unchanged and returns `RZL_STATUS_DOMAIN`.
//
// # Safety
// `state` must be a live handle; `move_taken` must be valid.
enum RzlStatus rzl_rauzy_step(struct RzlRauzyState *state, int32_t *move_taken);

// Copies the current lengths into a fresh vector handle.
//
// # Safety
// `state` must be a live handle; `out` must be valid.
enum RzlStatus rzl_rauzy_lambda(const struct RzlRauzyState *state,
                                struct RzlVector **out);

// Writes the current permutation bottom row into `buffer` (capacity
// `buffer_len`); `written` receives the row length.
//
// # Safety
// `state` must be a live handle; `buffer` must hold `buffer_len` writable
// entries; `written` must be valid.
enum RzlStatus rzl_rauzy_perm_row(const struct RzlRauzyState *state,
                                  size_t *buffer,
                                  size_t buffer_len,
                                  size_t *written);

// Size of the move-graph class generated by a permutation bottom row.
//
// # Safety
// `row` must point to `n` readable entries; `out` must be valid.
enum RzlStatus rzl_class_size(const size_t *row, size_t n, size_t *out);

// Runs a named verification suite and returns its JSON report. `pass`
// receives 1 when every gating assertion passed, else 0; an unknown suite
// name is a domain error.
//
// # Safety
// `suite` must be NUL-terminated; `json_out` and `pass` must be valid.
// Free the report with `rzl_string_free`.
enum RzlStatus rzl_verify(const char *suite,
                          uint64_t seed,
                          uint64_t samples,
                          size_t depth,
                          size_t n,
                          uint64_t threshold,
                          uint64_t workers,
                          char **json_out,
                          int32_t *pass);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RAUZYLAB_H */
