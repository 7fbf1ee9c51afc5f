#ifndef ARITHINV_H
#define ARITHINV_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AiStatus {
  AI_STATUS_OK = 0,
  AI_STATUS_NULL_ARGUMENT = 1,
  AI_STATUS_INVALID_UTF8 = 2,
  AI_STATUS_PARSE = 3,
  // Closure exceeded the element cap, or a generator is not invertible.
  AI_STATUS_CLOSURE = 4,
  AI_STATUS_INVALID_ARGUMENT = 5,
  // No admissible linear forms for the parameter construction.
  AI_STATUS_SEARCH_FAILED = 6,
  // The characteristic divides the group order.
  AI_STATUS_MODULAR = 7,
  AI_STATUS_BUFFER_TOO_SMALL = 8,
  AI_STATUS_OTHER = 9,
  AI_STATUS_PANIC = 10,
} AiStatus;

// Opaque finite matrix group.
typedef struct AiGroup AiGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a group from a JSON group document, closing it with at most
// `cap` elements. On success `*out` receives a handle to free with
// [`ai_group_free`].
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum AiStatus ai_group_from_json(const char *json, size_t cap, struct AiGroup **out);

// Releases a group handle. Null is ignored.
//
// # Safety
// `g` must come from [`ai_group_from_json`] and not be freed twice.
void ai_group_free(struct AiGroup *g);

// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum AiStatus ai_group_order(const struct AiGroup *g, size_t *out);

// Number of variables the group acts on.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum AiStatus ai_group_dimension(const struct AiGroup *g, size_t *out);

// Rank of the invariants of the given degree.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum AiStatus ai_invariant_dimension(const struct AiGroup *g, uint32_t degree, size_t *out);

// Algebra generators as a JSON report. `bound == 0` uses the default
// degree bound.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum AiStatus ai_generators_json(const struct AiGroup *g,
                                 uint32_t bound,
                                 uint32_t extra_sweep,
                                 char **out);

// Orbit-product parameter system with its certificates, as a JSON report.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum AiStatus ai_hsop_json(const struct AiGroup *g, uint64_t seed, char **out);

// Writes the Molien series coefficients of degrees `0 ..= truncation`
// into `coeffs`, which must hold `truncation + 1` values.
//
// # Safety
// `g` must be a live handle and `coeffs` valid for `len` writes.
enum AiStatus ai_molien(const struct AiGroup *g, uint32_t truncation, uint64_t *coeffs, size_t len);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void ai_string_free(char *s);

// Message for the last failed call on this thread, or null after a
// successful call. Valid until the next call on the same thread.
const char *ai_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARITHINV_H */
