#ifndef VALINF_H
#define VALINF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ValinfStatus {
  VALINF_STATUS_OK = 0,
  VALINF_STATUS_NULL_POINTER = 1,
  VALINF_STATUS_INVALID_ARGUMENT = 2,
  VALINF_STATUS_INVALID_SEQUENCE = 3,
  VALINF_STATUS_BUDGET_EXHAUSTED = 4,
  VALINF_STATUS_BUFFER_TOO_SMALL = 5,
  VALINF_STATUS_PANIC = 6,
} ValinfStatus;

/**
 * A validated integer δ-sequence.
 */
typedef struct ValinfCore ValinfCore;

/**
 * A sequence of any of the five types.
 */
typedef struct ValinfSequence ValinfSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Validates `entries[0..len]` and stores a new handle in `*out`.
 *
 * # Safety
 * `entries` must point to `len` readable values and `out` must be writable.
 */
enum ValinfStatus valinf_core_new(const int64_t *entries, size_t len, struct ValinfCore **out);

/**
 * # Safety
 * `core` must be null or a handle from [`valinf_core_new`] not yet freed.
 */
void valinf_core_free(struct ValinfCore *core);

/**
 * Number of entries `g + 1`.
 *
 * # Safety
 * `core` must be a live handle and `out` writable.
 */
enum ValinfStatus valinf_core_len(const struct ValinfCore *core, size_t *out);

/**
 * The e/m pairs flattened as `m_0, e_0, m_1, e_1, …`.
 *
 * # Safety
 * `core` must be a live handle, `buf` must have room for `cap` values and
 * `written` must be writable.
 */
enum ValinfStatus valinf_core_em_pairs(const struct ValinfCore *core,
                                       int64_t *buf,
                                       size_t cap,
                                       size_t *written);

/**
 * Maximal contact values.
 *
 * # Safety
 * As for [`valinf_core_em_pairs`].
 */
enum ValinfStatus valinf_core_beta(const struct ValinfCore *core,
                                   int64_t *buf,
                                   size_t cap,
                                   size_t *written);

/**
 * Whether `value` lies in the numerical semigroup spanned by the core.
 *
 * # Safety
 * `core` must be a live handle and `out` writable.
 */
enum ValinfStatus valinf_core_contains(const struct ValinfCore *core, int64_t value, bool *out);

/**
 * Largest integer outside the semigroup spanned by the core.
 *
 * # Safety
 * `core` must be a live handle and `out` writable.
 */
enum ValinfStatus valinf_core_frobenius(const struct ValinfCore *core, int64_t *out);

/**
 * `δ0² − Σ m²` over the cluster of the type A sequence `core ∪ {last}`.
 *
 * # Safety
 * `core` must be a live handle and `out` writable.
 */
enum ValinfStatus valinf_noether_residual(const struct ValinfCore *core,
                                          int64_t last,
                                          int64_t *out);

/**
 * Builds a sequence from a JSON document (NUL-terminated UTF-8).
 *
 * # Safety
 * `json` must be a valid C string and `out` writable.
 */
enum ValinfStatus valinf_sequence_from_json(const char *json, struct ValinfSequence **out);

/**
 * # Safety
 * `seq` must be null or a handle from [`valinf_sequence_from_json`].
 */
void valinf_sequence_free(struct ValinfSequence *seq);

/**
 * Type letter `'A'` … `'E'`.
 *
 * # Safety
 * `seq` must be a live handle and `out` writable.
 */
enum ValinfStatus valinf_sequence_type(const struct ValinfSequence *seq, char *out);

/**
 * Text form of the sequence, e.g. `{18,12,33,4,-5}`.
 *
 * # Safety
 * `seq` must be a live handle, `buf` must have room for `cap` bytes and
 * `written` must be writable.
 */
enum ValinfStatus valinf_sequence_describe(const struct ValinfSequence *seq,
                                           char *buf,
                                           size_t cap,
                                           size_t *written);

/**
 * Message of the last failed call on this thread (empty after a success).
 * Does not itself reset the message.
 *
 * # Safety
 * `buf` must have room for `cap` bytes and `written` must be writable.
 */
enum ValinfStatus valinf_last_error(char *buf, size_t cap, size_t *written);

/**
 * Static name of a status code.
 */
const char *valinf_status_name(enum ValinfStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VALINF_H */
