/* C interface to the obstructor engine. Every function returning ObstructorStatus
 * leaves a message for obstructor_last_error() when it fails. */

#ifndef OBSTRUCTOR_H
#define OBSTRUCTOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum ObstructorStatus {
  OBSTRUCTOR_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  OBSTRUCTOR_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  OBSTRUCTOR_STATUS_INVALID_UTF8 = 2,
  /**
   * The group spec did not parse.
   */
  OBSTRUCTOR_STATUS_PARSE_ERROR = 3,
  /**
   * The catalog or engine rejected the request.
   */
  OBSTRUCTOR_STATUS_ENGINE_ERROR = 4,
  /**
   * A numeric argument was out of range (level or genus of zero).
   */
  OBSTRUCTOR_STATUS_INVALID_ARGUMENT = 5,
  /**
   * The engine panicked; this is a bug.
   */
  OBSTRUCTOR_STATUS_INTERNAL = 6,
} ObstructorStatus;

/**
 * Opaque derivation result.
 */
typedef struct ObstructorReport ObstructorReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Derives `l0` for the group named by `spec` (e.g. `"SU(6)/Z3"`) and
 * stores a new report handle in `*out`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ObstructorStatus obstructor_derive(const char *spec, struct ObstructorReport **out);

/**
 * Releases a report. Null is accepted and ignored.
 *
 * # Safety
 * `r` must be null or a handle from [`obstructor_derive`] not yet freed.
 */
void obstructor_report_free(struct ObstructorReport *r);

/**
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum ObstructorStatus obstructor_report_l0(const struct ObstructorReport *r, uint64_t *out);

/**
 * The value of the closed-form table for the same group.
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum ObstructorStatus obstructor_report_closed_form_l0(const struct ObstructorReport *r,
                                                       uint64_t *out);

/**
 * Whether some prime's contribution rests on a lemma instead of Hopf data.
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum ObstructorStatus obstructor_report_lemma_backed(const struct ObstructorReport *r, bool *out);

/**
 * The report as JSON, in the same schema as `obstructor derive --json`.
 * The string is owned by the caller.
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum ObstructorStatus obstructor_report_json(const struct ObstructorReport *r, char **out);

/**
 * Writes `l0` for `spec` straight from the closed-form table, without
 * running the engine.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ObstructorStatus obstructor_closed_form_l0(const char *spec, uint64_t *out);

/**
 * Whether the moduli space of flat `spec`-bundles on a genus-`genus`
 * surface admits a pre-quantization at `level`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ObstructorStatus obstructor_prequantizable(const char *spec,
                                                uint64_t level,
                                                uint64_t genus,
                                                bool *out);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *obstructor_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void obstructor_string_free(char *s);

/**
 * Version of the JSON report schema.
 */
uint32_t obstructor_schema_version(void);

/**
 * Crate version as a static NUL-terminated string.
 */
const char *obstructor_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OBSTRUCTOR_H */
