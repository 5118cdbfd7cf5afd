#ifndef WILDMCKAY_H
#define WILDMCKAY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define WM_KIND_C3 0

#define WM_KIND_S3 1

typedef enum WmStatus {
  WM_STATUS_OK = 0,
  WM_STATUS_INVALID_INPUT = 1,
  WM_STATUS_CHECK_FAILED = 2,
  WM_STATUS_NULL_POINTER = 3,
  WM_STATUS_INTERNAL = 4,
} WmStatus;

/**
 * Triangulated junior simplex with its orbit classification.
 */
typedef struct WmFan WmFan;

/**
 * A validated group `G = H ⋊ G′` with its element table.
 */
typedef struct WmGroup WmGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *wm_last_error(void);

/**
 * Builds and validates a group. `gens` holds `ngens` triples.
 *
 * # Safety
 * `gens` must point to `3 * ngens` readable values when `ngens > 0`, and
 * `out` must be writable.
 */
enum WmStatus wm_group_new(uint32_t kind,
                           uint64_t r,
                           const uint64_t *gens,
                           size_t ngens,
                           struct WmGroup **out);

/**
 * # Safety
 * `group` must be null or a handle from [`wm_group_new`] not yet freed.
 */
void wm_group_free(struct WmGroup *group);

/**
 * # Safety
 * `group` must be a live handle and `order` writable.
 */
enum WmStatus wm_group_order(const struct WmGroup *group, uint64_t *order);

/**
 * # Safety
 * `group` must be a live handle and `hsize` writable.
 */
enum WmStatus wm_group_hsize(const struct WmGroup *group, uint64_t *hsize);

/**
 * Class count by exhaustive conjugation and by the closed form.
 *
 * # Safety
 * `group` must be a live handle; both outputs writable.
 */
enum WmStatus wm_group_conjugacy_counts(const struct WmGroup *group,
                                        uint64_t *bruteforce,
                                        uint64_t *formula);

/**
 * Triangulates the junior simplex for a validated group.
 *
 * # Safety
 * As for [`wm_group_new`].
 */
enum WmStatus wm_fan_new(uint32_t kind,
                         uint64_t r,
                         const uint64_t *gens,
                         size_t ngens,
                         struct WmFan **out);

/**
 * # Safety
 * `fan` must be null or a handle from [`wm_fan_new`] not yet freed.
 */
void wm_fan_free(struct WmFan *fan);

/**
 * # Safety
 * `fan` must be a live handle and `count` writable.
 */
enum WmStatus wm_fan_triangle_count(const struct WmFan *fan, uint64_t *count);

/**
 * Euler characteristic of the crepant resolution.
 *
 * # Safety
 * `fan` must be a live handle and `chi` writable.
 */
enum WmStatus wm_fan_euler_characteristic(const struct WmFan *fan, int64_t *chi);

/**
 * Fan as JSON; free the result with [`wm_string_free`].
 *
 * # Safety
 * `fan` must be a live handle and `json` writable.
 */
enum WmStatus wm_fan_json(const struct WmFan *fan, char **json);

/**
 * Runs the full verification of one group and returns the JSON report.
 * A report whose checks fail yields [`WmStatus::CheckFailed`] and still
 * sets `json`.
 *
 * # Safety
 * As for [`wm_group_new`]; `json` must be writable.
 */
enum WmStatus wm_verify_json(uint32_t kind,
                             uint64_t r,
                             const uint64_t *gens,
                             size_t ngens,
                             size_t samples,
                             char **json);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void wm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WILDMCKAY_H */
