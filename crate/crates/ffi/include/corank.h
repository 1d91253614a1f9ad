#ifndef CORANK_H
#define CORANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum CorankStatus {
  /**
   * Success.
   */
  CORANK_STATUS_OK = 0,
  /**
   * Input outside the operation's domain.
   */
  CORANK_STATUS_INVALID_ARGUMENT = 1,
  /**
   * An exact computation produced an impossible value.
   */
  CORANK_STATUS_INTERNAL_INCONSISTENCY = 2,
  /**
   * A decision procedure reached its cap.
   */
  CORANK_STATUS_UNDECIDED = 3,
  /**
   * A required pointer was null.
   */
  CORANK_STATUS_NULL_POINTER = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  CORANK_STATUS_PANIC = 5,
} CorankStatus;

/**
 * Masses and Euler characteristics for one n.
 */
typedef struct CorankMassReport CorankMassReport;

/**
 * An exact rational number.
 */
typedef struct CorankNumber CorankNumber;

/**
 * Relative class number h⁻ of the field named by `family` (`pow2`,
 * `3pow2`, `sqrt3`, `sqrtp`, `sqrtuplus`) at parameter `s`.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
enum CorankStatus corank_hminus(const char *family, uint32_t s, struct CorankNumber **out);

/**
 * Eichler mass M_n for n = 2^s or 3·2^s, n ≥ 8.
 *
 * # Safety
 * `out` must be writable.
 */
enum CorankStatus corank_mass(uint64_t n, struct CorankNumber **out);

/**
 * Upper bound 24·n·M_n on the genus of the quotient graph.
 *
 * # Safety
 * `out` must be writable.
 */
enum CorankStatus corank_genus_upper(uint64_t n, struct CorankNumber **out);

/**
 * Decimal rendering `p/q` or `p`; free with `corank_string_free`.
 * Returns NULL for a NULL handle.
 *
 * # Safety
 * `num` must be NULL or a live handle.
 */
char *corank_number_to_string(const struct CorankNumber *num);

/**
 * 1 if the number is an integer, 0 otherwise or for NULL.
 *
 * # Safety
 * `num` must be NULL or a live handle.
 */
int32_t corank_number_is_integer(const struct CorankNumber *num);

/**
 * Releases a number handle. NULL is ignored.
 *
 * # Safety
 * `num` must be NULL or a handle not yet freed.
 */
void corank_number_free(struct CorankNumber *num);

/**
 * Mass report for n.
 *
 * # Safety
 * `out` must be writable.
 */
enum CorankStatus corank_mass_report(uint64_t n, struct CorankMassReport **out);

/**
 * One field of a mass report: `zeta_minus1`, `M`, `vm_gr`, `em_gr`,
 * `vm_gr_bar`, `em_gr_bar`, `euler_psu` or `euler_pu`.
 *
 * # Safety
 * `report` must be a live handle, `field` a NUL-terminated string and
 * `out` writable.
 */
enum CorankStatus corank_mass_report_field(const struct CorankMassReport *report,
                                           const char *field,
                                           struct CorankNumber **out);

/**
 * Releases a mass report. NULL is ignored.
 *
 * # Safety
 * `report` must be NULL or a handle not yet freed.
 */
void corank_mass_report_free(struct CorankMassReport *report);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library not yet freed.
 */
void corank_string_free(char *s);

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *corank_last_error_message(void);

#endif  /* CORANK_H */
