#ifndef COXINV_H
#define COXINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CoxinvStatus {
  COXINV_STATUS_OK = 0,
  COXINV_STATUS_NULL_POINTER = 1,
  COXINV_STATUS_INVALID_UTF8 = 2,
  COXINV_STATUS_PARSE_ERROR = 3,
  COXINV_STATUS_VALIDATION_ERROR = 4,
  COXINV_STATUS_OUT_OF_RANGE = 5,
  COXINV_STATUS_CAP_EXCEEDED = 6,
  COXINV_STATUS_VERIFY_MISMATCH = 7,
  COXINV_STATUS_BUFFER_TOO_SMALL = 8,
  COXINV_STATUS_INTERNAL = 9,
} CoxinvStatus;

/**
 * Opaque diagram handle.
 */
typedef struct CoxinvDiagram CoxinvDiagram;

typedef struct CoxinvBounds {
  uint64_t omega_lower;
  uint64_t maximal_spherical_upper;
  uint64_t numeric_upper;
  bool is_finite;
} CoxinvBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a diagram from a type name such as `"~E7"` or `"B3+A1"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CoxinvStatus coxinv_diagram_from_name(const char *name, struct CoxinvDiagram **out);

/**
 * Builds a diagram from a JSON matrix document (`{"matrix": ...}`) or,
 * if the text does not start with `{`, from the edge-list format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CoxinvStatus coxinv_diagram_from_text(const char *text, struct CoxinvDiagram **out);

/**
 * # Safety
 * `d` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void coxinv_diagram_free(struct CoxinvDiagram *d);

/**
 * # Safety
 * `d` must be a live handle; `out` a valid pointer.
 */
enum CoxinvStatus coxinv_diagram_rank(const struct CoxinvDiagram *d, size_t *out);

/**
 * Total number of involution classes.
 *
 * # Safety
 * `d` must be a live handle; `out` a valid pointer.
 */
enum CoxinvStatus coxinv_cc2_total(const struct CoxinvDiagram *d, uint64_t *out);

/**
 * Class counts by rank `1..=n`, written to `buf[0..n]`. `len` receives `n`
 * in every case; if `cap < n` nothing is written and `BUFFER_TOO_SMALL` is
 * returned.
 *
 * # Safety
 * `d` must be a live handle, `len` a valid pointer and `buf` valid for
 * `cap` writes (it may be null when `cap` is 0).
 */
enum CoxinvStatus coxinv_cc2_per_rank(const struct CoxinvDiagram *d,
                                      uint64_t *buf,
                                      size_t cap,
                                      size_t *len);

/**
 * Full class report with bounds, as JSON.
 *
 * # Safety
 * `d` must be a live handle; `out` a valid pointer. Release the string
 * with `coxinv_string_free`.
 */
enum CoxinvStatus coxinv_cc2_report_json(const struct CoxinvDiagram *d, char **out);

/**
 * DOT text for the rank-`k` odd graph, or the isomorphism graph when
 * `omega` is set.
 *
 * # Safety
 * `d` must be a live handle; `out` a valid pointer. Release the string
 * with `coxinv_string_free`.
 */
enum CoxinvStatus coxinv_graph_dot(const struct CoxinvDiagram *d, size_t k, bool omega, char **out);

/**
 * # Safety
 * `d` must be a live handle; `out` a valid pointer.
 */
enum CoxinvStatus coxinv_bounds(const struct CoxinvDiagram *d, struct CoxinvBounds *out);

/**
 * Compares the class count by rank with brute-force enumeration of the
 * group (at most `cap` elements). `matches` receives the outcome; a
 * mismatch also returns `VERIFY_MISMATCH`.
 *
 * # Safety
 * `d` must be a live handle; `matches` a valid pointer.
 */
enum CoxinvStatus coxinv_verify(const struct CoxinvDiagram *d, size_t cap, bool *matches);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void coxinv_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *coxinv_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXINV_H */
