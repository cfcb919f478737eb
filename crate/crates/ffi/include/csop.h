#ifndef CSOP_H
#define CSOP_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes of every fallible FFI call.
 */
typedef enum CsopStatus {
  CSOP_STATUS_OK = 0,
  /**
   * malformed input (bad UTF-8, bad JSON, missing fields)
   */
  CSOP_STATUS_PARSE = 1,
  /**
   * well-formed input violating a class invariant (e.g. monotonicity)
   */
  CSOP_STATUS_VALIDATION = 2,
  /**
   * operator precondition failed (e.g. the IE gate)
   */
  CSOP_STATUS_PRECONDITION = 3,
  /**
   * capacity/normalization guard failed
   */
  CSOP_STATUS_CAPACITY = 4,
  /**
   * null pointer argument
   */
  CSOP_STATUS_NULL_POINTER = 5,
  /**
   * any other library error
   */
  CSOP_STATUS_INTERNAL = 6,
} CsopStatus;

/**
 * Opaque monotone-measure handle.
 */
typedef struct CsopMeasure CsopMeasure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent error on this thread, or null. The pointer
 * is valid until the next failing call on the same thread; do not free.
 */
const char *csop_last_error(void);

/**
 * Frees a string returned by this library. Null is a no-op.
 */
void csop_string_free(char *s);

/**
 * Evaluates a problem file (JSON text); on success `*out_report`
 * receives the report JSON, to be freed with [`csop_string_free`].
 */
enum CsopStatus csop_eval_json(const char *problem_json, char **out_report);

/**
 * Parses a measure (JSON text) into an opaque handle; free with
 * [`csop_measure_free`].
 */
enum CsopStatus csop_measure_parse(const char *measure_json, struct CsopMeasure **out_measure);

/**
 * Frees a measure handle. Null is a no-op.
 */
void csop_measure_free(struct CsopMeasure *m);

/**
 * Ground-set size of a measure handle; 0 on null.
 */
uintptr_t csop_measure_n(const struct CsopMeasure *m);

/**
 * Value of the measure on the subset encoded as a bitmask
 * (point i is bit i-1). Returns NaN on null or out-of-range masks.
 */
double csop_measure_value(const struct CsopMeasure *m, uint32_t mask);

/**
 * Canonical JSON form of a measure handle.
 */
enum CsopStatus csop_measure_to_json(const struct CsopMeasure *m, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CSOP_H */
