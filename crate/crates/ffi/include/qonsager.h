#ifndef QONSAGER_H
#define QONSAGER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes returned by every fallible function.
typedef enum QonsagerStatus {
  QONSAGER_STATUS_OK = 0,
  QONSAGER_STATUS_NULL_POINTER = 1,
  QONSAGER_STATUS_INVALID_ARGUMENT = 2,
  QONSAGER_STATUS_PARSE = 3,
  QONSAGER_STATUS_INTEGRITY = 4,
  QONSAGER_STATUS_INTERNAL = 5,
} QonsagerStatus;

// A coefficient table `c_j^{[r,p]}`.
typedef struct QonsagerCoeffTable QonsagerCoeffTable;

// An element of the free algebra on `A`, `A*`.
typedef struct QonsagerPoly QonsagerPoly;

// Outcome of reducing one relation.
typedef struct QonsagerReport QonsagerReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *qonsager_last_error_message(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library and not yet freed.
void qonsager_string_free(char *s);

// Builds the order-`r` table by `route` (`genfun`, `closed`, `closed-literal`,
// `recursion` or `lusztig`).
//
// # Safety
// `route` must be a NUL-terminated string and `out` a valid pointer.
enum QonsagerStatus qonsager_coeffs_new(uint32_t r,
                                        const char *route,
                                        struct QonsagerCoeffTable **out);

// Order `r` of the table, or 0 for a null handle.
//
// # Safety
// `t` must be null or a live table handle.
uint32_t qonsager_coeffs_r(const struct QonsagerCoeffTable *t);

// Entry `(p, j)` in the canonical Laurent string form.
//
// # Safety
// `t` must be a live table handle and `out` a valid pointer.
enum QonsagerStatus qonsager_coeffs_entry(const struct QonsagerCoeffTable *t,
                                          uint32_t p,
                                          uint32_t j,
                                          char **out);

// # Safety
// `t` must be null or a handle from [`qonsager_coeffs_new`] not yet freed.
void qonsager_coeffs_free(struct QonsagerCoeffTable *t);

// Parses an expression such as `A^3 A* - [3]_q A^2 A* A + rho0 A* A`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum QonsagerStatus qonsager_poly_parse(const char *text, struct QonsagerPoly **out);

// Normal form of `x` as a new handle.
//
// # Safety
// `x` must be a live polynomial handle and `out` a valid pointer.
enum QonsagerStatus qonsager_poly_normal_form(const struct QonsagerPoly *x,
                                              struct QonsagerPoly **out);

// Canonical printed form of `x`.
//
// # Safety
// `x` must be a live polynomial handle and `out` a valid pointer.
enum QonsagerStatus qonsager_poly_to_string(const struct QonsagerPoly *x, char **out);

// Number of terms of `x`, or 0 for a null handle.
//
// # Safety
// `x` must be null or a live polynomial handle.
size_t qonsager_poly_term_count(const struct QonsagerPoly *x);

// # Safety
// `x` must be null or a polynomial handle from this library not yet freed.
void qonsager_poly_free(struct QonsagerPoly *x);

// Builds the order-`r` relation from `route` and reduces it to normal form.
//
// # Safety
// `route` must be a NUL-terminated string and `out` a valid pointer.
enum QonsagerStatus qonsager_verify(uint32_t r, const char *route, struct QonsagerReport **out);

// 1 if the residual is zero, 0 otherwise (including a null handle).
//
// # Safety
// `rep` must be null or a live report handle.
int32_t qonsager_report_is_zero(const struct QonsagerReport *rep);

// Number of terms left after reduction, or 0 for a null handle.
//
// # Safety
// `rep` must be null or a live report handle.
size_t qonsager_report_residual_terms(const struct QonsagerReport *rep);

// The report as a JSON object.
//
// # Safety
// `rep` must be a live report handle and `out` a valid pointer.
enum QonsagerStatus qonsager_report_to_json(const struct QonsagerReport *rep, char **out);

// # Safety
// `rep` must be null or a report handle from [`qonsager_verify`] not yet freed.
void qonsager_report_free(struct QonsagerReport *rep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QONSAGER_H */
