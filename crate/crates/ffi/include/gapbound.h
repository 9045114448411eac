#ifndef GAPBOUND_H
#define GAPBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum gb_status {
  GB_OK = 0,
  // A required pointer argument was null.
  GB_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  GB_INVALID_UTF8 = 2,
  // Arguments were rejected; see `gb_last_error`.
  GB_INVALID_ARGUMENT = 3,
  // An internal error was caught at the boundary.
  GB_INTERNAL = 4,
} gb_status;

// Opaque result of [`gb_run`].
typedef struct gb_report gb_report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Runs one CLI command. `argv` holds `argc` arguments without the
// program name, e.g. `{"k-table", "--m", "3", "--s", "3/2"}`.
//
// Failed checks still yield `GB_OK` and a report whose exit code is 1.
// Configuration errors yield `GB_INVALID_ARGUMENT` and no report.
//
// # Safety
// `argv` must point to `argc` valid NUL-terminated strings and `out` must
// be valid for writes.
enum gb_status gb_run(const char *const *argv, size_t argc, struct gb_report **out);

// The rendered report in the requested `--format`; empty when `--out`
// was given. Valid until the report is freed.
//
// # Safety
// `report` must be null or a live report from [`gb_run`].
const char *gb_report_output(const struct gb_report *report);

// Summary written to standard error by the CLI, possibly empty.
//
// # Safety
// `report` must be null or a live report from [`gb_run`].
const char *gb_report_diagnostics(const struct gb_report *report);

// CLI exit code: 0 all checks passed, 1 some check failed; -1 for null.
//
// # Safety
// `report` must be null or a live report from [`gb_run`].
int32_t gb_report_exit_code(const struct gb_report *report);

// # Safety
// `report` must be null or a live report from [`gb_run`].
bool gb_report_passed(const struct gb_report *report);

// # Safety
// `report` must be null or a report from [`gb_run`] not yet freed.
void gb_report_free(struct gb_report *report);

// `K(s, m)` for a rational `s` written `"num/den"`. The value is returned
// as an exact rational string.
//
// # Safety
// `s` must be a valid NUL-terminated string; `value` and `argmax` must be
// valid for writes.
enum gb_status gb_k_function(const char *s, size_t m, char **value, size_t *argmax);

// `N(a + b·√−d) = a² + d·b²` as a decimal string.
//
// # Safety
// `out` must be valid for writes.
enum gb_status gb_quad_norm(uint64_t d, int64_t a, int64_t b, char **out);

// Compares two products of rational powers such as `"2^(1/2) * 3"`
// exactly. Writes -1, 0 or 1 to `ordering`.
//
// # Safety
// `x` and `y` must be valid NUL-terminated strings; `ordering` must be
// valid for writes.
enum gb_status gb_exact_power_compare(const char *x, const char *y, int32_t *ordering);

// Releases a string returned through an out-parameter.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void gb_string_free(char *s);

// Message for the most recent failed call on this thread, or null.
// Valid until the next call into this library on the same thread.
const char *gb_last_error(void);

// Library version, statically allocated.
const char *gb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAPBOUND_H */
