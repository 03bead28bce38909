#ifndef JETSYM_H
#define JETSYM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The positive values match the command-line exit codes.
 */
typedef enum JetsymStatus {
  JETSYM_STATUS_OK = 0,
  JETSYM_STATUS_OTHER = 1,
  JETSYM_STATUS_SYNTAX = 2,
  JETSYM_STATUS_SCOPE = 3,
  JETSYM_STATUS_CLOSURE_VIOLATION = 4,
  JETSYM_STATUS_UNRESOLVED_SPECTRUM = 5,
  JETSYM_STATUS_NULL_POINTER = 10,
  JETSYM_STATUS_INVALID_UTF8 = 11,
  JETSYM_STATUS_INVALID_CONFIG = 12,
} JetsymStatus;

/**
 * Parsed evolution equation.
 */
typedef struct JetsymEquation JetsymEquation;

/**
 * Result of a pipeline run.
 */
typedef struct JetsymReport JetsymReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *jetsym_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *jetsym_last_error_message(void);

/**
 * Parses `u_t = <expr>` into `*out`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer.
 */
enum JetsymStatus jetsym_equation_parse(const char *src, struct JetsymEquation **out);

/**
 * # Safety
 * `eq` must come from [`jetsym_equation_parse`] or be null.
 */
void jetsym_equation_free(struct JetsymEquation *eq);

/**
 * Differential order of the right-hand side, or 0 for a null handle.
 *
 * # Safety
 * `eq` must be a live handle or null.
 */
uint32_t jetsym_equation_order(const struct JetsymEquation *eq);

/**
 * Writes 1 to `*out` if the characteristic `eta` is a symmetry of `eq`.
 *
 * # Safety
 * `eq` must be a live handle, `eta` a NUL-terminated string and `out` valid.
 */
enum JetsymStatus jetsym_is_symmetry(const struct JetsymEquation *eq,
                                     const char *eta,
                                     int32_t *out);

/**
 * Runs the pipeline on a JSON run configuration. A report is produced even
 * when the analysis fails; the returned status then carries the error kind
 * and the report holds the details.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum JetsymStatus jetsym_run_json(const char *config_json, struct JetsymReport **out);

/**
 * Pretty JSON of the report; free with [`jetsym_string_free`]. Null for a
 * null handle.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
char *jetsym_report_json(const struct JetsymReport *report);

/**
 * Exit code the command-line tool would return for this report.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
int32_t jetsym_report_exit_code(const struct JetsymReport *report);

/**
 * # Safety
 * `report` must come from [`jetsym_run_json`] or be null.
 */
void jetsym_report_free(struct JetsymReport *report);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void jetsym_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETSYM_H */
