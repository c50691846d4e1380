#ifndef AMBISKEW_H
#define AMBISKEW_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum AmbiskewStatus {
  AMBISKEW_STATUS_OK = 0,
  AMBISKEW_STATUS_NULL_ARGUMENT = 1,
  AMBISKEW_STATUS_INVALID_UTF8 = 2,
  AMBISKEW_STATUS_SYNTAX = 3,
  AMBISKEW_STATUS_UNKNOWN_NAME = 4,
  AMBISKEW_STATUS_EXECUTION = 5,
  AMBISKEW_STATUS_NOT_FOUND = 6,
  AMBISKEW_STATUS_OUT_OF_RANGE = 7,
  AMBISKEW_STATUS_PANIC = 8,
} AmbiskewStatus;

/**
 * Outcome of one run.
 */
typedef struct AmbiskewReport AmbiskewReport;

/**
 * Parsed session together with its run options.
 */
typedef struct AmbiskewSession AmbiskewSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library from the same thread.
 */
const char *ambiskew_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void ambiskew_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *ambiskew_version(void);

/**
 * Parses session text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AmbiskewStatus ambiskew_session_parse(const char *text, struct AmbiskewSession **out);

/**
 * Loads a built-in gallery case by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AmbiskewStatus ambiskew_session_from_gallery(const char *name, struct AmbiskewSession **out);

/**
 * Number of built-in gallery cases.
 */
size_t ambiskew_gallery_count(void);

/**
 * Name of gallery case `index` as a newly allocated string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AmbiskewStatus ambiskew_gallery_name(size_t index, char **out);

/**
 * Releases a session. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void ambiskew_session_free(struct AmbiskewSession *s);

/**
 * Sets the sampling seed, monomial bound and triple count used by later runs.
 *
 * # Safety
 * `s` must be a live session.
 */
enum AmbiskewStatus ambiskew_session_set_sampling(struct AmbiskewSession *s,
                                                  uint64_t seed,
                                                  uint32_t bound,
                                                  size_t triples);

/**
 * Substitutes a value for a parameter in later runs. The value is a scalar
 * expression in the remaining parameters.
 *
 * # Safety
 * `s` must be a live session; `name` and `value` NUL-terminated strings.
 */
enum AmbiskewStatus ambiskew_session_specialize(struct AmbiskewSession *s,
                                                const char *name,
                                                const char *value);

/**
 * Canonical text of the session as a newly allocated string.
 *
 * # Safety
 * `s` must be a live session and `out` a valid pointer.
 */
enum AmbiskewStatus ambiskew_session_print(const struct AmbiskewSession *s, char **out);

/**
 * Runs every statement of the session. A report is produced whenever
 * execution completes, whether or not its verdicts pass.
 *
 * # Safety
 * `s` must be a live session and `out` a valid pointer.
 */
enum AmbiskewStatus ambiskew_session_run(const struct AmbiskewSession *s,
                                         struct AmbiskewReport **out);

/**
 * Releases a report. Null is ignored.
 *
 * # Safety
 * `r` must come from this library and must not be freed twice.
 */
void ambiskew_report_free(struct AmbiskewReport *r);

/**
 * 1 if every verdict passed, 0 otherwise or for null.
 *
 * # Safety
 * `r` must be null or a live report.
 */
int32_t ambiskew_report_passed(const struct AmbiskewReport *r);

/**
 * 1 if the run was skipped because an assumption failed under
 * specialization, 0 otherwise or for null.
 *
 * # Safety
 * `r` must be null or a live report.
 */
int32_t ambiskew_report_skipped(const struct AmbiskewReport *r);

/**
 * Number of verdicts, or 0 for null.
 *
 * # Safety
 * `r` must be null or a live report.
 */
size_t ambiskew_report_verdict_count(const struct AmbiskewReport *r);

/**
 * Verdict `index`: its name, outcome and witness. The witness is null for
 * passing verdicts without a note. Either string pointer may be null to
 * skip it.
 *
 * # Safety
 * `r` must be a live report and `pass` a valid pointer.
 */
enum AmbiskewStatus ambiskew_report_verdict(const struct AmbiskewReport *r,
                                            size_t index,
                                            char **name,
                                            int32_t *pass,
                                            char **witness);

/**
 * Human-readable report as a newly allocated string.
 *
 * # Safety
 * `r` must be a live report and `out` a valid pointer.
 */
enum AmbiskewStatus ambiskew_report_text(const struct AmbiskewReport *r, char **out);

/**
 * JSON report as a newly allocated string.
 *
 * # Safety
 * `r` must be a live report and `out` a valid pointer.
 */
enum AmbiskewStatus ambiskew_report_json(const struct AmbiskewReport *r, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AMBISKEW_H */
