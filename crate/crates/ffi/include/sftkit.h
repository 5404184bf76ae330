#ifndef SFTKIT_H
#define SFTKIT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SftkitStatus {
  SFTKIT_STATUS_OK = 0,
  SFTKIT_STATUS_NULL_POINTER = 1,
  SFTKIT_STATUS_INVALID_UTF8 = 2,
  SFTKIT_STATUS_PARSE = 3,
  SFTKIT_STATUS_INVALID_ARGUMENT = 4,
  SFTKIT_STATUS_BUDGET_EXHAUSTED = 5,
  SFTKIT_STATUS_PANIC = 6,
} SftkitStatus;

typedef enum SftkitCountMode {
  SFTKIT_COUNT_MODE_STABILIZER = 0,
  SFTKIT_COUNT_MODE_LEX_MIN = 1,
} SftkitCountMode;

typedef enum SftkitVerdict {
  SFTKIT_VERDICT_YES = 0,
  SFTKIT_VERDICT_NO = 1,
  SFTKIT_VERDICT_UNKNOWN = 2,
} SftkitVerdict;

/**
 * Result of a period decision.
 */
typedef struct SftkitReport SftkitReport;

/**
 * Parsed SFT or Wang tileset.
 */
typedef struct SftkitSpec SftkitSpec;

/**
 * Torus configuration tied to the spec it was parsed against.
 */
typedef struct SftkitTorus SftkitTorus;

typedef struct SftkitBudget {
  uint64_t max_nodes;
  double max_seconds;
  uint64_t max_vertical;
} SftkitBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. Valid until
 * the next failing call on the same thread.
 */
const char *sftkit_last_error(void);

struct SftkitBudget sftkit_budget_default(void);

void sftkit_string_free(char *s);

/**
 * Parse `%sft` or `%wang` text.
 */
enum SftkitStatus sftkit_spec_parse(const char *src, struct SftkitSpec **out);

void sftkit_spec_free(struct SftkitSpec *spec);

/**
 * Dimension of the spec, 0 for a null handle.
 */
size_t sftkit_spec_dim(const struct SftkitSpec *spec);

/**
 * Canonical `%sft` text of the spec.
 */
enum SftkitStatus sftkit_spec_text(const struct SftkitSpec *spec, char **out);

/**
 * Is there a configuration whose period group is exactly `p`ℤ^d? A null
 * budget means the defaults.
 */
enum SftkitStatus sftkit_strong_period(const struct SftkitSpec *spec,
                                       size_t p,
                                       const struct SftkitBudget *budget,
                                       struct SftkitReport **out);

/**
 * Is there a configuration of least horizontal period `n`?
 */
enum SftkitStatus sftkit_horizontal_period(const struct SftkitSpec *spec,
                                           int64_t n,
                                           const struct SftkitBudget *budget,
                                           struct SftkitReport **out);

/**
 * Is there a configuration whose period group is exactly ℤ·(m, n)?
 */
enum SftkitStatus sftkit_one_period(const struct SftkitSpec *spec,
                                    int64_t m,
                                    int64_t n,
                                    const struct SftkitBudget *budget,
                                    struct SftkitReport **out);

/**
 * Number of orbits with period group exactly `p`ℤ^d.
 */
enum SftkitStatus sftkit_count_strong(const struct SftkitSpec *spec,
                                      size_t p,
                                      enum SftkitCountMode mode,
                                      const struct SftkitBudget *budget,
                                      uint64_t *out);

void sftkit_report_free(struct SftkitReport *report);

/**
 * Verdict of a report; `Unknown` for a null handle.
 */
enum SftkitVerdict sftkit_report_verdict(const struct SftkitReport *report);

uint64_t sftkit_report_nodes(const struct SftkitReport *report);

/**
 * Human-readable report, owned by the report handle.
 */
const char *sftkit_report_text(const struct SftkitReport *report);

/**
 * Copy of the torus witness; `*out` is set to null when the report has no
 * torus witness.
 */
enum SftkitStatus sftkit_report_torus(const struct SftkitReport *report, struct SftkitTorus **out);

/**
 * Parse `%torus` text against `spec`.
 */
enum SftkitStatus sftkit_torus_parse(const struct SftkitSpec *spec,
                                     const char *src,
                                     struct SftkitTorus **out);

void sftkit_torus_free(struct SftkitTorus *torus);

/**
 * Writes up to `cap` side lengths into `dims` and returns the dimension.
 */
size_t sftkit_torus_dims(const struct SftkitTorus *torus, size_t *dims, size_t cap);

/**
 * `%torus` text of a configuration.
 */
enum SftkitStatus sftkit_torus_text(const struct SftkitTorus *torus,
                                    const struct SftkitSpec *spec,
                                    char **out);

/**
 * Sets `*valid` when no forbidden pattern occurs in the torus.
 */
enum SftkitStatus sftkit_torus_is_valid(const struct SftkitTorus *torus,
                                        const struct SftkitSpec *spec,
                                        bool *valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SFTKIT_H */
