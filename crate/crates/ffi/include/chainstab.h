#ifndef CHAINSTAB_H
#define CHAINSTAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChainstabStatus {
  CHAINSTAB_STATUS_OK = 0,
  /**
   * A null pointer, non-UTF-8 text or an out-of-range number.
   */
  CHAINSTAB_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The scenario was rejected: malformed, unsupported or contradictory.
   */
  CHAINSTAB_STATUS_INVALID_INPUT = 2,
  CHAINSTAB_STATUS_INTERNAL = 3,
  /**
   * A Rust panic was caught at the boundary.
   */
  CHAINSTAB_STATUS_PANIC = 4,
} ChainstabStatus;

typedef enum ChainstabVerdict {
  CHAINSTAB_VERDICT_W_SEMISTABLE = 0,
  CHAINSTAB_VERDICT_W_STABLE = 1,
  CHAINSTAB_VERDICT_STRONGLY_UNSTABLE = 2,
  CHAINSTAB_VERDICT_INCONCLUSIVE = 3,
} ChainstabVerdict;

/**
 * The result of `chainstab_check`.
 */
typedef struct ChainstabReport ChainstabReport;

/**
 * A parsed scenario.
 */
typedef struct ChainstabScenario ChainstabScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a scenario from NUL-terminated UTF-8 JSON.
 *
 * # Safety
 * `json` must be null or a valid NUL-terminated string, and `out` must be
 * null or writable. On success `*out` owns a handle to release with
 * [`chainstab_scenario_free`].
 */
enum ChainstabStatus chainstab_scenario_from_json(const char *json, struct ChainstabScenario **out);

/**
 * # Safety
 * `scenario` must be null or a handle from [`chainstab_scenario_from_json`]
 * that has not been freed.
 */
void chainstab_scenario_free(struct ChainstabScenario *scenario);

/**
 * Full stability analysis.
 *
 * # Safety
 * `scenario` must be a live handle and `out` writable. On success `*out`
 * owns a report to release with [`chainstab_report_free`].
 */
enum ChainstabStatus chainstab_check(const struct ChainstabScenario *scenario,
                                     struct ChainstabReport **out);

/**
 * # Safety
 * `report` must be null or a live handle from [`chainstab_check`].
 */
void chainstab_report_free(struct ChainstabReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum ChainstabStatus chainstab_report_verdict(const struct ChainstabReport *report,
                                              enum ChainstabVerdict *out);

/**
 * The report as canonical JSON, identical to `chainstab --format json check`.
 *
 * # Safety
 * `report` must be a live handle and `out` writable. `*out` must be
 * released with [`chainstab_string_free`].
 */
enum ChainstabStatus chainstab_report_to_json(const struct ChainstabReport *report, char **out);

/**
 * The feasible polarization region as canonical JSON.
 *
 * # Safety
 * As for [`chainstab_report_to_json`], with a live scenario handle.
 */
enum ChainstabStatus chainstab_polarize(const struct ChainstabScenario *scenario, char **out);

/**
 * Brute-force cross-validation at grid denominator `denominator`, sweeping
 * twists with `|deg L_j| <= twist_range` where the all-twists hypotheses
 * hold.
 *
 * # Safety
 * As for [`chainstab_report_to_json`], with a live scenario handle.
 */
enum ChainstabStatus chainstab_oracle(const struct ChainstabScenario *scenario,
                                      uint64_t denominator,
                                      int64_t twist_range,
                                      char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void chainstab_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null after a
 * successful call. The pointer stays valid until the next call into this
 * library on the same thread.
 */
const char *chainstab_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHAINSTAB_H */
