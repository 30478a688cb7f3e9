#ifndef DAEREALIZE_H
#define DAEREALIZE_H

#include <stdbool.h>

typedef enum DrMode {
  DR_MODE_AUTO = 0,
  DR_MODE_ORDER_ZERO = 1,
  DR_MODE_FIRST_ORDER = 2,
  DR_MODE_INPUT_AFFINE = 3,
} DrMode;

/**
 * Verdict of [`dr_realize`].
 */
typedef enum DrOutcome {
  DR_OUTCOME_REALIZED = 0,
  DR_OUTCOME_NO = 1,
  DR_OUTCOME_UNSUPPORTED = 2,
} DrOutcome;

/**
 * Result codes of every entry point.
 */
typedef enum DrStatus {
  DR_STATUS_OK = 0,
  DR_STATUS_NULL_POINTER = 1,
  DR_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON, expression or equation.
   */
  DR_STATUS_PARSE = 3,
  /**
   * Well-formed input that violates a precondition of the operation.
   */
  DR_STATUS_INVALID = 4,
  /**
   * The computation is outside the implemented scope.
   */
  DR_STATUS_UNSUPPORTED = 5,
  DR_STATUS_INTERNAL = 6,
} DrStatus;

/**
 * A differential polynomial in `y`, `u` and parameters.
 */
typedef struct DrEquation DrEquation;

/**
 * A state-space system `x' = f(x, u)`, `y = g(x, u)`.
 */
typedef struct DrSystem DrSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *dr_last_error(void);

/**
 * Parses a system document `{states, input, params, rates, output}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DrStatus dr_system_from_json(const char *json, struct DrSystem **out);

/**
 * Writes the system document of `sys` to `*out`.
 *
 * # Safety
 * `sys` must come from this library; `out` must be writable.
 */
enum DrStatus dr_system_to_json(const struct DrSystem *sys, char **out);

/**
 * # Safety
 * `sys` must be null or come from this library, and not be used afterwards.
 */
void dr_system_free(struct DrSystem *sys);

/**
 * Parses an equation in the text format of the command line tool.
 * Parameters declared by `params_from` (nullable) are recognized as well.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `params_from` null or valid;
 * `out` writable.
 */
enum DrStatus dr_equation_parse(const char *src,
                                const struct DrSystem *params_from,
                                struct DrEquation **out);

/**
 * Writes `eq` as text to `*out`.
 *
 * # Safety
 * `eq` must come from this library; `out` must be writable.
 */
enum DrStatus dr_equation_to_string(const struct DrEquation *eq, char **out);

/**
 * # Safety
 * `eq` must be null or come from this library, and not be used afterwards.
 */
void dr_equation_free(struct DrEquation *eq);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void dr_string_free(char *s);

/**
 * Sets `*holds` to whether `eq` is the input-output equation of `sys`.
 *
 * # Safety
 * Handles must come from this library; `holds` must be writable.
 */
enum DrStatus dr_verify(const struct DrSystem *sys, const struct DrEquation *eq, bool *holds);

/**
 * Computes the input-output equation of `sys`.
 *
 * # Safety
 * `sys` must come from this library; `out` must be writable.
 */
enum DrStatus dr_io_equation(const struct DrSystem *sys, struct DrEquation **out);

/**
 * Searches for a realization of `eq`. On `DR_OUTCOME_REALIZED`, `*system`
 * receives a new handle; otherwise it is set to null and [`dr_last_error`]
 * is left empty unless the status is an error.
 *
 * # Safety
 * `eq` must come from this library; `outcome` and `system` must be writable.
 */
enum DrStatus dr_realize(const struct DrEquation *eq,
                         enum DrMode mode,
                         enum DrOutcome *outcome,
                         struct DrSystem **system);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DAEREALIZE_H */
