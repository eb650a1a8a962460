#ifndef LACKWALK_H
#define LACKWALK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LwBranch {
  LW_BRANCH_SUBLINEAR_LOOPS = 0,
  LW_BRANCH_PROPORTIONAL_LOOPS = 1,
  LW_BRANCH_SUPERLINEAR_LOOPS = 2,
} LwBranch;

typedef enum LwCoin {
  LW_COIN_FLIP = 0,
  LW_COIN_SKW = 1,
} LwCoin;

typedef enum LwSpeedup {
  LW_SPEEDUP_GROVER = 0,
  LW_SPEEDUP_SUB_CLASSICAL = 1,
  LW_SPEEDUP_NONE = 2,
} LwSpeedup;

typedef enum LwStatus {
  LW_STATUS_OK = 0,
  LW_STATUS_NULL_POINTER = 1,
  LW_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Parameters out of bounds (N < 3, k < 1, k ≥ N, l < 0).
   */
  LW_STATUS_DOMAIN = 3,
  LW_STATUS_DIMENSION_MISMATCH = 4,
  LW_STATUS_CAPACITY_EXCEEDED = 5,
  LW_STATUS_BUFFER_TOO_SMALL = 6,
  LW_STATUS_PANIC = 7,
} LwStatus;

/**
 * A full vertex⊗coin state.
 */
typedef struct LwFullState LwFullState;

/**
 * A validated search instance.
 */
typedef struct LwInstance LwInstance;

/**
 * A sampled success-probability trace.
 */
typedef struct LwTrace LwTrace;

typedef struct LwPrediction {
  double runtime;
  double peak_probability;
  double closed_form_peak;
  double phase_gap;
  double initial_loop_probability;
  enum LwBranch branch;
  /**
   * l/N ratio for the proportional branch, 0 otherwise.
   */
  double c;
  enum LwSpeedup speedup;
  bool heuristic;
} LwPrediction;

typedef struct LwPeak {
  size_t index;
  /**
   * Step or time.
   */
  double at;
  double probability;
} LwPeak;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *lw_version(void);

/**
 * Message for the last failure on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *lw_last_error_message(void);

/**
 * Validates and creates an instance. `coin` is an `LwCoin` value, taken
 * as an integer so out-of-range values are reported, not undefined.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum LwStatus lw_instance_new(size_t n,
                              int64_t loops,
                              size_t marked,
                              int32_t coin,
                              struct LwInstance **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from `lw_instance_new` not yet freed.
 */
void lw_instance_free(struct LwInstance *inst);

/**
 * Discrete-time prediction.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum LwStatus lw_predict(const struct LwInstance *inst, struct LwPrediction *out);

/**
 * The critical jumping rate 1/N.
 *
 * # Safety
 * `inst` must be a live handle or NULL (returns NaN).
 */
double lw_critical_gamma(const struct LwInstance *inst);

/**
 * Continuous-time prediction at jumping rate `gamma` (> 0).
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum LwStatus lw_predict_ctqw(const struct LwInstance *inst,
                              double gamma,
                              struct LwPrediction *out);

/**
 * Reduced-subspace evolution through steps 0..=max_steps.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum LwStatus lw_subspace_evolve(const struct LwInstance *inst,
                                 size_t max_steps,
                                 struct LwTrace **out);

/**
 * Full-space evolution through steps 0..=max_steps.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum LwStatus lw_full_evolve(const struct LwInstance *inst, size_t max_steps, struct LwTrace **out);

/**
 * Continuous-time evolution sampled at `len` sorted nonnegative times.
 *
 * # Safety
 * `times` must point to `len` readable doubles; `out` writable.
 */
enum LwStatus lw_ctqw_evolve(const struct LwInstance *inst,
                             double gamma,
                             const double *times_ptr,
                             size_t len,
                             struct LwTrace **out);

/**
 * Number of samples, or 0 for NULL.
 *
 * # Safety
 * `trace` must be NULL or a live handle.
 */
size_t lw_trace_len(const struct LwTrace *trace);

/**
 * Copies steps/times into `abscissa` and probabilities into
 * `probabilities`; either may be NULL to skip it. Each buffer must hold
 * `lw_trace_len` doubles.
 *
 * # Safety
 * Non-NULL buffers must be writable for `capacity` doubles.
 */
enum LwStatus lw_trace_copy(const struct LwTrace *trace,
                            double *abscissa,
                            double *probabilities,
                            size_t capacity);

/**
 * Raw first-hump peak.
 *
 * # Safety
 * `trace` must be a live handle and `out` writable.
 */
enum LwStatus lw_trace_peak(const struct LwTrace *trace, struct LwPeak *out);

/**
 * Envelope peak of a discrete trace (INVALID_ARGUMENT for CTQW traces).
 *
 * # Safety
 * `trace` must be a live handle and `out` writable.
 */
enum LwStatus lw_trace_envelope_peak(const struct LwTrace *trace, struct LwPeak *out);

/**
 * # Safety
 * `trace` must be NULL or a live handle.
 */
void lw_trace_free(struct LwTrace *trace);

/**
 * Uniform initial state in full space (capacity-limited).
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum LwStatus lw_full_state_new(const struct LwInstance *inst, struct LwFullState **out);

/**
 * Applies the search operator `steps` times in place.
 *
 * # Safety
 * `state` must be a live handle.
 */
enum LwStatus lw_full_state_step(struct LwFullState *state, size_t steps);

/**
 * Probability at marked vertices, or NaN for NULL.
 *
 * # Safety
 * `state` must be NULL or a live handle.
 */
double lw_full_state_success_probability(const struct LwFullState *state);

/**
 * Number of amplitudes, or 0 for NULL.
 *
 * # Safety
 * `state` must be NULL or a live handle.
 */
size_t lw_full_state_len(const struct LwFullState *state);

/**
 * # Safety
 * `state` must be NULL or a live handle.
 */
void lw_full_state_free(struct LwFullState *state);

/**
 * Max deviation between two steps of the one-loop walk and Grover's
 * iterate, for N ≤ 512.
 *
 * # Safety
 * `out` must be writable.
 */
enum LwStatus lw_grover_equivalence_check(size_t n, double *out);

/**
 * Max |p_l(t) − p_0(t)| of the continuous walk over the given times.
 *
 * # Safety
 * `times` must point to `len` readable doubles; `out` writable.
 */
enum LwStatus lw_loop_invariance_check(const struct LwInstance *inst,
                                       double gamma,
                                       const double *times_ptr,
                                       size_t len,
                                       double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LACKWALK_H */
