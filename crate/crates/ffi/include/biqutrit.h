#ifndef BIQUTRIT_H
#define BIQUTRIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BqStatus {
  BQ_STATUS_OK = 0,
  BQ_STATUS_NULL_POINTER = 1,
  BQ_STATUS_ALL_ZERO = 2,
  BQ_STATUS_NON_FINITE = 3,
  BQ_STATUS_INVALID_PARAMETER = 4,
  BQ_STATUS_NOT_ALIGNED = 5,
  BQ_STATUS_NO_COUNTS = 6,
  BQ_STATUS_INTERNAL = 7,
  BQ_STATUS_PANIC = 8,
} BqStatus;

/**
 * Opaque handle to a normalized qutrit.
 */
typedef struct BqState BqState;

typedef struct BqSchmidt {
  double lambda_plus;
  double lambda_minus;
  /**
   * `h.re, h.im, v.re, v.im`.
   */
  double mode_plus[4];
  double mode_minus[4];
  double phi;
  /**
   * Nonzero when `λ₊ = λ₋`.
   */
  int32_t basis_free;
} BqSchmidt;

typedef struct BqFactorization {
  /**
   * Root `x_A` as `re, im`; unused when `x_a_at_infinity` is set.
   */
  double x_a[2];
  double x_b[2];
  int32_t x_a_at_infinity;
  int32_t x_b_at_infinity;
  double phi0;
  double mode_a[4];
  double mode_b[4];
  double commutator;
  double norm_n;
} BqFactorization;

typedef struct BqSimulation {
  double expected_r0;
  double expected_r90;
  double expected_r45;
  /**
   * Sampled counts; zero when `exact` is set.
   */
  uint64_t r0;
  uint64_t r90;
  uint64_t r45;
  double lambda_plus;
  double lambda_minus;
  /**
   * NaN when the phase is undefined.
   */
  double cos_2phi;
  int32_t cos_2phi_clamped;
  int32_t phase_undefined;
} BqSimulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a state from six doubles `c1.re, c1.im, c2.re, c2.im, c3.re, c3.im`.
 *
 * # Safety
 * `amps` must point to 6 readable doubles and `out` to a writable pointer.
 */
enum BqStatus bq_state_new(const double *amps, struct BqState **out);

/**
 * Creates the state `N a_H†(cos α a_H† + sin α a_V†)|0⟩`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum BqStatus bq_state_alpha(double alpha, struct BqState **out);

/**
 * Releases a state. Null is ignored.
 *
 * # Safety
 * `s` must come from `bq_state_new`/`bq_state_alpha` and not be freed twice.
 */
void bq_state_free(struct BqState *s);

/**
 * Normalized amplitudes in canonical phase, six doubles.
 *
 * # Safety
 * `s` must be a live handle, `out` must hold 6 doubles.
 */
enum BqStatus bq_state_amplitudes(const struct BqState *s, double *out);

/**
 * Concurrence, degree of polarization, Schmidt number K and entropy (bits).
 * Any out-pointer may be null.
 *
 * # Safety
 * `s` must be a live handle; non-null out-pointers must be writable.
 */
enum BqStatus bq_measures(const struct BqState *s,
                          double *concurrence_out,
                          double *polarization_out,
                          double *k_out,
                          double *entropy_out);

/**
 * Stokes vector `S1, S2, S3` of the reduced single-photon state.
 *
 * # Safety
 * `s` must be a live handle, `out` must hold 3 doubles.
 */
enum BqStatus bq_stokes(const struct BqState *s, double *out);

/**
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum BqStatus bq_schmidt(const struct BqState *s, struct BqSchmidt *out);

/**
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum BqStatus bq_factorize(const struct BqState *s, struct BqFactorization *out);

/**
 * Aligns the Schmidt modes, computes expected coincidences for `n_pairs`
 * pairs, samples them (unless `exact` is nonzero) and runs the estimator.
 *
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum BqStatus bq_simulate(const struct BqState *s,
                          double eta1,
                          double eta2,
                          double dark_rate,
                          uint64_t n_pairs,
                          uint64_t seed,
                          int32_t exact,
                          struct BqSimulation *out);

/**
 * Full analysis report as a NUL-terminated JSON string. Release it with
 * `bq_string_free`.
 *
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum BqStatus bq_analysis_json(const struct BqState *s, char **out);

/**
 * # Safety
 * `p` must come from `bq_analysis_json` and not be freed twice. Null is ignored.
 */
void bq_string_free(char *p);

/**
 * Static description of a status code.
 */
const char *bq_status_message(enum BqStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIQUTRIT_H */
