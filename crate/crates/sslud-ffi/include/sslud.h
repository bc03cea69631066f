#ifndef SSLUD_H
#define SSLUD_H

/* Generated by cbindgen from the sslud-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum SsludStatus {
  SSLUD_STATUS_OK = 0,
  /**
   * A pointer argument was null.
   */
  SSLUD_STATUS_NULL_POINTER = 1,
  /**
   * A parameter or argument was outside its domain.
   */
  SSLUD_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The reliability underflowed to zero; the hazard is undefined there.
   */
  SSLUD_STATUS_DEGENERATE_TAIL = 3,
  /**
   * Estimation failed (empty or non-finite data, or no feasible bracket).
   */
  SSLUD_STATUS_FIT_FAILED = 4,
} SsludStatus;

/**
 * Branch tag mirrored into C.
 */
typedef enum SsludBranch {
  SSLUD_BRANCH_NEGATIVE_MU = -1,
  SSLUD_BRANCH_NOT_APPLICABLE = 0,
  SSLUD_BRANCH_POSITIVE_MU = 1,
} SsludBranch;

/**
 * Opaque SSLUD(mu) distribution handle.
 */
typedef struct SsludDist SsludDist;

/**
 * Opaque reproducible random generator handle.
 */
typedef struct SsludRng SsludRng;

/**
 * Fit output: the estimate, its log-likelihood, and information criteria.
 */
typedef struct SsludFit {
  double mu;
  double loglik;
  double aic;
  double bic;
  /**
   * Nonzero when the estimate sat against a search or clamp boundary.
   */
  int32_t boundary_hit;
  enum SsludBranch branch;
} SsludFit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a distribution handle. Returns null when `mu` is zero or
 * non-finite.
 */
struct SsludDist *sslud_dist_new(double mu);

/**
 * Release a distribution handle. Null is a no-op.
 *
 * # Safety
 * `dist` must be null or a pointer returned by [`sslud_dist_new`] that has
 * not yet been freed.
 */
void sslud_dist_free(struct SsludDist *dist);

/**
 * Read back the parameter of a distribution handle.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_dist_mu(const struct SsludDist *dist, double *out);

/**
 * Density at `x`.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_pdf(const struct SsludDist *dist, double x, double *out);

/**
 * Distribution function at `x`.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_cdf(const struct SsludDist *dist, double x, double *out);

/**
 * Reliability `1 - G(x)`.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_reliability(const struct SsludDist *dist, double x, double *out);

/**
 * Mean deviation `E|X - a|` about `a`.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_mean_deviation(const struct SsludDist *dist, double a, double *out);

/**
 * Quantile at probability `r` in (0, 1).
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_quantile(const struct SsludDist *dist, double r, double *out);

/**
 * Hazard rate at `x`; fails with `DegenerateTail` where the reliability is
 * exactly zero.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_hazard(const struct SsludDist *dist, double x, double *out);

/**
 * Moment generating function at `t` (domain `t < 1` for positive mu,
 * mirrored otherwise).
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_mgf(const struct SsludDist *dist, double t, double *out);

/**
 * Raw moment of order 1..=4.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_raw_moment(const struct SsludDist *dist, uint32_t order, double *out);

/**
 * Mode of the distribution.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_mode(const struct SsludDist *dist, double *out);

/**
 * Median of the distribution.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_median(const struct SsludDist *dist, double *out);

/**
 * Mean, variance, skewness, and kurtosis written to `out[0..4]`.
 *
 * # Safety
 * `dist` must be a live handle and `out` writable for 4 doubles.
 */
enum SsludStatus sslud_summary_measures(const struct SsludDist *dist, double *out);

/**
 * Renyi entropy of integer order `alpha >= 2`, in bits.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_renyi_entropy(const struct SsludDist *dist, uint32_t alpha, double *out);

/**
 * Shannon entropy in bits.
 *
 * # Safety
 * `dist` must be a live handle and `out` a writable f64.
 */
enum SsludStatus sslud_shannon_entropy(const struct SsludDist *dist, double *out);

/**
 * Create a generator at the start of stream (`seed`, `stream_id`). Equal
 * pairs reproduce identical draw sequences.
 */
struct SsludRng *sslud_rng_new(uint64_t seed, uint64_t stream_id);

/**
 * Release a generator handle. Null is a no-op.
 *
 * # Safety
 * `rng` must be null or a pointer returned by [`sslud_rng_new`] that has
 * not yet been freed.
 */
void sslud_rng_free(struct SsludRng *rng);

/**
 * Draw `n` variates into `out`, advancing the generator.
 *
 * # Safety
 * `dist` and `rng` must be live handles and `out` writable for `n` doubles.
 */
enum SsludStatus sslud_sample(const struct SsludDist *dist,
                              struct SsludRng *rng,
                              uintptr_t n,
                              double *out);

/**
 * Two-branch maximum likelihood fit of SSLUD(mu) to `data[0..len]`.
 *
 * # Safety
 * `data` must be readable for `len` doubles and `out` a writable
 * [`SsludFit`].
 */
enum SsludStatus sslud_fit_mle(const double *data, uintptr_t len, struct SsludFit *out);

/**
 * Method-of-moments fit of SSLUD(mu) to `data[0..len]`.
 *
 * # Safety
 * `data` must be readable for `len` doubles and `out` a writable
 * [`SsludFit`].
 */
enum SsludStatus sslud_fit_mom(const double *data, uintptr_t len, struct SsludFit *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SSLUD_H */
