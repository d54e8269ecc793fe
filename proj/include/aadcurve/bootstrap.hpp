// Bias-corrected and accelerated (BCa) bootstrap for curve predictions.
//
// Pairs are resampled jointly (each draw keeps an (r_att, r_unatt) pair
// together) so the attended/unattended dependence is preserved. The bias
// correction z0 comes from the fraction of bootstrap replicates below the
// point estimate; the acceleration a from the jackknife skewness of the
// leave-one-out estimates.
#pragma once

#include <cstdint>
#include <vector>

#include "aadcurve/ci_config.hpp"
#include "aadcurve/curve_model.hpp"

namespace aadcurve {

// Inverse standard normal CDF. Throws Error(OutOfDomain) unless 0 < p < 1.
double normal_quantile(double p);

// BCa interval for the predicted accuracy at one target window length.
//
// Resample b is drawn from an RNG stream derived from (cfg.seed, b) only,
// so resamples are identical across targets and independent of evaluation
// order. A resample whose pairs cannot support a model fit (zero variance
// of the z-differences) is discarded and redrawn from (cfg.seed, b, retry);
// after 10 * n_boot failed draws in total the data is considered degenerate
// and Error(ZeroVariance) is thrown.
CiResult bca_interval(const LabeledCorrelationSet& set, double target_s,
                      const CiConfig& cfg);

// One interval per target from a single bootstrap pass: the per-resample
// model fits are shared across targets (only the extrapolation differs),
// with results identical to calling bca_interval per target.
std::vector<CiResult> bca_intervals(const LabeledCorrelationSet& set,
                                    const std::vector<double>& targets_s,
                                    const CiConfig& cfg);

namespace detail {

// Adjusted quantile levels for the BCa interval. alpha is the tail mass per
// side ((1 - level) / 2). When the shifted argument's denominator
// 1 - a (z0 + z) is <= 0 the adjusted level saturates toward the
// corresponding interval end.
struct AdjustedAlphas {
  double lower;
  double upper;
};
AdjustedAlphas bca_adjusted_alphas(double z0, double accel, double alpha);

// Nearest-rank order statistic of a sorted sample: index ceil(p * n) - 1,
// clamped to [0, n - 1].
double nearest_rank(const std::vector<double>& sorted, double p);

// Jackknife acceleration from leave-one-out estimates; 0 when the spread
// vanishes.
double jackknife_acceleration(const std::vector<double>& loo);

}  // namespace detail

}  // namespace aadcurve
