// Scalar and vector statistical primitives: windowed Pearson correlation,
// Fisher transform and inverse, standard-normal CDF, and the first-order
// moment approximations for Fisher-transformed correlations.
//
// Everything here is a pure function of its arguments and safe to call
// concurrently.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "aadcurve/errors.hpp"

namespace aadcurve {

/// Correlations are clamped to +/-(1 - kCorrelationClampEps) before any
/// Fisher transform so artanh stays finite on numerically perfect inputs.
inline constexpr double kCorrelationClampEps = 1e-12;

/// Approximate mean and variance of artanh(r) for a sample correlation r
/// measured over N samples with latent correlation rho:
///   mu       = artanh(rho) + rho / (2(N-1))
///   sigma_sq = 1 / (N-1)
struct HotellingMoments {
  double mu;
  double sigma_sq;
};

// Compensated (Neumaier) accumulator. Keeps long-window correlation sums
// accurate up to N ~ 1e7 samples.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Pearson correlation of two equal-length windows. The sequences are
/// mean-centered before the sum-of-products form is evaluated, so callers
/// may pass raw (not necessarily zero-mean) windows. Result is clamped to
/// [-1, 1].
///
/// Throws LengthMismatch, InvalidWindow (N < 2) or DegenerateWindow (a
/// centered sequence with zero energy).
double pearson(std::span<const double> x, std::span<const double> y);

/// r clamped into [-(1-eps), 1-eps].
double clamp_correlation(double r) noexcept;

/// Fisher transformation z = artanh(r). With clamp (the default) any finite
/// r is first pulled into the open interval; with clamp disabled |r| >= 1
/// throws OutOfDomain.
double fisher(double r, bool clamp = true);

/// Inverse Fisher transformation, tanh(z).
double fisher_inv(double z) noexcept;

/// Standard-normal CDF. Absolute error below 1e-14 everywhere; the symmetry
/// defect |cdf(t) + cdf(-t) - 1| stays within one rounding of the final
/// subtraction (~1 ulp).
double std_normal_cdf(double t) noexcept;

/// First-order moment approximations for artanh(r) at latent correlation
/// rho and window size n. Throws OutOfDomain (|rho| >= 1) or InvalidWindow
/// (n < 2).
HotellingMoments hotelling_moments(double rho, std::int64_t n);

}  // namespace aadcurve
