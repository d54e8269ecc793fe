#include "aadcurve/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace aadcurve {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    raise(ErrorKind::LengthMismatch,
          "sequences have lengths " + std::to_string(x.size()) + " and " +
              std::to_string(y.size()));
  }
  const std::size_t n = x.size();
  if (n < 2) {
    raise(ErrorKind::InvalidWindow,
          "correlation needs at least two samples per window");
  }

  CompensatedSum sum_x, sum_y;
  for (std::size_t i = 0; i < n; ++i) {
    sum_x.add(x[i]);
    sum_y.add(y[i]);
  }
  const double mean_x = sum_x.value() / static_cast<double>(n);
  const double mean_y = sum_y.value() / static_cast<double>(n);

  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy.add(dx * dy);
    sxx.add(dx * dx);
    syy.add(dy * dy);
  }
  const double ex = sxx.value();
  const double ey = syy.value();
  if (!(ex > 0.0) || !(ey > 0.0)) {
    raise(ErrorKind::DegenerateWindow,
          "a window is constant after mean removal");
  }
  return std::clamp(sxy.value() / std::sqrt(ex * ey), -1.0, 1.0);
}

double clamp_correlation(double r) noexcept {
  const double limit = 1.0 - kCorrelationClampEps;
  return std::clamp(r, -limit, limit);
}

double fisher(double r, bool clamp) {
  if (clamp) {
    r = clamp_correlation(r);
  } else if (!(std::abs(r) < 1.0)) {
    raise(ErrorKind::OutOfDomain, "fisher transform requires |r| < 1");
  }
  return std::atanh(r);
}

double fisher_inv(double z) noexcept { return std::tanh(z); }

double std_normal_cdf(double t) noexcept {
  // erfc keeps full relative precision in the lower tail; the branch split
  // evaluates t and -t through the same erfc value, so the symmetry
  // Phi(t) + Phi(-t) = 1 holds to within one rounding of the final
  // subtraction.
  const double scaled = t / std::numbers::sqrt2;
  if (t < 0.0) {
    return 0.5 * std::erfc(-scaled);
  }
  return 1.0 - 0.5 * std::erfc(scaled);
}

HotellingMoments hotelling_moments(double rho, std::int64_t n) {
  if (!(std::abs(rho) < 1.0)) {
    raise(ErrorKind::OutOfDomain, "latent correlation must satisfy |rho| < 1");
  }
  if (n < 2) {
    raise(ErrorKind::InvalidWindow,
          "moment approximation needs at least two samples per window");
  }
  const double n1 = static_cast<double>(n - 1);
  return {std::atanh(rho) + rho / (2.0 * n1), 1.0 / n1};
}

}  // namespace aadcurve
