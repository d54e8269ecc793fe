#include "aadcurve/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aadcurve/core_stats.hpp"
#include "aadcurve/rng.hpp"

namespace aadcurve {

namespace {

// Rational approximation of the inverse normal CDF (relative error below
// 1.2e-9 everywhere), sharpened by one Halley step against the
// erfc-based CDF.
double inverse_cdf_seed(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double standard_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    raise(ErrorKind::OutOfDomain, "quantile requires a probability in (0, 1)");
  }
  double x = inverse_cdf_seed(p);
  const double err = std_normal_cdf(x) - p;
  const double u = err / standard_normal_pdf(x);
  x -= u / (1.0 + 0.5 * x * u);  // Halley step
  return x;
}

namespace detail {

AdjustedAlphas bca_adjusted_alphas(double z0, double accel, double alpha) {
  const double z_low = normal_quantile(alpha);
  const double z_high = -z_low;
  const auto adjust = [&](double z) {
    const double w = z0 + z;
    const double denom = 1.0 - accel * w;
    if (denom <= 0.0) {
      // The transformation diverges; saturate toward the interval end the
      // shifted quantile was heading for.
      return w >= 0.0 ? 1.0 : 0.0;
    }
    return std_normal_cdf(z0 + w / denom);
  };
  return {adjust(z_low), adjust(z_high)};
}

double nearest_rank(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) {
    raise(ErrorKind::EmptySet, "quantile of an empty sample");
  }
  const auto n = static_cast<std::int64_t>(sorted.size());
  auto idx = static_cast<std::int64_t>(
                 std::ceil(p * static_cast<double>(n))) -
             1;
  idx = std::clamp<std::int64_t>(idx, 0, n - 1);
  return sorted[static_cast<std::size_t>(idx)];
}

double jackknife_acceleration(const std::vector<double>& loo) {
  CompensatedSum sum;
  for (double v : loo) {
    sum.add(v);
  }
  const double mean = sum.value() / static_cast<double>(loo.size());
  CompensatedSum sq, cube;
  for (double v : loo) {
    const double d = mean - v;
    sq.add(d * d);
    cube.add(d * d * d);
  }
  const double denom = 6.0 * std::pow(sq.value(), 1.5);
  if (!(denom > 0.0)) {
    return 0.0;
  }
  return cube.value() / denom;
}

}  // namespace detail

std::vector<CiResult> bca_intervals(const LabeledCorrelationSet& set,
                                    const std::vector<double>& targets_s,
                                    const CiConfig& cfg) {
  cfg.validate();
  if (targets_s.empty()) {
    raise(ErrorKind::EmptySet, "no target window lengths given");
  }
  const DecisionVariableModel base = estimate_model(set);
  const std::size_t t_count = targets_s.size();
  const std::size_t m = set.pairs.size();

  std::vector<double> point(t_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    const Extrapolation ex = extrapolate(base, targets_s[t]);
    point[t] = predict_accuracy(ex.mu_diff, ex.sigma_sum_sq);
  }

  // Bootstrap replicates. The resample for index b depends only on
  // (cfg.seed, b), so every target sees the same resampled sets and the
  // result is independent of target order.
  std::vector<std::vector<double>> reps(t_count,
                                        std::vector<double>(cfg.n_boot));
  {
    LabeledCorrelationSet resample;
    resample.window_s = set.window_s;
    resample.fs_hz = set.fs_hz;
    resample.pairs.resize(m);
    const std::int64_t redraw_budget = 10LL * cfg.n_boot;
    std::int64_t failed_draws = 0;
    for (int b = 0; b < cfg.n_boot; ++b) {
      const auto bid = static_cast<std::uint64_t>(b);
      for (std::uint64_t retry = 0;; ++retry) {
        Rng rng =
            retry == 0
                ? Rng::stream(cfg.seed, {stream_family::kBootstrapResample,
                                         bid})
                : Rng::stream(cfg.seed, {stream_family::kBootstrapResample,
                                         bid, retry});
        for (std::size_t j = 0; j < m; ++j) {
          resample.pairs[j] = set.pairs[rng.below(m)];
        }
        const DecisionVariableModel fit = estimate_model(resample);
        if (fit.sigma_sum_sq > 0.0) {
          for (std::size_t t = 0; t < t_count; ++t) {
            const Extrapolation ex = extrapolate(fit, targets_s[t]);
            reps[t][b] = predict_accuracy(ex.mu_diff, ex.sigma_sum_sq);
          }
          break;
        }
        if (++failed_draws > redraw_budget) {
          raise(ErrorKind::ZeroVariance,
                "resampling keeps producing degenerate correlation sets");
        }
      }
    }
  }

  // Leave-one-out model fits through O(M) sum updates; they feed the
  // acceleration constant. M < 3 leaves no unbiased leave-one-out variance,
  // and a zero-spread jackknife has no defined skewness: both fall back to
  // the bias-corrected percentile interval.
  bool jackknife_ok = m >= 3;
  std::vector<DecisionVariableModel> loo_models;
  if (jackknife_ok) {
    std::vector<double> centered(m);
    CompensatedSum sum_att, sum_unatt, sum_c, sum_c_sq;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& p = set.pairs[i];
      sum_att.add(p.r_att);
      sum_unatt.add(p.r_unatt);
      const double c = (fisher(p.r_att) - fisher(p.r_unatt)) - base.mu_diff;
      centered[i] = c;
      sum_c.add(c);
      sum_c_sq.add(c * c);
    }
    const double md = static_cast<double>(m);
    const double s_att = sum_att.value();
    const double s_unatt = sum_unatt.value();
    const double s1 = sum_c.value();
    const double s2 = sum_c_sq.value();

    loo_models.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double ci = centered[i];
      const double mean_c = (s1 - ci) / (md - 1.0);
      const double ss = (s2 - ci * ci) - (md - 1.0) * mean_c * mean_c;
      const double var = ss / (md - 2.0);
      if (!(var > 0.0)) {
        jackknife_ok = false;
        break;
      }
      auto& lm = loo_models[i];
      lm.mu_diff = base.mu_diff + mean_c;
      lm.sigma_sum_sq = var;
      lm.rho_att = (s_att - set.pairs[i].r_att) / (md - 1.0);
      lm.rho_unatt = (s_unatt - set.pairs[i].r_unatt) / (md - 1.0);
      lm.n_baseline = base.n_baseline;
      lm.m_count = static_cast<std::int64_t>(m) - 1;
      lm.fs_hz = base.fs_hz;
    }
  }

  const double alpha = 0.5 * (1.0 - cfg.level);
  const double n_boot = static_cast<double>(cfg.n_boot);

  std::vector<CiResult> results(t_count);
  std::vector<double> sorted_reps;
  std::vector<double> loo_theta;
  for (std::size_t t = 0; t < t_count; ++t) {
    std::int64_t below = 0;
    std::int64_t ties = 0;
    for (double v : reps[t]) {
      below += v < point[t];
      ties += v == point[t];
    }
    double frac = (static_cast<double>(below) +
                   0.5 * static_cast<double>(ties)) /
                  n_boot;
    frac = std::clamp(frac, 0.5 / n_boot, 1.0 - 0.5 / n_boot);
    const double z0 = normal_quantile(frac);

    double accel = 0.0;
    bool fallback = !jackknife_ok;
    if (jackknife_ok) {
      loo_theta.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
        const Extrapolation ex = extrapolate(loo_models[i], targets_s[t]);
        loo_theta[i] = predict_accuracy(ex.mu_diff, ex.sigma_sum_sq);
      }
      const auto [lo, hi] =
          std::minmax_element(loo_theta.begin(), loo_theta.end());
      if (*lo == *hi) {
        fallback = true;  // zero jackknife spread, skewness undefined
      } else {
        accel = detail::jackknife_acceleration(loo_theta);
      }
    }

    const detail::AdjustedAlphas alphas =
        detail::bca_adjusted_alphas(z0, accel, alpha);

    sorted_reps = reps[t];
    std::sort(sorted_reps.begin(), sorted_reps.end());

    CiResult& res = results[t];
    res.point_pct = point[t];
    res.low_pct = detail::nearest_rank(sorted_reps, alphas.lower);
    res.high_pct = detail::nearest_rank(sorted_reps, alphas.upper);
    res.n_boot_effective = cfg.n_boot;
    res.percentile_fallback = fallback;
    if (res.low_pct > res.point_pct) {
      res.low_pct = res.point_pct;
      res.bracket_expanded = true;
    }
    if (res.high_pct < res.point_pct) {
      res.high_pct = res.point_pct;
      res.bracket_expanded = true;
    }
  }
  return results;
}

CiResult bca_interval(const LabeledCorrelationSet& set, double target_s,
                      const CiConfig& cfg) {
  return bca_intervals(set, {target_s}, cfg)[0];
}

}  // namespace aadcurve
