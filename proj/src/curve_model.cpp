#include "aadcurve/curve_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "aadcurve/bootstrap.hpp"
#include "aadcurve/core_stats.hpp"

namespace aadcurve {

std::int64_t window_samples(double window_s, double fs_hz) {
  if (!(std::isfinite(window_s) && window_s > 0.0)) {
    raise(ErrorKind::InvalidWindow, "window length must be a positive number "
                                    "of seconds");
  }
  if (!(std::isfinite(fs_hz) && fs_hz > 0.0)) {
    raise(ErrorKind::InvalidWindow, "sampling rate must be positive");
  }
  const double product = window_s * fs_hz;
  const auto n = static_cast<std::int64_t>(std::llround(product));
  if (n < 2) {
    raise(ErrorKind::InvalidWindow,
          "a window of " + std::to_string(window_s) + " s at " +
              std::to_string(fs_hz) + " Hz holds fewer than two samples");
  }
  return n;
}

void LabeledCorrelationSet::validate() const {
  if (pairs.empty()) {
    raise(ErrorKind::EmptySet, "correlation set has no pairs");
  }
  (void)samples_per_window();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (!std::isfinite(p.r_att) || !std::isfinite(p.r_unatt) ||
        std::abs(p.r_att) > 1.0 || std::abs(p.r_unatt) > 1.0) {
      raise(ErrorKind::OutOfDomain,
            "pair " + std::to_string(i) +
                " has a correlation outside [-1, 1]");
    }
  }
}

DecisionVariableModel estimate_model(const LabeledCorrelationSet& set) {
  set.validate();
  const auto m = static_cast<std::int64_t>(set.pairs.size());
  if (m < 2) {
    raise(ErrorKind::TooFewSamples,
          "model estimation needs at least two labeled pairs");
  }

  CompensatedSum sum_att, sum_unatt, sum_diff;
  std::vector<double> diffs;
  diffs.reserve(set.pairs.size());
  for (const auto& p : set.pairs) {
    sum_att.add(p.r_att);
    sum_unatt.add(p.r_unatt);
    const double d = fisher(p.r_att) - fisher(p.r_unatt);
    diffs.push_back(d);
    sum_diff.add(d);
  }
  const double md = static_cast<double>(m);
  const double mu = sum_diff.value() / md;

  CompensatedSum sum_sq;
  for (double d : diffs) {
    const double c = d - mu;
    sum_sq.add(c * c);
  }

  DecisionVariableModel model;
  model.mu_diff = mu;
  model.sigma_sum_sq = sum_sq.value() / (md - 1.0);
  model.rho_att = sum_att.value() / md;
  model.rho_unatt = sum_unatt.value() / md;
  model.n_baseline = set.samples_per_window();
  model.m_count = m;
  model.fs_hz = set.fs_hz;
  return model;
}

Extrapolation extrapolate(const DecisionVariableModel& model,
                          double target_window_s) {
  if (!(model.sigma_sum_sq > 0.0)) {
    raise(ErrorKind::ZeroVariance,
          "decision-variable variance must be positive to extrapolate");
  }
  const std::int64_t n_target = window_samples(target_window_s, model.fs_hz);
  const double n1 = static_cast<double>(model.n_baseline);
  const double n2 = static_cast<double>(n_target);

  Extrapolation ex;
  ex.n_target = n_target;
  ex.mu_diff = model.mu_diff + (n2 - n1) * (model.rho_att - model.rho_unatt) /
                                   (2.0 * (n2 - 1.0) * (n1 - 1.0));
  ex.sigma_sum_sq = model.sigma_sum_sq * (n1 - 1.0) / (n2 - 1.0);
  return ex;
}

double predict_accuracy(double mu_diff, double sigma_sum_sq) {
  if (!(sigma_sum_sq > 0.0)) {
    raise(ErrorKind::ZeroVariance,
          "accuracy prediction needs a positive variance");
  }
  // 100 * (1 - F(0; mu, sigma^2)) for the normal CDF F, standardized.
  return 100.0 * std_normal_cdf(mu_diff / std::sqrt(sigma_sum_sq));
}

PerformanceCurve model_curve(const LabeledCorrelationSet& set,
                             const std::vector<double>& targets_s,
                             const CiConfig& cfg) {
  cfg.validate();
  if (targets_s.empty()) {
    raise(ErrorKind::EmptySet, "no target window lengths given");
  }
  std::vector<double> sorted = targets_s;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(std::isfinite(sorted[i]) && sorted[i] > 0.0)) {
      raise(ErrorKind::InvalidWindow,
            "target window lengths must be positive");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      raise(ErrorKind::InvalidWindow,
            "duplicate target window length " + std::to_string(sorted[i]));
    }
  }

  const std::vector<CiResult> intervals = bca_intervals(set, sorted, cfg);

  PerformanceCurve curve;
  curve.baseline_window_s = set.window_s;
  curve.fs_hz = set.fs_hz;
  curve.bootstrap_samples = cfg.n_boot;
  curve.ci_level = cfg.level;
  curve.points.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    curve.points.push_back({sorted[i], intervals[i].point_pct,
                            intervals[i].low_pct, intervals[i].high_pct});
  }
  return curve;
}

}  // namespace aadcurve
