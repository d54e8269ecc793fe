// Decision-variable model: estimate per-window Fisher-z difference moments
// from labeled correlation pairs, extrapolate them across window lengths and
// map them to expected decision accuracy.
//
// A decision compares the attended-envelope correlation r_att with the
// unattended one r_unatt inside each window; it is correct when
// r_att - r_unatt > 0. After the Fisher transformation both correlations
// are approximately normal, so the difference d = z(r_att) - z(r_unatt) is
// modeled as N(mu_diff, sigma_sum_sq) and the expected accuracy is the
// probability mass of d above zero.
#pragma once

#include <cstdint>
#include <vector>

#include "aadcurve/ci_config.hpp"
#include "aadcurve/errors.hpp"

namespace aadcurve {

struct CorrelationPair {
  double r_att = 0.0;
  double r_unatt = 0.0;
};

// Number of samples in a decision window of w seconds at rate fs.
// Rounds w * fs to the nearest integer; throws Error(InvalidWindow) unless
// the result is at least 2 (the Fisher-z variance 1/(N-1) must be defined).
std::int64_t window_samples(double window_s, double fs_hz);

// Labeled correlation pairs observed at a single decision-window length.
struct LabeledCorrelationSet {
  std::vector<CorrelationPair> pairs;
  double window_s = 0.0;
  double fs_hz = 0.0;

  std::int64_t samples_per_window() const {
    return window_samples(window_s, fs_hz);
  }

  // Throws Error on empty pairs, non-finite or out-of-range correlations,
  // or an invalid window/rate combination.
  void validate() const;
};

// First-order moments of the decision variable at a baseline window length.
struct DecisionVariableModel {
  double mu_diff = 0.0;       // mean of z(r_att) - z(r_unatt)
  double sigma_sum_sq = 0.0;  // variance of the difference
  double rho_att = 0.0;       // mean attended correlation (raw r)
  double rho_unatt = 0.0;     // mean unattended correlation (raw r)
  std::int64_t n_baseline = 0;  // samples per window the model was fit at
  std::int64_t m_count = 0;     // number of pairs used for the fit
  double fs_hz = 0.0;  // carried so window lengths can be mapped to samples
};

// Moments carried to another window length.
struct Extrapolation {
  double mu_diff = 0.0;
  double sigma_sum_sq = 0.0;
  std::int64_t n_target = 0;
};

// Fit the decision-variable model on pairs observed at one window length:
// rho_att/rho_unatt are means of the raw correlations, mu_diff the mean of
// the Fisher-z differences and sigma_sum_sq their unbiased sample variance.
// Throws Error(TooFewSamples) when fewer than two pairs are given.
DecisionVariableModel estimate_model(const LabeledCorrelationSet& set);

// Carry the baseline moments to a target window length (seconds).
//
// With N1 = n_baseline and N2 = round(target_window_s * fs_hz):
//   mu_diff_2      = mu_diff + (N2 - N1)(rho_att - rho_unatt)
//                              / (2 (N2 - 1)(N1 - 1))
//   sigma_sum_sq_2 = sigma_sum_sq * (N1 - 1) / (N2 - 1)
// The mean picks up the change of the correlation-dependent bias term
// rho / (2 (N - 1)) of the Fisher-z estimator; the variance scales with
// its 1 / (N - 1) law. Throws InvalidWindow (N2 < 2) or ZeroVariance.
Extrapolation extrapolate(const DecisionVariableModel& model,
                          double target_window_s);

// Expected percentage of correct decisions: 100 * (1 - F(0)) where F is the
// CDF of N(mu_diff, sigma_sum_sq), i.e. 100 * Phi(mu_diff / sigma).
// Throws Error(ZeroVariance) if sigma_sum_sq <= 0.
double predict_accuracy(double mu_diff, double sigma_sum_sq);

struct CurvePoint {
  double window_s = 0.0;
  double accuracy_pct = 0.0;
  double ci_low_pct = 0.0;
  double ci_high_pct = 0.0;
};

// Predicted accuracy across decision-window lengths, longest window first.
struct PerformanceCurve {
  std::vector<CurvePoint> points;
  double baseline_window_s = 0.0;
  double fs_hz = 0.0;
  int bootstrap_samples = 0;
  double ci_level = 0.0;
};

// Predict accuracy with BCa bootstrap confidence intervals at each target
// window length. Targets may be given in any order; the curve is sorted by
// descending window length. Duplicate or invalid targets throw.
PerformanceCurve model_curve(const LabeledCorrelationSet& set,
                             const std::vector<double>& targets_s,
                             const CiConfig& cfg);

}  // namespace aadcurve
