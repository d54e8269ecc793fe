// Evaluation harness: ground-truth curves from labeled correlation sets,
// predicted-vs-true comparison (absolute percent-point error and CI
// coverage), estimation-data-amount sweeps and baseline-window sweeps.
#pragma once

#include <cstdint>
#include <vector>

#include "aadcurve/ci_config.hpp"
#include "aadcurve/curve_model.hpp"
#include "aadcurve/synthetic.hpp"

namespace aadcurve {

struct GroundTruthPoint {
  double window_s = 0.0;
  double accuracy_pct = 0.0;       // 100 * correct / n_decisions, exactly
  std::int64_t n_decisions = 0;
};

struct GroundTruthCurve {
  std::vector<GroundTruthPoint> points;  // longest window first
};

// Decision-counting ground truth: per set, the percentage of pairs with
// r_att > r_unatt (ties incorrect). Window lengths must be unique across
// sets; the curve is sorted by descending window length.
GroundTruthCurve ground_truth_curve(
    const std::vector<LabeledCorrelationSet>& sets);

// Monte Carlo ground truth for a synthetic scenario: empirical_accuracy at
// each target with n_windows fresh windows per target.
GroundTruthCurve oracle_truth_curve(const SyntheticScenario& scn,
                                    const std::vector<double>& targets_s,
                                    std::int64_t n_windows);

struct PointReport {
  double window_s = 0.0;
  double true_pct = 0.0;
  double pred_pct = 0.0;
  double abs_err_pp = 0.0;  // |true - pred| in percent points
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool covered = false;  // ci_low <= true <= ci_high
};

// Comparison of predictions against ground truth. For aggregated reports
// (n_repetitions > 1) per_point holds the concatenated rows of every
// repetition; mae_pp is always the mean of abs_err_pp over per_point.
// std_err_pp is the sample standard deviation of the per-repetition mean
// absolute errors when aggregating, and of the per-point errors in a single
// comparison (0 whenever fewer than two values contribute).
struct EvaluationReport {
  std::vector<PointReport> per_point;
  double mae_pp = 0.0;
  double std_err_pp = 0.0;
  double coverage_pct = 0.0;  // 100 * covered / total entries
  int n_repetitions = 1;
  double baseline_window_s = 0.0;
  double estimation_minutes = 0.0;
};

// Point-by-point comparison. The curves must cover the same window grid
// (exact match after descending sort); otherwise Error(GridMismatch) naming
// the offending window length.
EvaluationReport compare(const PerformanceCurve& pred,
                         const GroundTruthCurve& truth);

// How prediction error responds to the amount of estimation data.
//
// For each minutes value g, n_repetitions subsets of
// floor(60 * minutes / pool.window_s) pairs are drawn from the pool without
// replacement (fresh draw per repetition, from the stream
// (subsample_seed, g, r)), a curve is fit on each and compared against
// `truth`; one aggregated report per minutes value. The ground truth is
// fixed and supplied by the caller. Throws Error(InsufficientPool) when the
// pool holds fewer pairs than a minutes value needs.
std::vector<EvaluationReport> subsample_experiment(
    const LabeledCorrelationSet& pool, const std::vector<double>& minutes_grid,
    int n_repetitions, const std::vector<double>& targets_s,
    const GroundTruthCurve& truth, const CiConfig& cfg,
    std::uint64_t subsample_seed);

// Prediction quality as a function of the baseline window length: pools[i]
// holds labeled pairs at baselines_s[i]; each pool is fit and evaluated
// over the shared target grid against the decision-counting ground truth of
// the pools themselves. Every target must have a pool
// (Error(MissingPool) otherwise); one report per baseline.
std::vector<EvaluationReport> baseline_sweep(
    const std::vector<LabeledCorrelationSet>& pools,
    const std::vector<double>& baselines_s,
    const std::vector<double>& targets_s, const CiConfig& cfg);

// Unweighted pointwise mean of curves sharing one window grid. CI bounds
// are averaged alongside the accuracies. Throws Error(EmptySet) on no
// curves and Error(GridMismatch) on differing grids.
PerformanceCurve mean_curve(const std::vector<PerformanceCurve>& curves);

}  // namespace aadcurve
