#include "aadcurve/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aadcurve/core_stats.hpp"
#include "aadcurve/rng.hpp"

namespace aadcurve {

namespace {

std::string window_str(double window_s) {
  return std::to_string(window_s) + " s";
}

// Strictly descending, unique window grid; throws GridMismatch otherwise.
template <typename Points>
void check_descending(const Points& points, const char* what) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].window_s < points[i - 1].window_s)) {
      raise(ErrorKind::GridMismatch,
            std::string(what) + " grid is not strictly descending at " +
                window_str(points[i].window_s));
    }
  }
}

double sample_std(const std::vector<double>& values, double mean) {
  if (values.size() < 2) {
    return 0.0;
  }
  CompensatedSum sq;
  for (double v : values) {
    const double c = v - mean;
    sq.add(c * c);
  }
  return std::sqrt(sq.value() / static_cast<double>(values.size() - 1));
}

}  // namespace

GroundTruthCurve ground_truth_curve(
    const std::vector<LabeledCorrelationSet>& sets) {
  if (sets.empty()) {
    raise(ErrorKind::EmptySet, "no correlation sets given");
  }
  GroundTruthCurve truth;
  truth.points.reserve(sets.size());
  for (const auto& set : sets) {
    set.validate();
    std::int64_t correct = 0;
    for (const auto& p : set.pairs) {
      correct += p.r_att > p.r_unatt;  // a tie scores as incorrect
    }
    const auto m = static_cast<std::int64_t>(set.pairs.size());
    truth.points.push_back({set.window_s,
                            100.0 * static_cast<double>(correct) /
                                static_cast<double>(m),
                            m});
  }
  std::sort(truth.points.begin(), truth.points.end(),
            [](const auto& a, const auto& b) { return a.window_s > b.window_s; });
  for (std::size_t i = 1; i < truth.points.size(); ++i) {
    if (truth.points[i].window_s == truth.points[i - 1].window_s) {
      raise(ErrorKind::GridMismatch,
            "duplicate window length " +
                window_str(truth.points[i].window_s) +
                " across correlation sets");
    }
  }
  return truth;
}

GroundTruthCurve oracle_truth_curve(const SyntheticScenario& scn,
                                    const std::vector<double>& targets_s,
                                    std::int64_t n_windows) {
  if (targets_s.empty()) {
    raise(ErrorKind::EmptySet, "no target window lengths given");
  }
  std::vector<double> sorted = targets_s;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      raise(ErrorKind::GridMismatch,
            "duplicate target window length " + window_str(sorted[i]));
    }
  }
  GroundTruthCurve truth;
  truth.points.reserve(sorted.size());
  for (double w : sorted) {
    truth.points.push_back(
        {w, empirical_accuracy(scn, w, n_windows), n_windows});
  }
  return truth;
}

EvaluationReport compare(const PerformanceCurve& pred,
                         const GroundTruthCurve& truth) {
  auto pred_points = pred.points;
  auto truth_points = truth.points;
  const auto desc = [](const auto& a, const auto& b) {
    return a.window_s > b.window_s;
  };
  std::sort(pred_points.begin(), pred_points.end(), desc);
  std::sort(truth_points.begin(), truth_points.end(), desc);
  check_descending(pred_points, "prediction");
  check_descending(truth_points, "ground-truth");
  if (pred_points.size() != truth_points.size()) {
    raise(ErrorKind::GridMismatch,
          "prediction has " + std::to_string(pred_points.size()) +
              " window lengths but ground truth has " +
              std::to_string(truth_points.size()));
  }

  EvaluationReport report;
  report.n_repetitions = 1;
  report.baseline_window_s = pred.baseline_window_s;
  report.per_point.reserve(pred_points.size());

  CompensatedSum err_sum;
  std::int64_t covered_count = 0;
  std::vector<double> errors;
  errors.reserve(pred_points.size());
  for (std::size_t i = 0; i < pred_points.size(); ++i) {
    const auto& p = pred_points[i];
    const auto& t = truth_points[i];
    if (p.window_s != t.window_s) {
      raise(ErrorKind::GridMismatch,
            "prediction window " + window_str(p.window_s) +
                " has no ground-truth counterpart (nearest is " +
                window_str(t.window_s) + ")");
    }
    PointReport row;
    row.window_s = p.window_s;
    row.true_pct = t.accuracy_pct;
    row.pred_pct = p.accuracy_pct;
    row.abs_err_pp = std::abs(t.accuracy_pct - p.accuracy_pct);
    row.ci_low = p.ci_low_pct;
    row.ci_high = p.ci_high_pct;
    row.covered = p.ci_low_pct <= t.accuracy_pct &&
                  t.accuracy_pct <= p.ci_high_pct;
    covered_count += row.covered;
    err_sum.add(row.abs_err_pp);
    errors.push_back(row.abs_err_pp);
    report.per_point.push_back(row);
  }

  const auto n = static_cast<double>(report.per_point.size());
  report.mae_pp = err_sum.value() / n;
  report.std_err_pp = sample_std(errors, report.mae_pp);
  report.coverage_pct =
      100.0 * static_cast<double>(covered_count) / n;
  return report;
}

std::vector<EvaluationReport> subsample_experiment(
    const LabeledCorrelationSet& pool, const std::vector<double>& minutes_grid,
    int n_repetitions, const std::vector<double>& targets_s,
    const GroundTruthCurve& truth, const CiConfig& cfg,
    std::uint64_t subsample_seed) {
  pool.validate();
  cfg.validate();
  if (minutes_grid.empty()) {
    raise(ErrorKind::EmptySet, "no estimation-minutes values given");
  }
  if (n_repetitions < 1) {
    raise(ErrorKind::OutOfDomain, "at least one repetition is required");
  }
  const std::size_t pool_size = pool.pairs.size();

  std::vector<EvaluationReport> reports;
  reports.reserve(minutes_grid.size());
  std::vector<std::size_t> order(pool_size);
  for (std::size_t g = 0; g < minutes_grid.size(); ++g) {
    const double minutes = minutes_grid[g];
    const double raw_count = std::floor(60.0 * minutes / pool.window_s);
    if (!(raw_count >= 2.0)) {
      raise(ErrorKind::TooFewSamples,
            std::to_string(minutes) + " min yields fewer than two pairs at " +
                window_str(pool.window_s) + " windows");
    }
    const auto m_needed = static_cast<std::size_t>(raw_count);
    if (m_needed > pool_size) {
      raise(ErrorKind::InsufficientPool,
            std::to_string(minutes) + " min needs " +
                std::to_string(m_needed) + " pairs but the pool holds " +
                std::to_string(pool_size));
    }

    EvaluationReport agg;
    agg.n_repetitions = n_repetitions;
    agg.baseline_window_s = pool.window_s;
    agg.estimation_minutes = minutes;

    CompensatedSum err_sum;
    std::int64_t covered_count = 0;
    std::vector<double> rep_maes;
    rep_maes.reserve(static_cast<std::size_t>(n_repetitions));

    LabeledCorrelationSet subset;
    subset.window_s = pool.window_s;
    subset.fs_hz = pool.fs_hz;
    for (int r = 0; r < n_repetitions; ++r) {
      // Partial Fisher-Yates shuffle: the first m_needed slots become a
      // uniform draw without replacement.
      std::iota(order.begin(), order.end(), std::size_t{0});
      Rng rng = Rng::stream(subsample_seed,
                            {stream_family::kSubsample,
                             static_cast<std::uint64_t>(g),
                             static_cast<std::uint64_t>(r)});
      subset.pairs.clear();
      subset.pairs.reserve(m_needed);
      for (std::size_t i = 0; i < m_needed; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.below(pool_size - i));
        std::swap(order[i], order[j]);
        subset.pairs.push_back(pool.pairs[order[i]]);
      }

      const PerformanceCurve curve = model_curve(subset, targets_s, cfg);
      const EvaluationReport rep = compare(curve, truth);
      rep_maes.push_back(rep.mae_pp);
      for (const auto& row : rep.per_point) {
        covered_count += row.covered;
        err_sum.add(row.abs_err_pp);
        agg.per_point.push_back(row);
      }
    }

    const auto total = static_cast<double>(agg.per_point.size());
    agg.mae_pp = err_sum.value() / total;
    const double mean_rep_mae =
        std::accumulate(rep_maes.begin(), rep_maes.end(), 0.0) /
        static_cast<double>(rep_maes.size());
    agg.std_err_pp = sample_std(rep_maes, mean_rep_mae);
    agg.coverage_pct = 100.0 * static_cast<double>(covered_count) / total;
    reports.push_back(std::move(agg));
  }
  return reports;
}

std::vector<EvaluationReport> baseline_sweep(
    const std::vector<LabeledCorrelationSet>& pools,
    const std::vector<double>& baselines_s,
    const std::vector<double>& targets_s, const CiConfig& cfg) {
  if (pools.empty() || baselines_s.empty()) {
    raise(ErrorKind::EmptySet, "baseline sweep needs pools and baselines");
  }
  if (pools.size() != baselines_s.size()) {
    raise(ErrorKind::MissingPool,
          "got " + std::to_string(baselines_s.size()) + " baselines but " +
              std::to_string(pools.size()) + " pools");
  }
  for (std::size_t i = 0; i < pools.size(); ++i) {
    if (pools[i].window_s != baselines_s[i]) {
      raise(ErrorKind::MissingPool,
            "pool " + std::to_string(i) + " holds " +
                window_str(pools[i].window_s) + " windows, baseline wants " +
                window_str(baselines_s[i]));
    }
  }

  // Decision-counting ground truth from the pools covering the targets.
  std::vector<LabeledCorrelationSet> truth_sets;
  truth_sets.reserve(targets_s.size());
  for (double target : targets_s) {
    const auto it = std::find_if(
        pools.begin(), pools.end(),
        [&](const LabeledCorrelationSet& s) { return s.window_s == target; });
    if (it == pools.end()) {
      raise(ErrorKind::MissingPool,
            "no pool provides ground truth at " + window_str(target));
    }
    truth_sets.push_back(*it);
  }
  const GroundTruthCurve truth = ground_truth_curve(truth_sets);

  std::vector<EvaluationReport> reports;
  reports.reserve(pools.size());
  for (std::size_t i = 0; i < pools.size(); ++i) {
    const PerformanceCurve curve = model_curve(pools[i], targets_s, cfg);
    EvaluationReport report = compare(curve, truth);
    report.baseline_window_s = baselines_s[i];
    report.estimation_minutes =
        static_cast<double>(pools[i].pairs.size()) * pools[i].window_s / 60.0;
    reports.push_back(std::move(report));
  }
  return reports;
}

PerformanceCurve mean_curve(const std::vector<PerformanceCurve>& curves) {
  if (curves.empty()) {
    raise(ErrorKind::EmptySet, "no curves to average");
  }
  const auto& first = curves[0];
  for (const auto& c : curves) {
    if (c.points.size() != first.points.size()) {
      raise(ErrorKind::GridMismatch,
            "curves cover different numbers of window lengths");
    }
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      if (c.points[i].window_s != first.points[i].window_s) {
        raise(ErrorKind::GridMismatch,
              "curve grids disagree at " + window_str(c.points[i].window_s));
      }
    }
  }

  PerformanceCurve mean = first;
  const double k = static_cast<double>(curves.size());
  for (std::size_t i = 0; i < mean.points.size(); ++i) {
    CompensatedSum acc, low, high;
    for (const auto& c : curves) {
      acc.add(c.points[i].accuracy_pct);
      low.add(c.points[i].ci_low_pct);
      high.add(c.points[i].ci_high_pct);
    }
    mean.points[i].accuracy_pct = acc.value() / k;
    mean.points[i].ci_low_pct = low.value() / k;
    mean.points[i].ci_high_pct = high.value() / k;
  }
  return mean;
}

}  // namespace aadcurve
