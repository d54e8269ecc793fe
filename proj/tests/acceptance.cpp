// Acceptance gate. Each criterion runs as `acceptance <n>` (n in 1..8) and
// prints exactly one line to stdout:
//   criterion <n> (<name>): PASS — <metrics> (<elapsed>)
//   criterion <n> (<name>): FAIL — <reason> (<elapsed>)
// With no argument all criteria run in order. Exit code 0 iff everything
// printed PASS. Diagnostics beyond the verdict line go to stderr.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "aadcurve/bootstrap.hpp"
#include "aadcurve/core_stats.hpp"
#include "aadcurve/curve_model.hpp"
#include "aadcurve/errors.hpp"
#include "aadcurve/evaluation.hpp"
#include "aadcurve/synthetic.hpp"

#ifndef AADCURVE_CLI_PATH
#error "AADCURVE_CLI_PATH must point at the built executable"
#endif
#ifndef AADCURVE_FIXTURES_DIR
#error "AADCURVE_FIXTURES_DIR must point at tests/fixtures"
#endif

namespace fs = std::filesystem;
using namespace aadcurve;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

const std::vector<double> kTargets{60.0, 30.0, 20.0, 10.0, 5.0, 1.0};

SyntheticScenario base_scenario(std::uint64_t seed) {
  SyntheticScenario scn;
  scn.rho_att = 0.20;
  scn.rho_unatt = 0.05;
  scn.fs_hz = 20.0;
  scn.duration_s = 1.0e9;  // streamed windows; no signal is materialized
  scn.seed = seed;
  return scn;
}

// Monte Carlo reference curve shared by criteria 3-5: 1e5 fresh oracle
// windows per target, scenario seed pinned so the truth is one fixed curve.
GroundTruthCurve mc_truth() {
  return oracle_truth_curve(base_scenario(424242), kTargets, 100000);
}

// ---------------------------------------------------------------- criterion 1
// Analytic identities hold to stated tolerances, total runtime under 1 s.
Outcome criterion_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string what;
  const auto track = [&](const char* name, double err, double tol) {
    if (err > worst) {
      worst = err;
    }
    if (err > tol && what.empty()) {
      what = std::string(name) + " error " + fmt("%.3e", err);
    }
  };

  for (double z = -3.0; z <= 3.0 + 1e-9; z += 0.1) {
    track("fisher round trip", std::abs(fisher(fisher_inv(z)) - z), 1e-12);
  }
  for (double t = -8.0; t <= 8.0 + 1e-9; t += 0.125) {
    track("cdf symmetry", std::abs(std_normal_cdf(t) + std_normal_cdf(-t) - 1.0),
          1e-12);
  }
  track("cdf anchor", std::abs(std_normal_cdf(0.0) - 0.5), 0.0);
  track("cdf golden",
        std::abs(std_normal_cdf(1.0) - 0.841344746068542949), 1e-12);
  for (double s : {1e-6, 0.004, 0.5, 40.0}) {
    track("chance anchor", std::abs(predict_accuracy(0.0, s) - 50.0), 1e-12);
  }
  for (double p : {1e-8, 0.025, 0.5, 0.975, 1.0 - 1e-8}) {
    track("quantile round trip", std::abs(std_normal_cdf(normal_quantile(p)) - p),
          1e-10);
  }

  DecisionVariableModel model;
  model.mu_diff = 0.21;
  model.sigma_sum_sq = 1.7e-4;
  model.rho_att = 0.2;
  model.rho_unatt = 0.05;
  model.n_baseline = 400;
  model.m_count = 90;
  model.fs_hz = 20.0;
  const auto identity = extrapolate(model, 20.0);
  track("extrapolation identity (mean)",
        std::abs(identity.mu_diff - model.mu_diff), 0.0);
  track("extrapolation identity (variance)",
        std::abs(identity.sigma_sum_sq - model.sigma_sum_sq), 0.0);
  for (std::int64_t n : {2, 101, 401, 1201}) {
    track("fisher-z variance law",
          std::abs(hotelling_moments(0.3, n).sigma_sq * double(n - 1) - 1.0),
          0.0);
  }

  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (!what.empty()) {
    return {false, what};
  }
  if (dt >= 1.0) {
    return {false, "took " + fmt("%.2f", dt) + " s (budget 1 s)"};
  }
  return {true, "worst identity error " + fmt("%.2e", worst)};
}

// ---------------------------------------------------------------- criterion 2
// Fisher-z moments of simulated windows match the analytic approximations:
// mean within 1e-3 absolute, variance within 5% relative, for rho in
// {0, 0.1, 0.3} x N in {101, 401, 1201}, 1e6 windows per cell.
Outcome criterion_moments() {
  const std::array<double, 3> rhos{0.0, 0.1, 0.3};
  const std::array<std::int64_t, 3> sizes{101, 401, 1201};
  const std::int64_t n_windows = 1000000;

  double worst_mean = 0.0, worst_var = 0.0;
  std::uint64_t seed = 90000;
  for (double rho : rhos) {
    for (std::int64_t n : sizes) {
      SyntheticScenario scn;
      scn.rho_att = rho;
      scn.rho_unatt = 0.0;
      scn.fs_hz = 20.0;
      scn.duration_s = 1.0e9;
      scn.seed = seed++;

      CompensatedSum sum, sum_sq;
      for_each_pair(scn, static_cast<double>(n) / 20.0, n_windows,
                    [&](const CorrelationPair& p) {
                      const double z = fisher(p.r_att);
                      sum.add(z);
                      sum_sq.add(z * z);
                    });
      const double count = static_cast<double>(n_windows);
      const double mean = sum.value() / count;
      const double var =
          (sum_sq.value() - count * mean * mean) / (count - 1.0);

      const auto hm = hotelling_moments(rho, n);
      const double mean_err = std::abs(mean - hm.mu);
      const double var_err = std::abs(var - hm.sigma_sq) / hm.sigma_sq;
      worst_mean = std::max(worst_mean, mean_err);
      worst_var = std::max(worst_var, var_err);
      std::fprintf(stderr,
                   "  rho %.1f N %5lld: mean err %.2e, var err %.2f%%\n", rho,
                   static_cast<long long>(n), mean_err, 100.0 * var_err);
    }
  }

  const bool pass = worst_mean <= 1e-3 && worst_var <= 0.05;
  const std::string detail = "max |mean - mu| " + fmt("%.2e", worst_mean) +
                             " (tol 1e-3), max var error " +
                             fmt("%.2f", 100.0 * worst_var) + "% (tol 5%)";
  return {pass, detail};
}

// ---------------------------------------------------------------- criterion 3
// Predictions from 30 min of 20 s windows land within 2.5 pp of the Monte
// Carlo truth at every target, averaged over 10 repetitions.
Outcome criterion_prediction() {
  const GroundTruthCurve truth = mc_truth();
  const int reps = 10;

  std::vector<double> err_sum(truth.points.size(), 0.0);
  for (int r = 0; r < reps; ++r) {
    const auto set = labeled_set(base_scenario(1000 + r), 20.0, 30.0);
    const auto model = estimate_model(set);
    for (std::size_t i = 0; i < truth.points.size(); ++i) {
      const auto ex = extrapolate(model, truth.points[i].window_s);
      const double acc = predict_accuracy(ex.mu_diff, ex.sigma_sum_sq);
      err_sum[i] += std::abs(acc - truth.points[i].accuracy_pct);
    }
  }

  double worst = 0.0;
  double worst_window = 0.0;
  for (std::size_t i = 0; i < err_sum.size(); ++i) {
    const double mean_err = err_sum[i] / reps;
    std::fprintf(stderr, "  %5.1f s: mean |err| %.2f pp\n",
                 truth.points[i].window_s, mean_err);
    if (mean_err > worst) {
      worst = mean_err;
      worst_window = truth.points[i].window_s;
    }
  }
  return {worst <= 2.5, "worst per-target mean error " + fmt("%.2f", worst) +
                            " pp at " + fmt("%.0f", worst_window) +
                            " s (tol 2.5 pp)"};
}

// ---------------------------------------------------------------- criterion 4
// 95% BCa intervals cover the Monte Carlo truth in at least 90% of the
// (replication x target) cells, over 200 replications.
Outcome criterion_coverage() {
  const GroundTruthCurve truth = mc_truth();
  const int reps = 200;

  std::int64_t covered = 0, total = 0;
  for (int r = 0; r < reps; ++r) {
    const auto set = labeled_set(base_scenario(20000 + r), 20.0, 30.0);
    CiConfig cfg;
    cfg.n_boot = 1000;
    cfg.level = 0.95;
    cfg.seed = 30000 + static_cast<std::uint64_t>(r);
    const auto curve = model_curve(set, kTargets, cfg);
    const auto rep = compare(curve, truth);
    for (const auto& row : rep.per_point) {
      covered += row.covered;
      ++total;
    }
  }
  const double coverage =
      100.0 * static_cast<double>(covered) / static_cast<double>(total);
  return {coverage >= 90.0, "coverage " + fmt("%.1f", coverage) + "% of " +
                                std::to_string(total) +
                                " cells (needs >= 90%)"};
}

// ---------------------------------------------------------------- criterion 5
// More estimation data helps: over minutes {2, 5, 10, 30, 60}, the MAE is
// weakly decreasing (0.5 pp allowance) and at most 5 pp with 2 minutes.
Outcome criterion_data_budget() {
  const GroundTruthCurve truth = mc_truth();
  const auto pool = labeled_set(base_scenario(777), 20.0, 60.0);  // 180 pairs
  CiConfig cfg;
  cfg.n_boot = 200;
  cfg.seed = 888;
  const std::vector<double> minutes{2.0, 5.0, 10.0, 30.0, 60.0};

  const auto reports =
      subsample_experiment(pool, minutes, 10, kTargets, truth, cfg, 999);

  std::string failure;
  for (std::size_t g = 0; g < reports.size(); ++g) {
    std::fprintf(stderr, "  %4.0f min: mae %.2f pp (sd %.2f)\n", minutes[g],
                 reports[g].mae_pp, reports[g].std_err_pp);
    if (g > 0 && reports[g].mae_pp > reports[g - 1].mae_pp + 0.5 &&
        failure.empty()) {
      failure = "mae rises " + fmt("%.2f", reports[g - 1].mae_pp) + " -> " +
                fmt("%.2f", reports[g].mae_pp) + " pp at " +
                fmt("%.0f", minutes[g]) + " min";
    }
  }
  if (reports.front().mae_pp > 5.0 && failure.empty()) {
    failure = "mae " + fmt("%.2f", reports.front().mae_pp) +
              " pp at 2 min (tol 5 pp)";
  }
  if (!failure.empty()) {
    return {false, failure};
  }
  return {true, "mae " + fmt("%.2f", reports.front().mae_pp) + " pp at 2 min" +
                    " down to " + fmt("%.2f", reports.back().mae_pp) +
                    " pp at 60 min"};
}

// ---------------------------------------------------------------- criterion 6
// Estimating at any baseline window: across 20 replications of six pools,
// the mean error at the model's own baseline target stays at or below the
// mean error at the farthest target (largest |log window ratio|).
Outcome criterion_baselines() {
  const int reps = 20;
  const std::vector<double>& grid = kTargets;

  double own_sum = 0.0, far_sum = 0.0;
  std::int64_t cells = 0;
  for (int k = 0; k < reps; ++k) {
    std::vector<LabeledCorrelationSet> pools;
    pools.reserve(grid.size());
    const auto scn = base_scenario(5050 + k);
    for (double w : grid) {
      pools.push_back(labeled_set(scn, w, 120.0));
    }
    CiConfig cfg;
    cfg.n_boot = 100;
    cfg.seed = 6060 + static_cast<std::uint64_t>(k);
    const auto reports = baseline_sweep(pools, grid, grid, cfg);

    for (std::size_t b = 0; b < reports.size(); ++b) {
      const double baseline = grid[b];
      double farthest = baseline;
      double far_dist = -1.0;
      for (double t : grid) {
        const double dist = std::abs(std::log(t / baseline));
        if (dist > far_dist) {
          far_dist = dist;
          farthest = t;
        }
      }
      for (const auto& row : reports[b].per_point) {
        if (row.window_s == baseline) {
          own_sum += row.abs_err_pp;
        }
        if (row.window_s == farthest) {
          far_sum += row.abs_err_pp;
        }
      }
      ++cells;
    }
  }
  const double own = own_sum / static_cast<double>(cells);
  const double far = far_sum / static_cast<double>(cells);
  std::fprintf(stderr,
               "  mean at-baseline error %.3f pp, farthest-target %.3f pp "
               "(%lld baseline cells)\n",
               own, far, static_cast<long long>(cells));
  return {own <= far, "at-baseline error " + fmt("%.2f", own) +
                          " pp vs farthest-target " + fmt("%.2f", far) +
                          " pp over " + std::to_string(reps) +
                          " replications"};
}

// ---------------------------------------------------------------- criterion 7
// The CLI pipeline is byte-reproducible and matches the committed golden
// files.
int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string quoted(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    q += (c == '\'') ? std::string("'\\''") : std::string(1, c);
  }
  q += "'";
  return q;
}

bool slurp(const fs::path& p, std::string& out) {
  std::ifstream in(p, std::ios::binary);
  if (!in.good()) {
    return false;
  }
  out.assign(std::istreambuf_iterator<char>(in),
             std::istreambuf_iterator<char>());
  return true;
}

Outcome criterion_reproducibility() {
  const std::string cli = AADCURVE_CLI_PATH;
  const fs::path fixtures = AADCURVE_FIXTURES_DIR;
  const std::array<const char*, 3> steps{
      "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 --window-s 20 "
      "--minutes 6 --seed 4242 --out golden_pairs.csv",
      "predict --in golden_pairs.csv --out golden_curve.csv "
      "--targets 60,30,20,10,5,1 --n-boot 300 --ci 0.95 --seed 7",
      "plot --in golden_curve.csv --out golden_plot.svg --title 'demo curve'"};
  const std::array<const char*, 5> artifacts{
      "golden_pairs.csv", "golden_pairs.meta.json", "golden_curve.csv",
      "golden_curve.report.json", "golden_plot.svg"};

  std::array<fs::path, 2> dirs;
  for (int i = 0; i < 2; ++i) {
    dirs[i] = fs::temp_directory_path() /
              ("aadcurve_accept7_" + std::to_string(i));
    fs::remove_all(dirs[i]);
    fs::create_directories(dirs[i]);
    for (const char* step : steps) {
      const std::string cmd = "cd " + quoted(dirs[i].string()) + " && " +
                              quoted(cli) + " " + step + " >/dev/null 2>&1";
      if (shell(cmd) != 0) {
        return {false, std::string("pipeline step failed: ") + step};
      }
    }
  }

  std::string failure;
  for (const char* name : artifacts) {
    std::string a, b, golden;
    if (!slurp(dirs[0] / name, a) || !slurp(dirs[1] / name, b)) {
      failure = std::string(name) + " missing from a pipeline run";
      break;
    }
    if (a != b) {
      failure = std::string(name) + " differs between identical runs";
      break;
    }
    if (!slurp(fixtures / name, golden)) {
      failure = std::string(name) + " has no committed golden copy";
      break;
    }
    if (a != golden) {
      failure = std::string(name) + " deviates from the golden file";
      break;
    }
  }
  for (const auto& dir : dirs) {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  if (!failure.empty()) {
    return {false, failure};
  }
  return {true, std::to_string(artifacts.size()) +
                    " artifacts byte-identical across runs and goldens"};
}

// ---------------------------------------------------------------- criterion 8
// A full curve (180 pairs, 6 targets, 1000 resamples) fits in under 2 s.
Outcome criterion_runtime() {
  const auto set = labeled_set(base_scenario(31337), 20.0, 60.0);  // 180 pairs
  CiConfig cfg;
  cfg.n_boot = 1000;
  cfg.level = 0.95;
  cfg.seed = 1;

  const auto t0 = std::chrono::steady_clock::now();
  const auto curve = model_curve(set, kTargets, cfg);
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const bool shaped = curve.points.size() == kTargets.size();
  if (!shaped) {
    return {false, "curve came back with the wrong number of points"};
  }
  return {dt < 2.0, "model_curve took " + fmt("%.3f", dt) + " s (budget 2 s)"};
}

// -----------------------------------------------------------------------

struct Criterion {
  const char* name;
  Outcome (*run)();
};

constexpr std::array<Criterion, 8> kCriteria{{
    {"analytic identities", criterion_identities},
    {"moment fidelity", criterion_moments},
    {"curve prediction", criterion_prediction},
    {"ci coverage", criterion_coverage},
    {"data budget", criterion_data_budget},
    {"baseline robustness", criterion_baselines},
    {"reproducibility", criterion_reproducibility},
    {"runtime budget", criterion_runtime},
}};

int run_one(int number) {
  const auto& criterion = kCriteria[static_cast<std::size_t>(number - 1)];
  const auto t0 = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = criterion.run();
  } catch (const std::exception& e) {
    outcome = {false, std::string("unexpected error: ") + e.what()};
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("criterion %d (%s): %s — %s (%.1f s)\n", number, criterion.name,
              outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), dt);
  std::fflush(stdout);
  return outcome.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    const int number = std::atoi(argv[1]);
    if (number < 1 || number > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "usage: %s [1..%zu]\n", argv[0], kCriteria.size());
      return 2;
    }
    return run_one(number);
  }
  int rc = 0;
  for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) {
    rc |= run_one(n);
  }
  return rc;
}
