// Command-line front-end: predict accuracy curves from labeled correlation
// CSVs, simulate synthetic correlation data, evaluate predictions against
// decision-counting ground truth, and plot curves as SVG.
//
// Exit codes: 0 success, 2 input/validation error, 3 statistical error
// (zero variance / too few samples during prediction).
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aadcurve/bootstrap.hpp"
#include "aadcurve/csv_io.hpp"
#include "aadcurve/curve_model.hpp"
#include "aadcurve/errors.hpp"
#include "aadcurve/evaluation.hpp"
#include "aadcurve/svg_plot.hpp"
#include "aadcurve/synthetic.hpp"

namespace {

using aadcurve::Error;
using aadcurve::ErrorKind;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitBadInput = 2;
constexpr int kExitStatistical = 3;

struct PredictArgs {
  std::string input;
  std::string out;
  std::optional<double> window_s;
  std::optional<double> fs_hz;
  std::vector<double> targets{60, 30, 20, 10, 5, 1};
  int n_boot = 1000;
  double ci_level = 0.95;
  std::uint64_t seed = 0;
};

struct SimulateArgs {
  double rho_att = 0.0;
  double rho_unatt = 0.0;
  double fs_hz = 20.0;
  double window_s = 20.0;
  double minutes = 30.0;
  std::string mode = "signal";
  std::uint64_t seed = 0;
  std::string out;
};

struct EvaluateArgs {
  std::vector<std::string> pred;
  std::vector<std::string> truth;
  std::string aggregate = "per-set";
  std::string out;
  std::string truth_out;
  std::optional<double> window_s;
  std::optional<double> fs_hz;
};

struct PlotArgs {
  std::string input;
  std::string truth;
  std::string out;
  std::string title;
  bool linear_x = false;
};

std::string sibling_path(const std::string& path, const char* extension) {
  std::filesystem::path p(path);
  p.replace_extension(extension);
  return p.string();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    aadcurve::raise(ErrorKind::ParseError, "cannot write " + path);
  }
  out << content;
}

ordered_json curve_json(const aadcurve::PerformanceCurve& curve) {
  ordered_json points = ordered_json::array();
  for (const auto& p : curve.points) {
    points.push_back({{"window_s", p.window_s},
                      {"accuracy_pct", p.accuracy_pct},
                      {"ci_low_pct", p.ci_low_pct},
                      {"ci_high_pct", p.ci_high_pct}});
  }
  return {{"baseline_window_s", curve.baseline_window_s},
          {"fs_hz", curve.fs_hz},
          {"bootstrap_samples", curve.bootstrap_samples},
          {"ci_level", curve.ci_level},
          {"points", points}};
}

ordered_json report_json(const aadcurve::EvaluationReport& report,
                         const std::string& source) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.per_point) {
    rows.push_back({{"window_s", row.window_s},
                    {"true_pct", row.true_pct},
                    {"pred_pct", row.pred_pct},
                    {"abs_err_pp", row.abs_err_pp},
                    {"ci_low", row.ci_low},
                    {"ci_high", row.ci_high},
                    {"covered", row.covered}});
  }
  return {{"source", source},
          {"baseline_window_s", report.baseline_window_s},
          {"estimation_minutes", report.estimation_minutes},
          {"n_repetitions", report.n_repetitions},
          {"per_point", rows},
          {"mae_pp", report.mae_pp},
          {"std_err_pp", report.std_err_pp},
          {"coverage_pct", report.coverage_pct}};
}

int fail(const Error& e, int code) {
  std::cerr << "error: " << e.what() << '\n';
  return code;
}

int run_predict(const PredictArgs& args) {
  try {
    const auto pairs = aadcurve::read_pairs_csv(args.input);
    const auto meta = aadcurve::read_pairs_meta(args.input);

    aadcurve::LabeledCorrelationSet set;
    set.pairs = pairs;
    if (args.window_s) {
      set.window_s = *args.window_s;
    } else if (meta.window_s) {
      set.window_s = *meta.window_s;
    } else {
      aadcurve::raise(ErrorKind::ParseError,
                      "window length unknown: pass --window-s or provide " +
                          aadcurve::meta_path_for(args.input));
    }
    if (args.fs_hz) {
      set.fs_hz = *args.fs_hz;
    } else if (meta.fs_hz) {
      set.fs_hz = *meta.fs_hz;
    } else {
      aadcurve::raise(ErrorKind::ParseError,
                      "sampling rate unknown: pass --fs or provide " +
                          aadcurve::meta_path_for(args.input));
    }
    set.validate();

    std::vector<std::string> warnings;
    const double span_s =
        static_cast<double>(set.pairs.size()) * set.window_s;
    for (double target : args.targets) {
      if (target > span_s) {
        warnings.push_back("target " + aadcurve::format_double(target) +
                           " s exceeds the " +
                           aadcurve::format_double(span_s) +
                           " s of estimation data; the extrapolation is "
                           "purely analytic");
      }
    }

    aadcurve::CiConfig cfg;
    cfg.n_boot = args.n_boot;
    cfg.level = args.ci_level;
    cfg.seed = args.seed;

    const auto model = aadcurve::estimate_model(set);
    const auto curve = aadcurve::model_curve(set, args.targets, cfg);

    const std::string report_path = sibling_path(args.out, ".report.json");
    ordered_json report;
    report["config"] = {{"input", args.input},
                        {"window_s", set.window_s},
                        {"fs_hz", set.fs_hz},
                        {"targets", args.targets},
                        {"n_boot", cfg.n_boot},
                        {"ci_level", cfg.level},
                        {"seed", cfg.seed},
                        {"out", args.out}};
    report["model"] = {{"mu_diff", model.mu_diff},
                       {"sigma_sum_sq", model.sigma_sum_sq},
                       {"rho_att", model.rho_att},
                       {"rho_unatt", model.rho_unatt},
                       {"n_baseline", model.n_baseline},
                       {"m_count", model.m_count}};
    report["curve"] = curve_json(curve);
    report["warnings"] = warnings;

    aadcurve::write_curve_csv(args.out, curve);
    write_text_file(report_path, report.dump(2) + "\n");

    for (const auto& w : warnings) {
      std::cerr << "warning: " << w << '\n';
    }
    std::cout << "wrote " << args.out << " and " << report_path << '\n';
    return 0;
  } catch (const Error& e) {
    const bool statistical = e.kind() == ErrorKind::ZeroVariance ||
                             e.kind() == ErrorKind::TooFewSamples;
    return fail(e, statistical ? kExitStatistical : kExitBadInput);
  }
}

int run_simulate(const SimulateArgs& args) {
  try {
    aadcurve::SyntheticScenario scn;
    scn.rho_att = args.rho_att;
    scn.rho_unatt = args.rho_unatt;
    scn.fs_hz = args.fs_hz;
    scn.duration_s = 60.0 * args.minutes;
    scn.seed = args.seed;
    scn.mode = args.mode == "correlation" ? aadcurve::GeneratorMode::CorrelationLevel
                                          : aadcurve::GeneratorMode::SignalLevel;
    scn.validate();

    const auto set = aadcurve::labeled_set(scn, args.window_s, args.minutes);

    ordered_json scenario = {{"rho_att", scn.rho_att},
                             {"rho_unatt", scn.rho_unatt},
                             {"fs_hz", scn.fs_hz},
                             {"minutes", args.minutes},
                             {"seed", scn.seed},
                             {"mode", args.mode}};
    ordered_json extra = {{"scenario", scenario}};

    aadcurve::write_pairs_csv(args.out, set.pairs);
    aadcurve::write_pairs_meta(args.out, set.window_s, set.fs_hz,
                               extra.dump());
    std::cout << "wrote " << set.pairs.size() << " pairs to " << args.out
              << " (sidecar " << aadcurve::meta_path_for(args.out) << ")\n";
    return 0;
  } catch (const Error& e) {
    return fail(e, kExitBadInput);
  }
}

int run_evaluate(const EvaluateArgs& args) {
  try {
    std::vector<aadcurve::PerformanceCurve> curves;
    curves.reserve(args.pred.size());
    for (const auto& path : args.pred) {
      curves.push_back(aadcurve::read_curve_csv(path));
    }

    std::vector<aadcurve::LabeledCorrelationSet> truth_sets;
    truth_sets.reserve(args.truth.size());
    for (const auto& path : args.truth) {
      const auto meta = aadcurve::read_pairs_meta(path);
      aadcurve::LabeledCorrelationSet set;
      set.pairs = aadcurve::read_pairs_csv(path);
      if (meta.window_s) {
        set.window_s = *meta.window_s;
      } else if (args.window_s) {
        set.window_s = *args.window_s;
      } else {
        aadcurve::raise(ErrorKind::ParseError,
                        "window length unknown for " + path +
                            ": provide a sidecar or --window-s");
      }
      if (meta.fs_hz) {
        set.fs_hz = *meta.fs_hz;
      } else if (args.fs_hz) {
        set.fs_hz = *args.fs_hz;
      } else {
        aadcurve::raise(ErrorKind::ParseError,
                        "sampling rate unknown for " + path +
                            ": provide a sidecar or --fs");
      }
      truth_sets.push_back(std::move(set));
    }
    const auto truth = aadcurve::ground_truth_curve(truth_sets);

    ordered_json reports = ordered_json::array();
    if (args.aggregate == "mean") {
      const auto mean = aadcurve::mean_curve(curves);
      reports.push_back(report_json(aadcurve::compare(mean, truth), "mean"));
    } else {
      for (std::size_t i = 0; i < curves.size(); ++i) {
        reports.push_back(
            report_json(aadcurve::compare(curves[i], truth), args.pred[i]));
      }
    }

    ordered_json truth_points = ordered_json::array();
    for (const auto& p : truth.points) {
      truth_points.push_back({{"window_s", p.window_s},
                              {"accuracy_pct", p.accuracy_pct},
                              {"n_decisions", p.n_decisions}});
    }

    ordered_json doc;
    doc["config"] = {{"pred", args.pred},
                     {"truth", args.truth},
                     {"aggregate", args.aggregate},
                     {"out", args.out}};
    doc["truth"] = {{"points", truth_points}};
    doc["reports"] = reports;
    write_text_file(args.out, doc.dump(2) + "\n");

    if (!args.truth_out.empty()) {
      aadcurve::write_truth_csv(args.truth_out, truth);
    }

    for (const auto& r : reports) {
      std::cout << r["source"].get<std::string>() << ": mae "
                << r["mae_pp"].get<double>() << " pp, coverage "
                << r["coverage_pct"].get<double>() << "%\n";
    }
    std::cout << "wrote " << args.out << '\n';
    return 0;
  } catch (const Error& e) {
    return fail(e, kExitBadInput);
  }
}

int run_plot(const PlotArgs& args) {
  try {
    const auto curve = aadcurve::read_curve_csv(args.input);
    std::optional<aadcurve::GroundTruthCurve> truth;
    if (!args.truth.empty()) {
      truth = aadcurve::read_truth_csv(args.truth);
    }
    aadcurve::PlotOptions opts;
    opts.log_x = !args.linear_x;
    opts.title = args.title;
    write_text_file(args.out,
                    aadcurve::render_curve_svg(curve, truth, opts));
    std::cout << "wrote " << args.out << '\n';
    return 0;
  } catch (const Error& e) {
    return fail(e, kExitBadInput);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Performance-curve prediction for correlation-based auditory "
      "attention decoding"};
  app.require_subcommand(1);

  PredictArgs predict_args;
  auto* predict = app.add_subcommand(
      "predict",
      "Predict the accuracy-vs-window-length curve from labeled "
      "correlations at one window length");
  predict->add_option("--in", predict_args.input, "Correlation pairs CSV")
      ->required();
  predict->add_option("--out", predict_args.out, "Output curve CSV path")
      ->required();
  predict->add_option("--window-s", predict_args.window_s,
                      "Baseline window length in seconds (overrides sidecar)");
  predict->add_option("--fs", predict_args.fs_hz,
                      "Sampling rate in Hz (overrides sidecar)");
  predict
      ->add_option("--targets", predict_args.targets,
                   "Target window lengths in seconds")
      ->delimiter(',')
      ->capture_default_str();
  predict
      ->add_option("--n-boot", predict_args.n_boot,
                   "Bootstrap resamples for the confidence intervals")
      ->capture_default_str();
  predict
      ->add_option("--ci", predict_args.ci_level,
                   "Two-sided confidence level")
      ->capture_default_str();
  predict->add_option("--seed", predict_args.seed, "Bootstrap RNG seed")
      ->capture_default_str();

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand(
      "simulate",
      "Generate labeled correlation pairs from a synthetic scenario");
  simulate
      ->add_option("--rho-att", simulate_args.rho_att,
                   "Latent attended correlation")
      ->required();
  simulate
      ->add_option("--rho-unatt", simulate_args.rho_unatt,
                   "Latent unattended correlation")
      ->required();
  simulate->add_option("--fs", simulate_args.fs_hz, "Sampling rate in Hz")
      ->capture_default_str();
  simulate
      ->add_option("--window-s", simulate_args.window_s,
                   "Window length in seconds")
      ->capture_default_str();
  simulate
      ->add_option("--minutes", simulate_args.minutes,
                   "Minutes of data to generate")
      ->capture_default_str();
  simulate
      ->add_option("--mode", simulate_args.mode,
                   "Generator mode: windowed signals or direct correlations")
      ->check(CLI::IsMember({"signal", "correlation"}))
      ->capture_default_str();
  simulate->add_option("--seed", simulate_args.seed, "Scenario RNG seed")
      ->capture_default_str();
  simulate->add_option("--out", simulate_args.out, "Output pairs CSV path")
      ->required();

  EvaluateArgs evaluate_args;
  auto* evaluate = app.add_subcommand(
      "evaluate",
      "Compare predicted curves against decision-counting ground truth");
  evaluate
      ->add_option("--pred", evaluate_args.pred,
                   "Predicted curve CSV (repeatable)")
      ->required();
  evaluate
      ->add_option("--truth", evaluate_args.truth,
                   "Ground-truth correlation pairs CSV, one per window "
                   "length (repeatable)")
      ->required();
  evaluate
      ->add_option("--aggregate", evaluate_args.aggregate,
                   "Evaluate each curve or their pointwise mean")
      ->check(CLI::IsMember({"per-set", "mean"}))
      ->capture_default_str();
  evaluate->add_option("--out", evaluate_args.out, "Output report JSON path")
      ->required();
  evaluate->add_option("--truth-out", evaluate_args.truth_out,
                       "Also write the ground-truth curve CSV here");
  evaluate->add_option("--window-s", evaluate_args.window_s,
                       "Window length for truth files lacking a sidecar");
  evaluate->add_option("--fs", evaluate_args.fs_hz,
                       "Sampling rate for truth files lacking a sidecar");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Render a curve CSV as SVG");
  plot->add_option("--in", plot_args.input, "Curve CSV")->required();
  plot->add_option("--truth", plot_args.truth,
                   "Ground-truth curve CSV overlay");
  plot->add_option("--out", plot_args.out, "Output SVG path")->required();
  plot->add_option("--title", plot_args.title, "Plot title");
  plot->add_flag("--linear-x", plot_args.linear_x,
                 "Linear (descending) window axis instead of logarithmic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  if (*predict) {
    return run_predict(predict_args);
  }
  if (*simulate) {
    return run_simulate(simulate_args);
  }
  if (*evaluate) {
    return run_evaluate(evaluate_args);
  }
  return run_plot(plot_args);
}
