// Python bindings for the curve-prediction core. The module mirrors the C++
// API one-to-one: plain data types become classes with the same field names,
// operations keep their signatures, and every library Error surfaces as the
// aadcurve.Error exception with the kind prefixed to the message.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "aadcurve/bootstrap.hpp"
#include "aadcurve/core_stats.hpp"
#include "aadcurve/curve_model.hpp"
#include "aadcurve/errors.hpp"
#include "aadcurve/evaluation.hpp"
#include "aadcurve/synthetic.hpp"

namespace py = pybind11;
using namespace aadcurve;

namespace {

std::string fmt_pair(const CorrelationPair& p) {
  std::ostringstream out;
  out << "CorrelationPair(r_att=" << p.r_att << ", r_unatt=" << p.r_unatt
      << ")";
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Accuracy-versus-window-length prediction for correlation-based "
      "auditory attention decoding: moment estimation at one window length, "
      "extrapolation across lengths, BCa bootstrap intervals, synthetic "
      "scenarios and evaluation utilities.";

  py::register_exception<Error>(m, "Error");

  // ---------------------------------------------------------------- scalars
  m.def("fisher", &fisher, py::arg("r"), py::arg("clamp") = true,
        "Fisher transformation artanh(r); r = +/-1 is nudged one ulp inward "
        "when clamp is true and rejected otherwise.");
  m.def("fisher_inv", &fisher_inv, py::arg("z"),
        "Inverse Fisher transformation tanh(z).");
  m.def("clamp_correlation", &clamp_correlation, py::arg("r"),
        "Clamp a correlation to [-1, 1] (rounding noise only).");
  m.def("std_normal_cdf", &std_normal_cdf, py::arg("t"),
        "Standard normal CDF Phi(t).");
  m.def("normal_quantile", &normal_quantile, py::arg("p"),
        "Inverse standard normal CDF; requires 0 < p < 1.");
  m.def(
      "pearson",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return pearson(std::span<const double>(x),
                       std::span<const double>(y));
      },
      py::arg("x"), py::arg("y"),
      "Sample Pearson correlation of two equal-length sequences (at least "
      "two samples, non-degenerate).");
  m.def("window_samples", &window_samples, py::arg("window_s"),
        py::arg("fs_hz"),
        "Samples per decision window: round(window_s * fs_hz), at least 2.");
  m.def("predict_accuracy", &predict_accuracy, py::arg("mu_diff"),
        py::arg("sigma_sum_sq"),
        "Expected percentage of correct decisions, 100 * Phi(mu / sigma).");

  py::class_<HotellingMoments>(m, "HotellingMoments",
                               "First-order moments of the Fisher-z "
                               "correlation estimate.")
      .def_readonly("mu", &HotellingMoments::mu)
      .def_readonly("sigma_sq", &HotellingMoments::sigma_sq)
      .def("__repr__", [](const HotellingMoments& h) {
        std::ostringstream out;
        out << "HotellingMoments(mu=" << h.mu << ", sigma_sq=" << h.sigma_sq
            << ")";
        return out.str();
      });
  m.def("hotelling_moments", &hotelling_moments, py::arg("rho"), py::arg("n"),
        "Approximate mean artanh(rho) + rho / (2 (n - 1)) and variance "
        "1 / (n - 1) of the Fisher-z estimate from n samples.");

  // ------------------------------------------------------------------ model
  py::class_<CorrelationPair>(m, "CorrelationPair",
                              "Attended/unattended correlation of one "
                              "decision window.")
      .def(py::init<double, double>(), py::arg("r_att"), py::arg("r_unatt"))
      .def(py::init([](const std::pair<double, double>& p) {
             return CorrelationPair{p.first, p.second};
           }),
           py::arg("pair"))
      .def_readwrite("r_att", &CorrelationPair::r_att)
      .def_readwrite("r_unatt", &CorrelationPair::r_unatt)
      .def("__repr__", &fmt_pair);
  py::implicitly_convertible<py::tuple, CorrelationPair>();

  py::class_<LabeledCorrelationSet>(m, "LabeledCorrelationSet",
                                    "Labeled correlation pairs observed at "
                                    "a single decision-window length.")
      .def(py::init([](std::vector<CorrelationPair> pairs, double window_s,
                       double fs_hz) {
             LabeledCorrelationSet set;
             set.pairs = std::move(pairs);
             set.window_s = window_s;
             set.fs_hz = fs_hz;
             return set;
           }),
           py::arg("pairs"), py::arg("window_s"), py::arg("fs_hz"))
      .def_readwrite("pairs", &LabeledCorrelationSet::pairs)
      .def_readwrite("window_s", &LabeledCorrelationSet::window_s)
      .def_readwrite("fs_hz", &LabeledCorrelationSet::fs_hz)
      .def("samples_per_window", &LabeledCorrelationSet::samples_per_window)
      .def("validate", &LabeledCorrelationSet::validate)
      .def("__len__",
           [](const LabeledCorrelationSet& s) { return s.pairs.size(); });

  py::class_<DecisionVariableModel>(m, "DecisionVariableModel",
                                    "Moments of the decision variable "
                                    "z(r_att) - z(r_unatt) at the baseline "
                                    "window length.")
      .def_readonly("mu_diff", &DecisionVariableModel::mu_diff)
      .def_readonly("sigma_sum_sq", &DecisionVariableModel::sigma_sum_sq)
      .def_readonly("rho_att", &DecisionVariableModel::rho_att)
      .def_readonly("rho_unatt", &DecisionVariableModel::rho_unatt)
      .def_readonly("n_baseline", &DecisionVariableModel::n_baseline)
      .def_readonly("m_count", &DecisionVariableModel::m_count)
      .def_readonly("fs_hz", &DecisionVariableModel::fs_hz)
      .def("__repr__", [](const DecisionVariableModel& d) {
        std::ostringstream out;
        out << "DecisionVariableModel(mu_diff=" << d.mu_diff
            << ", sigma_sum_sq=" << d.sigma_sum_sq << ", m_count=" << d.m_count
            << ")";
        return out.str();
      });

  py::class_<Extrapolation>(m, "Extrapolation",
                            "Decision-variable moments carried to another "
                            "window length.")
      .def_readonly("mu_diff", &Extrapolation::mu_diff)
      .def_readonly("sigma_sum_sq", &Extrapolation::sigma_sum_sq)
      .def_readonly("n_target", &Extrapolation::n_target);

  m.def("estimate_model", &estimate_model, py::arg("set"),
        "Fit the decision-variable moments from labeled pairs at one window "
        "length (needs at least two pairs).");
  m.def("extrapolate", &extrapolate, py::arg("model"),
        py::arg("target_window_s"),
        "Carry the baseline moments to a target window length (seconds).");

  // -------------------------------------------------------------- intervals
  py::class_<CiConfig>(m, "CiConfig", "Bootstrap configuration.")
      .def(py::init([](int n_boot, double level, std::uint64_t seed) {
             CiConfig cfg;
             cfg.n_boot = n_boot;
             cfg.level = level;
             cfg.seed = seed;
             return cfg;
           }),
           py::arg("n_boot") = 1000, py::arg("level") = 0.95,
           py::arg("seed") = 0)
      .def_readwrite("n_boot", &CiConfig::n_boot)
      .def_readwrite("level", &CiConfig::level)
      .def_readwrite("seed", &CiConfig::seed)
      .def("validate", &CiConfig::validate);

  py::class_<CiResult>(m, "CiResult", "One BCa interval with diagnostics.")
      .def_readonly("low_pct", &CiResult::low_pct)
      .def_readonly("high_pct", &CiResult::high_pct)
      .def_readonly("point_pct", &CiResult::point_pct)
      .def_readonly("n_boot_effective", &CiResult::n_boot_effective)
      .def_readonly("percentile_fallback", &CiResult::percentile_fallback)
      .def_readonly("bracket_expanded", &CiResult::bracket_expanded)
      .def("__repr__", [](const CiResult& r) {
        std::ostringstream out;
        out << "CiResult(point_pct=" << r.point_pct << ", low_pct=" << r.low_pct
            << ", high_pct=" << r.high_pct << ")";
        return out.str();
      });

  m.def("bca_interval", &bca_interval, py::arg("set"), py::arg("target_s"),
        py::arg("cfg"),
        "BCa interval for the predicted accuracy at one target window "
        "length.");
  m.def("bca_intervals", &bca_intervals, py::arg("set"), py::arg("targets_s"),
        py::arg("cfg"),
        "One interval per target from a single bootstrap pass; identical to "
        "calling bca_interval per target.");

  // ------------------------------------------------------------------ curve
  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("window_s", &CurvePoint::window_s)
      .def_readonly("accuracy_pct", &CurvePoint::accuracy_pct)
      .def_readonly("ci_low_pct", &CurvePoint::ci_low_pct)
      .def_readonly("ci_high_pct", &CurvePoint::ci_high_pct)
      .def("__repr__", [](const CurvePoint& p) {
        std::ostringstream out;
        out << "CurvePoint(window_s=" << p.window_s
            << ", accuracy_pct=" << p.accuracy_pct << ", ci=["
            << p.ci_low_pct << ", " << p.ci_high_pct << "])";
        return out.str();
      });

  py::class_<PerformanceCurve>(m, "PerformanceCurve",
                               "Predicted accuracy across window lengths, "
                               "longest window first.")
      .def_readonly("points", &PerformanceCurve::points)
      .def_readonly("baseline_window_s", &PerformanceCurve::baseline_window_s)
      .def_readonly("fs_hz", &PerformanceCurve::fs_hz)
      .def_readonly("bootstrap_samples", &PerformanceCurve::bootstrap_samples)
      .def_readonly("ci_level", &PerformanceCurve::ci_level)
      .def("__len__",
           [](const PerformanceCurve& c) { return c.points.size(); });

  m.def("model_curve", &model_curve, py::arg("set"), py::arg("targets_s"),
        py::arg("cfg"),
        "Predict accuracy with BCa intervals at each target window length.");

  // -------------------------------------------------------------- synthetic
  py::enum_<GeneratorMode>(m, "GeneratorMode")
      .value("SignalLevel", GeneratorMode::SignalLevel)
      .value("CorrelationLevel", GeneratorMode::CorrelationLevel);

  py::class_<SyntheticScenario>(m, "SyntheticScenario",
                                "Ground-truth generator with known "
                                "population correlations.")
      .def(py::init([](double rho_att, double rho_unatt, double fs_hz,
                       double duration_s, std::uint64_t seed,
                       GeneratorMode mode) {
             SyntheticScenario scn;
             scn.rho_att = rho_att;
             scn.rho_unatt = rho_unatt;
             scn.fs_hz = fs_hz;
             scn.duration_s = duration_s;
             scn.seed = seed;
             scn.mode = mode;
             return scn;
           }),
           py::arg("rho_att"), py::arg("rho_unatt"), py::arg("fs_hz"),
           py::arg("duration_s"), py::arg("seed") = 0,
           py::arg("mode") = GeneratorMode::SignalLevel)
      .def_readwrite("rho_att", &SyntheticScenario::rho_att)
      .def_readwrite("rho_unatt", &SyntheticScenario::rho_unatt)
      .def_readwrite("fs_hz", &SyntheticScenario::fs_hz)
      .def_readwrite("duration_s", &SyntheticScenario::duration_s)
      .def_readwrite("seed", &SyntheticScenario::seed)
      .def_readwrite("mode", &SyntheticScenario::mode)
      .def("validate", &SyntheticScenario::validate);

  m.def("oracle_pairs", &oracle_pairs, py::arg("scn"), py::arg("window_s"),
        py::arg("count"),
        "First `count` correlation pairs from the scenario's oracle stream.");
  m.def("empirical_accuracy", &empirical_accuracy, py::arg("scn"),
        py::arg("window_s"), py::arg("n_windows"),
        "Monte Carlo decision accuracy over n_windows fresh windows.");
  m.def("labeled_set", &labeled_set, py::arg("scn"), py::arg("window_s"),
        py::arg("minutes"),
        "floor(60 * minutes / window_s) labeled pairs from an estimation "
        "stream disjoint from the oracle stream.");

  // ------------------------------------------------------------- evaluation
  py::class_<GroundTruthPoint>(m, "GroundTruthPoint")
      .def_readonly("window_s", &GroundTruthPoint::window_s)
      .def_readonly("accuracy_pct", &GroundTruthPoint::accuracy_pct)
      .def_readonly("n_decisions", &GroundTruthPoint::n_decisions);

  py::class_<GroundTruthCurve>(m, "GroundTruthCurve")
      .def_readonly("points", &GroundTruthCurve::points)
      .def("__len__",
           [](const GroundTruthCurve& c) { return c.points.size(); });

  m.def("ground_truth_curve", &ground_truth_curve, py::arg("sets"),
        "Decision-counting ground truth: percentage of pairs with "
        "r_att > r_unatt per set, sorted by descending window length.");
  m.def("oracle_truth_curve", &oracle_truth_curve, py::arg("scn"),
        py::arg("targets_s"), py::arg("n_windows"),
        "Monte Carlo ground truth at each target window length.");

  py::class_<PointReport>(m, "PointReport")
      .def_readonly("window_s", &PointReport::window_s)
      .def_readonly("true_pct", &PointReport::true_pct)
      .def_readonly("pred_pct", &PointReport::pred_pct)
      .def_readonly("abs_err_pp", &PointReport::abs_err_pp)
      .def_readonly("ci_low", &PointReport::ci_low)
      .def_readonly("ci_high", &PointReport::ci_high)
      .def_readonly("covered", &PointReport::covered);

  py::class_<EvaluationReport>(m, "EvaluationReport")
      .def_readonly("per_point", &EvaluationReport::per_point)
      .def_readonly("mae_pp", &EvaluationReport::mae_pp)
      .def_readonly("std_err_pp", &EvaluationReport::std_err_pp)
      .def_readonly("coverage_pct", &EvaluationReport::coverage_pct)
      .def_readonly("n_repetitions", &EvaluationReport::n_repetitions)
      .def_readonly("baseline_window_s", &EvaluationReport::baseline_window_s)
      .def_readonly("estimation_minutes",
                    &EvaluationReport::estimation_minutes);

  m.def("compare", &compare, py::arg("pred"), py::arg("truth"),
        "Pointwise comparison of a predicted curve against ground truth "
        "(shared window grid required).");
  m.def("subsample_experiment", &subsample_experiment, py::arg("pool"),
        py::arg("minutes_grid"), py::arg("n_repetitions"),
        py::arg("targets_s"), py::arg("truth"), py::arg("cfg"),
        py::arg("subsample_seed"),
        "Prediction error as a function of the amount of estimation data.");
  m.def("baseline_sweep", &baseline_sweep, py::arg("pools"),
        py::arg("baselines_s"), py::arg("targets_s"), py::arg("cfg"),
        "Prediction quality as a function of the baseline window length.");
  m.def("mean_curve", &mean_curve, py::arg("curves"),
        "Unweighted pointwise mean of curves sharing one window grid.");
}
