// Synthetic listening scenarios with known attended/unattended correlation
// structure, plus the Monte Carlo ground-truth accuracy oracle.
//
// SignalLevel builds the decoded signal as a mixture of the attended
// envelope, the unattended envelope and independent noise so that the
// population correlations are exactly (rho_att, rho_unatt); windows are
// then scored with the sample Pearson correlation, reproducing the
// estimator's small-sample behaviour. CorrelationLevel skips the signal
// stage and draws Fisher-z values directly from their approximating normal
// law, which separates implementation errors from approximation error.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aadcurve/curve_model.hpp"
#include "aadcurve/errors.hpp"

namespace aadcurve {

enum class GeneratorMode {
  SignalLevel,
  CorrelationLevel,
};

struct SyntheticScenario {
  double rho_att = 0.0;
  double rho_unatt = 0.0;
  double fs_hz = 0.0;
  double duration_s = 0.0;  // total signal available for window extraction
  std::uint64_t seed = 0;
  GeneratorMode mode = GeneratorMode::SignalLevel;

  // Throws Error on non-finite fields, fs/duration <= 0, |rho| > 1 or
  // rho_att^2 + rho_unatt^2 >= 1 (the mixture noise variance must stay
  // positive).
  void validate() const;
};

// One decision window of raw signals; the decoded response is
//   x = rho_att * attended + rho_unatt * unattended + c * noise,
// c = sqrt(1 - rho_att^2 - rho_unatt^2), all inputs iid standard normal.
struct WindowTriple {
  std::vector<double> decoded;
  std::vector<double> attended;
  std::vector<double> unattended;
};

// Materialize the floor(duration_s / window_s) non-overlapping windows of
// the scenario as signal triples (the SignalLevel realization; mainly for
// inspection and tests — the pair-level operations below stream windows
// without storing them). Requires window_s <= duration_s.
std::vector<WindowTriple> generate_windows(const SyntheticScenario& scn,
                                           double window_s);

// Stream `count` correlation pairs at window length window_s from the
// scenario's oracle stream family, invoking fn for each. Honors the
// scenario mode: SignalLevel scores generated windows with pearson,
// CorrelationLevel samples the Fisher-z normal directly.
void for_each_pair(const SyntheticScenario& scn, double window_s,
                   std::int64_t count,
                   const std::function<void(const CorrelationPair&)>& fn);

// First `count` oracle-stream pairs, materialized.
std::vector<CorrelationPair> oracle_pairs(const SyntheticScenario& scn,
                                          double window_s,
                                          std::int64_t count);

// Monte Carlo accuracy at one window length: the percentage of n_windows
// fresh oracle windows with r_att > r_unatt. Ties count as incorrect.
double empirical_accuracy(const SyntheticScenario& scn, double window_s,
                          std::int64_t n_windows);

// Labeled pairs for model estimation: M = floor(60 * minutes / window_s)
// fresh windows, drawn from a stream family disjoint from the oracle one so
// estimation data stays independent of ground truth. Throws
// Error(TooFewSamples) when M < 2.
LabeledCorrelationSet labeled_set(const SyntheticScenario& scn,
                                  double window_s, double minutes);

}  // namespace aadcurve
