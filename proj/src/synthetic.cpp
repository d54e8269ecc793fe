#include "aadcurve/synthetic.hpp"

#include <cmath>
#include <string>

#include "aadcurve/core_stats.hpp"
#include "aadcurve/rng.hpp"

namespace aadcurve {

namespace {

double noise_scale_for(const SyntheticScenario& scn) {
  return std::sqrt(1.0 - scn.rho_att * scn.rho_att -
                   scn.rho_unatt * scn.rho_unatt);
}

// Streams correlation pairs for consecutive window indices. Window k of
// size N draws from the stream (seed, family, N, k), so any window is
// reproducible in isolation and windows are mutually independent.
class PairSource {
 public:
  PairSource(const SyntheticScenario& scn, std::int64_t n,
             std::uint64_t family)
      : scn_(scn), n_(n), family_(family) {
    if (scn.mode == GeneratorMode::SignalLevel) {
      decoded_.resize(static_cast<std::size_t>(n));
      attended_.resize(static_cast<std::size_t>(n));
      unattended_.resize(static_cast<std::size_t>(n));
      noise_scale_ = noise_scale_for(scn);
    } else {
      const HotellingMoments att = hotelling_moments(scn.rho_att, n);
      const HotellingMoments unatt = hotelling_moments(scn.rho_unatt, n);
      mu_att_ = att.mu;
      mu_unatt_ = unatt.mu;
      sigma_ = std::sqrt(att.sigma_sq);
    }
  }

  CorrelationPair pair(std::int64_t k) {
    Rng rng = window_rng(k);
    if (scn_.mode == GeneratorMode::CorrelationLevel) {
      const double z_att = mu_att_ + sigma_ * rng.gaussian();
      const double z_unatt = mu_unatt_ + sigma_ * rng.gaussian();
      return {fisher_inv(z_att), fisher_inv(z_unatt)};
    }
    fill_signals(rng);
    return {pearson(decoded_, attended_), pearson(decoded_, unattended_)};
  }

  // SignalLevel realization of window k regardless of mode.
  WindowTriple triple(std::int64_t k) {
    Rng rng = window_rng(k);
    if (decoded_.empty()) {
      decoded_.resize(static_cast<std::size_t>(n_));
      attended_.resize(static_cast<std::size_t>(n_));
      unattended_.resize(static_cast<std::size_t>(n_));
      noise_scale_ = noise_scale_for(scn_);
    }
    fill_signals(rng);
    return {decoded_, attended_, unattended_};
  }

 private:
  Rng window_rng(std::int64_t k) const {
    return Rng::stream(scn_.seed, {family_, static_cast<std::uint64_t>(n_),
                                   static_cast<std::uint64_t>(k)});
  }

  void fill_signals(Rng& rng) {
    for (std::size_t i = 0; i < decoded_.size(); ++i) {
      const double att = rng.gaussian();
      const double unatt = rng.gaussian();
      const double noise = rng.gaussian();
      attended_[i] = att;
      unattended_[i] = unatt;
      decoded_[i] =
          scn_.rho_att * att + scn_.rho_unatt * unatt + noise_scale_ * noise;
    }
  }

  const SyntheticScenario& scn_;
  std::int64_t n_;
  std::uint64_t family_;
  std::vector<double> decoded_, attended_, unattended_;
  double noise_scale_ = 0.0;
  double mu_att_ = 0.0, mu_unatt_ = 0.0, sigma_ = 0.0;
};

}  // namespace

void SyntheticScenario::validate() const {
  if (!std::isfinite(rho_att) || !std::isfinite(rho_unatt) ||
      !std::isfinite(fs_hz) || !std::isfinite(duration_s)) {
    raise(ErrorKind::OutOfDomain, "scenario fields must be finite");
  }
  if (!(fs_hz > 0.0)) {
    raise(ErrorKind::OutOfDomain, "sampling rate must be positive");
  }
  if (!(duration_s > 0.0)) {
    raise(ErrorKind::OutOfDomain, "scenario duration must be positive");
  }
  if (rho_att * rho_att + rho_unatt * rho_unatt >= 1.0) {
    raise(ErrorKind::NormConstraint,
          "rho_att^2 + rho_unatt^2 must stay below 1 so the mixture noise "
          "variance is positive");
  }
}

std::vector<WindowTriple> generate_windows(const SyntheticScenario& scn,
                                           double window_s) {
  scn.validate();
  const std::int64_t n = window_samples(window_s, scn.fs_hz);
  if (window_s > scn.duration_s) {
    raise(ErrorKind::InvalidWindow,
          "window length exceeds the scenario duration");
  }
  const auto count =
      static_cast<std::int64_t>(std::floor(scn.duration_s / window_s));

  PairSource source(scn, n, stream_family::kOracleWindow);
  std::vector<WindowTriple> windows;
  windows.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    windows.push_back(source.triple(k));
  }
  return windows;
}

void for_each_pair(const SyntheticScenario& scn, double window_s,
                   std::int64_t count,
                   const std::function<void(const CorrelationPair&)>& fn) {
  scn.validate();
  const std::int64_t n = window_samples(window_s, scn.fs_hz);
  PairSource source(scn, n, stream_family::kOracleWindow);
  for (std::int64_t k = 0; k < count; ++k) {
    fn(source.pair(k));
  }
}

std::vector<CorrelationPair> oracle_pairs(const SyntheticScenario& scn,
                                          double window_s,
                                          std::int64_t count) {
  std::vector<CorrelationPair> pairs;
  pairs.reserve(count > 0 ? static_cast<std::size_t>(count) : 0);
  for_each_pair(scn, window_s, count,
                [&](const CorrelationPair& p) { pairs.push_back(p); });
  return pairs;
}

double empirical_accuracy(const SyntheticScenario& scn, double window_s,
                          std::int64_t n_windows) {
  if (n_windows < 1) {
    raise(ErrorKind::OutOfDomain, "empirical accuracy needs n_windows >= 1");
  }
  std::int64_t correct = 0;
  for_each_pair(scn, window_s, n_windows, [&](const CorrelationPair& p) {
    correct += p.r_att > p.r_unatt;  // a tie scores as incorrect
  });
  return 100.0 * static_cast<double>(correct) /
         static_cast<double>(n_windows);
}

LabeledCorrelationSet labeled_set(const SyntheticScenario& scn,
                                  double window_s, double minutes) {
  scn.validate();
  const std::int64_t n = window_samples(window_s, scn.fs_hz);
  if (!std::isfinite(minutes)) {
    raise(ErrorKind::OutOfDomain, "minutes must be finite");
  }
  const double raw_count = std::floor(60.0 * minutes / window_s);
  if (!(raw_count >= 2.0)) {
    raise(ErrorKind::TooFewSamples,
          std::to_string(minutes) + " min of data at " +
              std::to_string(window_s) +
              " s windows yields fewer than two pairs");
  }
  const auto count = static_cast<std::int64_t>(raw_count);

  PairSource source(scn, n, stream_family::kEstimationWindow);
  LabeledCorrelationSet set;
  set.window_s = window_s;
  set.fs_hz = scn.fs_hz;
  set.pairs.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    set.pairs.push_back(source.pair(k));
  }
  return set;
}

}  // namespace aadcurve
