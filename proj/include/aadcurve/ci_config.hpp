// Bootstrap confidence-interval configuration and result types.
#pragma once

#include <cstdint>

#include "aadcurve/errors.hpp"

namespace aadcurve {

struct CiConfig {
  int n_boot = 1000;
  double level = 0.95;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_boot < 100) {
      raise(ErrorKind::OutOfDomain, "n_boot must be at least 100");
    }
    if (!(level > 0.5 && level < 1.0)) {
      raise(ErrorKind::OutOfDomain,
            "ci level must lie in (0.5, 1) for a two-sided interval");
    }
  }
};

struct CiResult {
  double low_pct = 0.0;
  double high_pct = 0.0;
  double point_pct = 0.0;
  int n_boot_effective = 0;
  // Jackknife spread was zero (or M < 3): acceleration set to 0 and the
  // interval reduces to the bias-corrected percentile form.
  bool percentile_fallback = false;
  // The adjusted interval failed to bracket the point estimate and was
  // minimally expanded to include it.
  bool bracket_expanded = false;
};

}  // namespace aadcurve
