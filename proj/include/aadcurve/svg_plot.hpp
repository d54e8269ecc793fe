// Self-contained SVG rendering of a performance curve: prediction line,
// confidence band, optional ground-truth overlay and the 50% chance line.
#pragma once

#include <optional>
#include <string>

#include "aadcurve/curve_model.hpp"
#include "aadcurve/evaluation.hpp"

namespace aadcurve {

struct PlotOptions {
  bool log_x = true;  // decision-window axis is naturally logarithmic
  int width = 720;
  int height = 440;
  std::string title;
};

// Render the curve to a standalone SVG document. The y axis spans
// [45, 100]% so the chance level stays visible; the CI band is a single
// polygon, curves are polylines. Throws Error(EmptySet) on an empty curve.
std::string render_curve_svg(const PerformanceCurve& curve,
                             const std::optional<GroundTruthCurve>& truth,
                             const PlotOptions& opts);

}  // namespace aadcurve
