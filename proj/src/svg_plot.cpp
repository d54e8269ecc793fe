#include "aadcurve/svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

namespace aadcurve {

namespace {

constexpr double kYMin = 45.0;
constexpr double kYMax = 100.0;

std::string fixed2(double v) {
  char buffer[32];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), v,
                    std::chars_format::fixed, 2);
  return {buffer, ptr};
}

// Accuracy label rounded to 0.1 (presentation rounding happens only here).
std::string label1(double v) {
  char buffer[32];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), v,
                    std::chars_format::fixed, 1);
  return {buffer, ptr};
}

// Shortest round-trip form; window lengths print as "60" or "0.5".
std::string window_label(double v) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return {buffer, ptr};
}

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double left, right, top, bottom;  // pixel edges of the data area
  double w_min, w_max;
  bool log_x;

  double x(double window_s) const {
    double t = 0.5;
    if (w_max > w_min) {
      t = log_x ? (std::log(window_s) - std::log(w_min)) /
                      (std::log(w_max) - std::log(w_min))
                : (w_max - window_s) / (w_max - w_min);  // descending axis
    }
    return left + t * (right - left);
  }

  double y(double accuracy_pct) const {
    const double v = std::clamp(accuracy_pct, kYMin, kYMax);
    return top + (kYMax - v) / (kYMax - kYMin) * (bottom - top);
  }
};

template <typename Points>
std::string polyline_points(const Frame& f, const Points& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) {
      out += ' ';
    }
    out += fixed2(f.x(p.window_s)) + ',' + fixed2(f.y(p.accuracy_pct));
  }
  return out;
}

}  // namespace

std::string render_curve_svg(const PerformanceCurve& curve,
                             const std::optional<GroundTruthCurve>& truth,
                             const PlotOptions& opts) {
  if (curve.points.empty()) {
    raise(ErrorKind::EmptySet, "cannot plot an empty curve");
  }
  auto points = curve.points;
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.window_s > b.window_s; });

  std::vector<GroundTruthPoint> truth_points;
  if (truth && !truth->points.empty()) {
    truth_points = truth->points;
    std::sort(truth_points.begin(), truth_points.end(), [](const auto& a,
                                                           const auto& b) {
      return a.window_s > b.window_s;
    });
  }

  const double width = opts.width;
  const double height = opts.height;
  Frame f;
  f.left = 64.0;
  f.right = width - 18.0;
  f.top = opts.title.empty() ? 20.0 : 40.0;
  f.bottom = height - 48.0;
  f.log_x = opts.log_x;
  f.w_min = points.back().window_s;
  f.w_max = points.front().window_s;
  for (const auto& t : truth_points) {
    f.w_min = std::min(f.w_min, t.window_s);
    f.w_max = std::max(f.w_max, t.window_s);
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fixed2(width) + "\" height=\"" + fixed2(height) + "\" viewBox=\"0 0 " +
         fixed2(width) + " " + fixed2(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fixed2(width) + "\" height=\"" +
         fixed2(height) + "\" fill=\"#ffffff\"/>\n";
  if (!opts.title.empty()) {
    svg += "<text x=\"" + fixed2(width / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" +
           escape_text(opts.title) + "</text>\n";
  }

  // Horizontal gridlines with accuracy labels every 10 percent points.
  for (double v = 50.0; v <= kYMax + 1e-9; v += 10.0) {
    const std::string yy = fixed2(f.y(v));
    svg += "<line x1=\"" + fixed2(f.left) + "\" y1=\"" + yy + "\" x2=\"" +
           fixed2(f.right) + "\" y2=\"" + yy +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fixed2(f.left - 8.0) + "\" y=\"" +
           fixed2(f.y(v) + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           label1(v) + "</text>\n";
  }

  // Window-length ticks at every predicted point.
  for (const auto& p : points) {
    const std::string xx = fixed2(f.x(p.window_s));
    svg += "<line x1=\"" + xx + "\" y1=\"" + fixed2(f.bottom) + "\" x2=\"" +
           xx + "\" y2=\"" + fixed2(f.bottom + 5.0) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + xx + "\" y=\"" + fixed2(f.bottom + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           window_label(p.window_s) + "</text>\n";
  }

  // Confidence band: upper bounds left to right, lower bounds back.
  std::string band;
  for (const auto& p : points) {
    if (!band.empty()) {
      band += ' ';
    }
    band += fixed2(f.x(p.window_s)) + ',' + fixed2(f.y(p.ci_high_pct));
  }
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    band += ' ';
    band += fixed2(f.x(it->window_s)) + ',' + fixed2(f.y(it->ci_low_pct));
  }
  svg += "<polygon class=\"ci-band\" points=\"" + band +
         "\" fill=\"#9ecae1\" fill-opacity=\"0.45\"/>\n";

  // Chance level for the two-speaker decision.
  svg += "<line class=\"chance\" x1=\"" + fixed2(f.left) + "\" y1=\"" +
         fixed2(f.y(50.0)) + "\" x2=\"" + fixed2(f.right) + "\" y2=\"" +
         fixed2(f.y(50.0)) +
         "\" stroke=\"#888888\" stroke-width=\"1\" "
         "stroke-dasharray=\"5,4\"/>\n";

  if (!truth_points.empty()) {
    svg += "<polyline class=\"truth\" points=\"" +
           polyline_points(f, truth_points) +
           "\" fill=\"none\" stroke=\"#c23b22\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"6,3\"/>\n";
  }
  svg += "<polyline class=\"predicted\" points=\"" +
         polyline_points(f, points) +
         "\" fill=\"none\" stroke=\"#2267a8\" stroke-width=\"2\"/>\n";

  // Axes.
  svg += "<line x1=\"" + fixed2(f.left) + "\" y1=\"" + fixed2(f.top) +
         "\" x2=\"" + fixed2(f.left) + "\" y2=\"" + fixed2(f.bottom) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fixed2(f.left) + "\" y1=\"" + fixed2(f.bottom) +
         "\" x2=\"" + fixed2(f.right) + "\" y2=\"" + fixed2(f.bottom) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + fixed2((f.left + f.right) / 2.0) + "\" y=\"" +
         fixed2(height - 10.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">decision window length [s]</text>\n";
  svg += "<text x=\"14\" y=\"" + fixed2((f.top + f.bottom) / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 14 " +
         fixed2((f.top + f.bottom) / 2.0) +
         ")\">accuracy [%]</text>\n";

  svg += "</svg>\n";
  return svg;
}

}  // namespace aadcurve
