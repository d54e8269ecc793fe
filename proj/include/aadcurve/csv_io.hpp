// CSV and sidecar-JSON input/output for correlation pairs and curves.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aadcurve/curve_model.hpp"
#include "aadcurve/evaluation.hpp"

namespace aadcurve {

// Shortest decimal string that parses back to exactly the same value
// (std::to_chars round-trip form).
std::string format_double(double v);

// Metadata accompanying a pairs CSV. Missing fields may be supplied by
// CLI flags.
struct PairsMeta {
  std::optional<double> window_s;
  std::optional<double> fs_hz;
};

// Sidecar path for a pairs CSV: the extension is replaced by ".meta.json"
// ("pairs.csv" -> "pairs.meta.json").
std::string meta_path_for(const std::string& csv_path);

// Read the sidecar if present. Throws Error(ParseError) on malformed JSON
// or wrong value types; a missing file yields empty fields.
PairsMeta read_pairs_meta(const std::string& csv_path);

// Read correlation pairs from a CSV whose header starts with
// "r_att,r_unatt" (extra columns are ignored). Throws Error(ParseError) on
// a missing file, renamed header, short rows or non-numeric cells, naming
// the line and column; blank lines are skipped. window_s/fs_hz are left for
// the caller to fill from the sidecar or flags.
std::vector<CorrelationPair> read_pairs_csv(const std::string& path);

// Write pairs in the canonical format (header "r_att,r_unatt", LF endings).
void write_pairs_csv(const std::string& path,
                     const std::vector<CorrelationPair>& pairs);

// Write the sidecar for a pairs CSV; `extra_json` (when non-empty) must be
// a serialized JSON object whose members are merged in next to window_s and
// fs_hz.
void write_pairs_meta(const std::string& csv_path, double window_s,
                      double fs_hz, const std::string& extra_json = "");

// Performance-curve CSV with header
// "window_s,accuracy_pct,ci_low_pct,ci_high_pct". Reading fills only the
// points (file order preserved); curve metadata is not stored in the CSV.
void write_curve_csv(const std::string& path, const PerformanceCurve& curve);
PerformanceCurve read_curve_csv(const std::string& path);

// Ground-truth CSV with header "window_s,accuracy_pct,n_decisions"; the
// count column may be absent on read.
void write_truth_csv(const std::string& path, const GroundTruthCurve& truth);
GroundTruthCurve read_truth_csv(const std::string& path);

}  // namespace aadcurve
