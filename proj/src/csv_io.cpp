#include "aadcurve/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <string_view>
#include <system_error>

#include <json.hpp>

namespace aadcurve {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string location(const std::string& path, std::size_t line,
                     std::size_t column) {
  return path + ", line " + std::to_string(line) + ", column " +
         std::to_string(column);
}

// Splits a CSV line on commas; no quoting (the formats here never need it).
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_cell(std::string_view cell, const std::string& path,
                  std::size_t line, std::size_t column) {
  double value = 0.0;
  const auto* begin = cell.data();
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    raise(ErrorKind::ParseError,
          "not a number at " + location(path, line, column) + ": '" +
              std::string(cell) + "'");
  }
  return value;
}

std::string chomp(std::string line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return line;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorKind::ParseError, "cannot open " + path);
  }
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) {
    raise(ErrorKind::ParseError, "cannot write " + path);
  }
  return out;
}

// Reads a CSV whose header must start with the expected column names;
// yields one vector of doubles per data row (between min_cols and max_cols
// entries). Columns beyond max_cols are ignored, so files annotated with
// extra columns stay readable.
std::vector<std::vector<double>> read_table(
    const std::string& path, const std::vector<std::string_view>& header,
    std::size_t min_cols, std::size_t max_cols) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorKind::ParseError, path + " is empty, header expected");
  }
  line = chomp(line);
  const auto fields = split_fields(line);
  if (fields.size() < header.size()) {
    raise(ErrorKind::ParseError,
          path + " header has " + std::to_string(fields.size()) +
              " columns, expected at least " + std::to_string(header.size()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (fields[i] != header[i]) {
      raise(ErrorKind::ParseError,
            "unexpected header column '" + std::string(fields[i]) + "' at " +
                location(path, 1, i + 1) + ", expected '" +
                std::string(header[i]) + "'");
    }
  }

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = chomp(line);
    if (line.empty()) {
      continue;
    }
    const auto cells = split_fields(line);
    if (cells.size() < min_cols) {
      raise(ErrorKind::ParseError,
            "row has " + std::to_string(cells.size()) +
                " columns, expected at least " + std::to_string(min_cols) +
                " at " + location(path, line_no, cells.size()));
    }
    const std::size_t used = std::min(cells.size(), max_cols);
    std::vector<double> row;
    row.reserve(used);
    for (std::size_t c = 0; c < used; ++c) {
      row.push_back(parse_cell(cells[c], path, line_no, c + 1));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return {buffer, ptr};
}

std::string meta_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".meta.json");
  return p.string();
}

PairsMeta read_pairs_meta(const std::string& csv_path) {
  const std::string meta_path = meta_path_for(csv_path);
  std::error_code ec;
  if (!std::filesystem::exists(meta_path, ec)) {
    return {};
  }
  std::ifstream in = open_input(meta_path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::ParseError,
          meta_path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) {
    raise(ErrorKind::ParseError, meta_path + " must hold a JSON object");
  }
  PairsMeta meta;
  for (const char* key : {"window_s", "fs_hz"}) {
    if (!doc.contains(key)) {
      continue;
    }
    if (!doc[key].is_number()) {
      raise(ErrorKind::ParseError,
            meta_path + ": '" + key + "' must be a number");
    }
    const double value = doc[key].get<double>();
    if (std::string_view(key) == "window_s") {
      meta.window_s = value;
    } else {
      meta.fs_hz = value;
    }
  }
  return meta;
}

std::vector<CorrelationPair> read_pairs_csv(const std::string& path) {
  const auto rows = read_table(path, {"r_att", "r_unatt"}, 2, 2);
  std::vector<CorrelationPair> pairs;
  pairs.reserve(rows.size());
  for (const auto& row : rows) {
    pairs.push_back({row[0], row[1]});
  }
  return pairs;
}

void write_pairs_csv(const std::string& path,
                     const std::vector<CorrelationPair>& pairs) {
  std::ofstream out = open_output(path);
  out << "r_att,r_unatt\n";
  for (const auto& p : pairs) {
    out << format_double(p.r_att) << ',' << format_double(p.r_unatt) << '\n';
  }
}

void write_pairs_meta(const std::string& csv_path, double window_s,
                      double fs_hz, const std::string& extra_json) {
  ordered_json doc;
  doc["window_s"] = window_s;
  doc["fs_hz"] = fs_hz;
  if (!extra_json.empty()) {
    ordered_json extra;
    try {
      extra = ordered_json::parse(extra_json);
    } catch (const nlohmann::json::exception& e) {
      raise(ErrorKind::ParseError,
            std::string("sidecar extras are not valid JSON: ") + e.what());
    }
    for (auto it = extra.begin(); it != extra.end(); ++it) {
      doc[it.key()] = it.value();
    }
  }
  std::ofstream out = open_output(meta_path_for(csv_path));
  out << doc.dump(2) << '\n';
}

void write_curve_csv(const std::string& path, const PerformanceCurve& curve) {
  std::ofstream out = open_output(path);
  out << "window_s,accuracy_pct,ci_low_pct,ci_high_pct\n";
  for (const auto& p : curve.points) {
    out << format_double(p.window_s) << ',' << format_double(p.accuracy_pct)
        << ',' << format_double(p.ci_low_pct) << ','
        << format_double(p.ci_high_pct) << '\n';
  }
}

PerformanceCurve read_curve_csv(const std::string& path) {
  const auto rows = read_table(
      path, {"window_s", "accuracy_pct", "ci_low_pct", "ci_high_pct"}, 4, 4);
  PerformanceCurve curve;
  curve.points.reserve(rows.size());
  for (const auto& row : rows) {
    curve.points.push_back({row[0], row[1], row[2], row[3]});
  }
  return curve;
}

void write_truth_csv(const std::string& path, const GroundTruthCurve& truth) {
  std::ofstream out = open_output(path);
  out << "window_s,accuracy_pct,n_decisions\n";
  for (const auto& p : truth.points) {
    out << format_double(p.window_s) << ',' << format_double(p.accuracy_pct)
        << ',' << p.n_decisions << '\n';
  }
}

GroundTruthCurve read_truth_csv(const std::string& path) {
  const auto rows = read_table(path, {"window_s", "accuracy_pct"}, 2, 3);
  GroundTruthCurve truth;
  truth.points.reserve(rows.size());
  for (const auto& row : rows) {
    GroundTruthPoint point;
    point.window_s = row[0];
    point.accuracy_pct = row[1];
    point.n_decisions =
        row.size() > 2 ? static_cast<std::int64_t>(row[2]) : 0;
    truth.points.push_back(point);
  }
  return truth;
}

}  // namespace aadcurve
