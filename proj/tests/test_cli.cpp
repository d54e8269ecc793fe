// End-to-end tests of the command-line tool: each case launches the real
// binary (path injected at compile time) inside a scratch directory.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef AADCURVE_CLI_PATH
#error "AADCURVE_CLI_PATH must point at the built executable"
#endif
#ifndef AADCURVE_FIXTURES_DIR
#error "AADCURVE_FIXTURES_DIR must point at tests/fixtures"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = AADCURVE_CLI_PATH;
const fs::path kFixtures = AADCURVE_FIXTURES_DIR;

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  q += "'";
  return q;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("aadcurve_cli_" + tag + "_" + std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

// Run the CLI with `args` from inside `cwd`; stdout/stderr land in
// cwd/stdout.txt and cwd/stderr.txt. Returns the exit code.
int run_cli(const fs::path& cwd, const std::string& args) {
  const std::string cmd = "cd " + shell_quote(cwd.string()) + " && " +
                          shell_quote(kCli) + " " + args +
                          " >stdout.txt 2>stderr.txt";
  const int status = std::system(cmd.c_str());
  if (status == -1) {
    return -1;
  }
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) {
    n += c == '\n';
  }
  return n;
}

// Pinned fixture pipeline; kept identical to the commands that produced the
// files in tests/fixtures so outputs stay byte-comparable.
const char* kGoldenSimulate =
    "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 --window-s 20 "
    "--minutes 6 --seed 4242 --out golden_pairs.csv";
const char* kGoldenPredict =
    "predict --in golden_pairs.csv --out golden_curve.csv "
    "--targets 60,30,20,10,5,1 --n-boot 300 --ci 0.95 --seed 7";
const char* kGoldenPlot =
    "plot --in golden_curve.csv --out golden_plot.svg --title 'demo curve'";

}  // namespace

TEST_CASE("cli: help succeeds, bad invocations exit 2") {
  TempDir dir("usage");
  CHECK(run_cli(dir.path, "--help") == 0);
  CHECK(run_cli(dir.path, "predict --help") == 0);
  CHECK(run_cli(dir.path, "") == 2);            // a subcommand is required
  CHECK(run_cli(dir.path, "frobnicate") == 2);  // unknown subcommand
  CHECK(run_cli(dir.path, "predict --out c.csv") == 2);  // missing --in
  CHECK(run_cli(dir.path,
                "simulate --rho-att 0.2 --rho-unatt 0.05 --mode bogus "
                "--out p.csv") == 2);
  CHECK(run_cli(dir.path, "predict --in a.csv --out c.csv --no-such-flag") == 2);
}

TEST_CASE("cli: simulate writes pairs, sidecar and honors the budget rule") {
  TempDir dir("simulate");
  CHECK(run_cli(dir.path,
                "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                "--window-s 20 --minutes 30 --seed 7 --out pairs.csv") == 0);
  const std::string csv = read_file(dir.path / "pairs.csv");
  CHECK(count_lines(csv) == 91);  // header + floor(60 * 30 / 20) rows

  const json meta = json::parse(read_file(dir.path / "pairs.meta.json"));
  CHECK(meta.at("window_s").get<double>() == 20.0);
  CHECK(meta.at("fs_hz").get<double>() == 20.0);
  CHECK(meta.at("scenario").at("seed").get<std::uint64_t>() == 7);
  CHECK(meta.at("scenario").at("mode").get<std::string>() == "signal");

  // Same seed, same bytes.
  CHECK(run_cli(dir.path,
                "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                "--window-s 20 --minutes 30 --seed 7 --out again.csv") == 0);
  CHECK(read_file(dir.path / "again.csv") == csv);

  // Mixture norm violation and starved budgets are input errors.
  CHECK(run_cli(dir.path,
                "simulate --rho-att 0.9 --rho-unatt 0.5 --out bad.csv") == 2);
  CHECK(run_cli(dir.path,
                "simulate --rho-att 0.2 --rho-unatt 0.05 --window-s 60 "
                "--minutes 0.5 --out bad.csv") == 2);
  CHECK_FALSE(fs::exists(dir.path / "bad.csv"));
}

TEST_CASE("cli: predict produces a curve, a report and is byte-stable") {
  TempDir dir("predict");
  REQUIRE(run_cli(dir.path,
                  "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                  "--window-s 20 --minutes 30 --seed 11 --out pairs.csv") == 0);
  REQUIRE(run_cli(dir.path,
                  "predict --in pairs.csv --out curve.csv --seed 3") == 0);

  const std::string csv = read_file(dir.path / "curve.csv");
  CHECK(count_lines(csv) == 7);  // header + default six targets
  CHECK(csv.rfind("window_s,accuracy_pct,ci_low_pct,ci_high_pct\n", 0) == 0);

  const json report = json::parse(read_file(dir.path / "curve.report.json"));
  REQUIRE(report.contains("config"));
  REQUIRE(report.contains("model"));
  REQUIRE(report.contains("curve"));
  REQUIRE(report.contains("warnings"));
  CHECK(report["config"]["window_s"].get<double>() == 20.0);
  CHECK(report["config"]["n_boot"].get<int>() == 1000);
  CHECK(report["model"]["m_count"].get<int>() == 90);
  CHECK(report["model"]["n_baseline"].get<int>() == 400);
  const auto& points = report["curve"]["points"];
  REQUIRE(points.size() == 6);
  CHECK(points[0]["window_s"].get<double>() == 60.0);
  CHECK(points[5]["window_s"].get<double>() == 1.0);
  for (const auto& p : points) {
    CHECK(p["ci_low_pct"].get<double>() <= p["accuracy_pct"].get<double>());
    CHECK(p["accuracy_pct"].get<double>() <= p["ci_high_pct"].get<double>());
  }
  CHECK(report["warnings"].empty());

  // Re-running the identical command reproduces both files byte for byte.
  const std::string report_raw = read_file(dir.path / "curve.report.json");
  REQUIRE(run_cli(dir.path,
                  "predict --in pairs.csv --out curve.csv --seed 3") == 0);
  CHECK(read_file(dir.path / "curve.csv") == csv);
  CHECK(read_file(dir.path / "curve.report.json") == report_raw);
}

TEST_CASE("cli: predict metadata comes from flags or sidecar") {
  TempDir dir("meta");
  REQUIRE(run_cli(dir.path,
                  "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                  "--window-s 20 --minutes 30 --seed 5 --out pairs.csv") == 0);

  // Flags override the sidecar.
  REQUIRE(run_cli(dir.path,
                  "predict --in pairs.csv --out flagged.csv --window-s 10 "
                  "--fs 40 --n-boot 100") == 0);
  const json report = json::parse(read_file(dir.path / "flagged.report.json"));
  CHECK(report["config"]["window_s"].get<double>() == 10.0);
  CHECK(report["config"]["fs_hz"].get<double>() == 40.0);

  // Without sidecar or flags the window length is unknown.
  fs::remove(dir.path / "pairs.meta.json");
  CHECK(run_cli(dir.path, "predict --in pairs.csv --out c.csv") == 2);
  CHECK(run_cli(dir.path,
                "predict --in pairs.csv --out c.csv --window-s 20 --fs 20 "
                "--n-boot 100") == 0);
}

TEST_CASE("cli: predict warns when targets outrun the estimation span") {
  TempDir dir("warn");
  REQUIRE(run_cli(dir.path,
                  "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                  "--window-s 20 --minutes 6 --seed 2 --out pairs.csv") == 0);
  REQUIRE(run_cli(dir.path,
                  "predict --in pairs.csv --out curve.csv --targets 600,20 "
                  "--n-boot 100") == 0);
  const json report = json::parse(read_file(dir.path / "curve.report.json"));
  REQUIRE(report["warnings"].size() == 1);
  const auto text = report["warnings"][0].get<std::string>();
  CHECK(text.find("600") != std::string::npos);
  CHECK(text.find("exceeds") != std::string::npos);
  CHECK(read_file(dir.path / "stderr.txt").find("warning:") !=
        std::string::npos);
}

TEST_CASE("cli: predict separates statistical failures from input errors") {
  TempDir dir("exit3");

  std::ofstream(dir.path / "flat.csv")
      << "r_att,r_unatt\n0.3,0.1\n0.3,0.1\n0.3,0.1\n";
  CHECK(run_cli(dir.path,
                "predict --in flat.csv --out c.csv --window-s 20 --fs 20 "
                "--n-boot 100") == 3);
  CHECK_FALSE(fs::exists(dir.path / "c.csv"));

  std::ofstream(dir.path / "single.csv") << "r_att,r_unatt\n0.3,0.1\n";
  CHECK(run_cli(dir.path,
                "predict --in single.csv --out c.csv --window-s 20 --fs 20 "
                "--n-boot 100") == 3);

  std::ofstream(dir.path / "empty.csv") << "r_att,r_unatt\n";
  CHECK(run_cli(dir.path,
                "predict --in empty.csv --out c.csv --window-s 20 --fs 20 "
                "--n-boot 100") == 2);

  std::ofstream(dir.path / "garbled.csv") << "r_att,r_unatt\n0.3,zebra\n";
  CHECK(run_cli(dir.path,
                "predict --in garbled.csv --out c.csv --window-s 20 --fs 20 "
                "--n-boot 100") == 2);
}

TEST_CASE("cli: evaluate compares curves against decision-counting truth") {
  TempDir dir("evaluate");
  // Estimation data at a 20 s baseline plus truth pools at the two targets.
  REQUIRE(run_cli(dir.path,
                  "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                  "--window-s 20 --minutes 30 --seed 21 --out est.csv") == 0);
  REQUIRE(run_cli(dir.path,
                  "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                  "--window-s 20 --minutes 120 --seed 22 --out t20.csv") == 0);
  REQUIRE(run_cli(dir.path,
                  "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                  "--window-s 5 --minutes 120 --seed 23 --out t5.csv") == 0);
  REQUIRE(run_cli(dir.path,
                  "predict --in est.csv --out curve.csv --targets 20,5 "
                  "--n-boot 200 --seed 9") == 0);

  REQUIRE(run_cli(dir.path,
                  "evaluate --pred curve.csv --truth t20.csv t5.csv "
                  "--out report.json --truth-out truth.csv") == 0);
  const json doc = json::parse(read_file(dir.path / "report.json"));
  REQUIRE(doc.contains("truth"));
  REQUIRE(doc.contains("reports"));
  CHECK(doc["truth"]["points"].size() == 2);
  CHECK(doc["truth"]["points"][0]["window_s"].get<double>() == 20.0);
  REQUIRE(doc["reports"].size() == 1);
  const auto& rep = doc["reports"][0];
  CHECK(rep["source"].get<std::string>() == "curve.csv");
  REQUIRE(rep["per_point"].size() == 2);
  CHECK(rep["mae_pp"].get<double>() >= 0.0);
  CHECK(rep["mae_pp"].get<double>() < 15.0);
  CHECK(count_lines(read_file(dir.path / "truth.csv")) == 3);

  // Mean aggregation over two predictions collapses to one report.
  REQUIRE(run_cli(dir.path,
                  "predict --in est.csv --out curve2.csv --targets 20,5 "
                  "--n-boot 200 --seed 10") == 0);
  REQUIRE(run_cli(dir.path,
                  "evaluate --pred curve.csv curve2.csv --truth t20.csv "
                  "t5.csv --aggregate mean --out mean.json") == 0);
  const json mean_doc = json::parse(read_file(dir.path / "mean.json"));
  REQUIRE(mean_doc["reports"].size() == 1);
  CHECK(mean_doc["reports"][0]["source"].get<std::string>() == "mean");

  // A prediction grid that misses the truth grid is an input error.
  REQUIRE(run_cli(dir.path,
                  "predict --in est.csv --out off.csv --targets 30,5 "
                  "--n-boot 200") == 0);
  CHECK(run_cli(dir.path,
                "evaluate --pred off.csv --truth t20.csv t5.csv "
                "--out bad.json") == 2);
}

TEST_CASE("cli: plot renders SVG deterministically") {
  TempDir dir("plot");
  REQUIRE(run_cli(dir.path,
                  "simulate --rho-att 0.2 --rho-unatt 0.05 --fs 20 "
                  "--window-s 20 --minutes 30 --seed 31 --out pairs.csv") == 0);
  REQUIRE(run_cli(dir.path,
                  "predict --in pairs.csv --out curve.csv --n-boot 200") == 0);
  REQUIRE(run_cli(dir.path, "plot --in curve.csv --out plot.svg "
                            "--title 'demo'") == 0);
  const std::string svg = read_file(dir.path / "plot.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("class=\"predicted\"") != std::string::npos);
  CHECK(svg.find("class=\"truth\"") == std::string::npos);

  REQUIRE(run_cli(dir.path, "plot --in curve.csv --out again.svg "
                            "--title 'demo'") == 0);
  CHECK(read_file(dir.path / "again.svg") == svg);

  REQUIRE(run_cli(dir.path, "plot --in curve.csv --out linear.svg "
                            "--linear-x") == 0);
  CHECK(read_file(dir.path / "linear.svg") != svg);

  std::ofstream(dir.path / "broken.csv") << "nope\n1,2\n";
  CHECK(run_cli(dir.path, "plot --in broken.csv --out x.svg") == 2);
  CHECK(run_cli(dir.path, "plot --in missing.csv --out x.svg") == 2);
}

TEST_CASE("cli: pipeline outputs match the golden fixtures byte for byte") {
  TempDir dir("golden");
  REQUIRE(run_cli(dir.path, kGoldenSimulate) == 0);
  CHECK(read_file(dir.path / "golden_pairs.csv") ==
        read_file(kFixtures / "golden_pairs.csv"));
  CHECK(read_file(dir.path / "golden_pairs.meta.json") ==
        read_file(kFixtures / "golden_pairs.meta.json"));

  REQUIRE(run_cli(dir.path, kGoldenPredict) == 0);
  CHECK(read_file(dir.path / "golden_curve.csv") ==
        read_file(kFixtures / "golden_curve.csv"));
  CHECK(read_file(dir.path / "golden_curve.report.json") ==
        read_file(kFixtures / "golden_curve.report.json"));

  REQUIRE(run_cli(dir.path, kGoldenPlot) == 0);
  CHECK(read_file(dir.path / "golden_plot.svg") ==
        read_file(kFixtures / "golden_plot.svg"));
}
