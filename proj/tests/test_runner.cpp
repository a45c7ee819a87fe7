#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "olab/carleson.hpp"
#include "olab/concave.hpp"
#include "olab/config.hpp"
#include "olab/errors.hpp"
#include "olab/orlicz.hpp"
#include "olab/runner.hpp"
#include "olab/symbols.hpp"

using namespace olab;

namespace {

namespace fs = std::filesystem;
using cd = std::complex<double>;

fs::path fresh_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       ("olab_runner_" + tag + "_" +
                        std::to_string(counter.fetch_add(1)));
  fs::remove_all(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  os << content;
}

// every listed file exists and the manifest lists itself
void check_manifest_complete(const RunManifest& manifest, const fs::path& dir) {
  bool lists_itself = false;
  for (const auto& name : manifest.files) {
    CHECK(fs::exists(dir / name));
    if (name == "manifest.json") lists_itself = true;
  }
  CHECK(lists_itself);
  const auto parsed = RunManifest::from_json(read_file(dir / "manifest.json"));
  CHECK(parsed.command == manifest.command);
  CHECK(parsed.exit_code == manifest.exit_code);
  CHECK(parsed.files == manifest.files);
}

AnalysisConfig parse(const std::string& text) {
  return AnalysisConfig::from_json_text(text);
}

}  // namespace

TEST_CASE("config parser enforces its schema") {
  const auto cfg = parse(R"({
    "seed": 42,
    "symbol": {"family": "dilation", "params": {"r": 0.5, "dim": 2}},
    "orlicz": {"family": "power", "params": {"p": 2}},
    "space": {"kind": "bergman", "alpha": 1},
    "grids": {"h": [0.5, 0.25], "r": [0.5, 0.75]},
    "samples": {"per_cell": 1024, "ratio_per_r": 32, "sup": 256}
  })");
  CHECK(cfg.seed == 42);
  CHECK(cfg.symbol->family() == SymbolFamily::kDilation);
  CHECK(cfg.orlicz->describe().find("power") != std::string::npos);
  CHECK(!cfg.hardy);
  CHECK(cfg.alpha == 1.0);
  CHECK(cfg.h_grid == std::vector<double>{0.5, 0.25});
  CHECK(cfg.n_per_cell == 1024);
  CHECK(cfg.measure().kind == MeasureKind::kBallWeighted);

  // canonical echo parses back to the same echo
  const auto echo = cfg.to_json();
  CHECK(parse(echo).to_json() == echo);

  CHECK_THROWS_AS(parse("{"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"out": "x"})"), ConfigError);  // seed mandatory
  CHECK_THROWS_AS(parse(R"({"seed": 1, "surprise": 2})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"seed": 1, "space": {"kind": "lebesgue"}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse(R"({"seed": 1, "space": {"kind": "hardy", "alpha": 0}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse(R"({"seed": 1, "space": {"kind": "bergman", "alpha": -1}})"),
      ConfigError);
  CHECK_THROWS_AS(parse(R"({"seed": 1, "grids": {"h": [0.25, 0.5]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse(R"({"seed": 1, "grids": {"r": [0.5, 1.5]}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse(
          R"({"seed": 1, "N": 3,
              "symbol": {"family": "dilation", "params": {"r": 0.5, "dim": 2}}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse(R"({"seed": 1, "symbol": {"family": "moebius", "params": {}}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse(R"({"seed": 1, "majorant": {
        "f": {"kind": "power", "q": 1}, "g": {"kind": "power", "q": 2},
        "n_max": 2}})"),
      ConfigError);
  CHECK_THROWS_AS(AnalysisConfig::load_file("/nonexistent/config.json"),
                  ConfigError);
}

TEST_CASE("certify runner writes certificates and implications") {
  const auto dir = fresh_dir("certify");
  auto cfg = parse(R"({"seed": 3, "orlicz": {"family": "power", "params": {"p": 2}}})");
  cfg.out_dir = dir.string();

  const auto manifest = run_certify(cfg);
  CHECK(manifest.command == "certify");
  CHECK(manifest.exit_code == kExitOk);
  CHECK(!manifest.stages.empty());
  check_manifest_complete(manifest, dir);

  // five conditions, every implication row intact
  const auto certs_text = read_file(dir / "certificates.json");
  std::size_t verdicts = 0;
  for (std::size_t pos = 0;
       (pos = certs_text.find("\"condition\"", pos)) != std::string::npos;
       ++pos)
    ++verdicts;
  CHECK(verdicts == 5);
  const auto imp = read_file(dir / "implications.csv");
  CHECK(imp.rfind("implication,status", 0) == 0);
  for (const auto& row : manifest.consistency)
    CHECK(row.status == "holds");

  // a table too short to decide anything lands on the inconclusive exit
  std::vector<double> xs, ys;
  for (int i = 0; i <= 8; ++i) {
    xs.push_back(8.0 * i);
    ys.push_back(64.0 * i * i);
  }
  auto tiny = cfg;
  tiny.out_dir = fresh_dir("certify_tiny").string();
  tiny.orlicz = OrliczFunction::tabulated(xs, ys);
  CHECK(run_certify(tiny).exit_code == kExitInconclusive);

  auto missing = cfg;
  missing.orlicz.reset();
  CHECK_THROWS_AS(run_certify(missing), ConfigError);
}

TEST_CASE("profile runner serializes the measured profile") {
  const auto dir = fresh_dir("profile");
  auto cfg = parse(R"({
    "seed": 9,
    "symbol": {"family": "dilation", "params": {"r": 0.9, "dim": 1}},
    "space": {"kind": "bergman", "alpha": 0},
    "grids": {"h": [0.5, 0.25, 0.125]},
    "samples": {"per_cell": 2048}
  })");
  cfg.out_dir = dir.string();

  const auto manifest = run_profile(cfg);
  CHECK(manifest.exit_code == kExitOk);
  check_manifest_complete(manifest, dir);

  const auto profile =
      CarlesonProfile::from_json(read_file(dir / "profile.json"));
  CHECK(profile.cells.size() == 3);
  CHECK(read_file(dir / "profile.csv").rfind("h,", 0) == 0);

  auto missing = cfg;
  missing.symbol.reset();
  CHECK_THROWS_AS(run_profile(missing), ConfigError);
}

TEST_CASE("analyze runner reports every criterion and stays consistent") {
  const auto dir = fresh_dir("analyze");
  auto cfg = parse(R"({
    "seed": 17,
    "symbol": {"family": "constant", "params": {"w0": [[0.3, 0.0]]}},
    "orlicz": {"family": "power", "params": {"p": 2}},
    "space": {"kind": "bergman", "alpha": 0},
    "grids": {"h": [0.5, 0.25, 0.125, 0.0625, 0.03125]},
    "samples": {"per_cell": 4096, "ratio_per_r": 64, "sup": 512}
  })");
  cfg.out_dir = dir.string();

  const auto manifest = run_analyze(cfg);
  CHECK(manifest.exit_code == kExitOk);
  check_manifest_complete(manifest, dir);

  for (const auto& row : manifest.consistency) CHECK(row.status != "violated");

  // the compact constant symbol passes every decidable compactness criterion
  for (const char* name :
       {"psi_carleson_big_oh", "psi_carleson_little_oh", "boundary_ratio_alpha",
        "boundary_ratio_simplified", "classical_angular_ratio",
        "h_infty_compact"}) {
    const auto rep = CriterionReport::from_json(
        read_file(dir / (std::string("report_") + name + ".json")));
    CHECK(rep.verdict == Verdict::kPass);
    CHECK(fs::exists(dir / (std::string("evidence_") + name + ".csv")));
  }

  // no lens exponent artifacts for a constant symbol, a note instead
  CHECK(!fs::exists(dir / "report_lens_lower_bound_exponent.json"));
  CHECK(!fs::exists(dir / "report_delta2_sharp_sufficiency.json"));
  bool skip_noted = false;
  for (const auto& note : manifest.notes)
    if (note.find("skipped") != std::string::npos) skip_noted = true;
  CHECK(skip_noted);

  auto missing = cfg;
  missing.orlicz.reset();
  CHECK_THROWS_AS(run_analyze(missing), ConfigError);
}

TEST_CASE("analyze output is byte-identical across reruns") {
  auto cfg = parse(R"({
    "seed": 23,
    "symbol": {"family": "lens", "params": {"beta": 0.5}},
    "orlicz": {"family": "exp_power", "params": {"a": 1, "b": 1}},
    "space": {"kind": "bergman", "alpha": 1},
    "grids": {"h": [0.5, 0.25, 0.125]},
    "samples": {"per_cell": 2048, "ratio_per_r": 32, "sup": 256}
  })");
  const auto dir_a = fresh_dir("rerun_a");
  const auto dir_b = fresh_dir("rerun_b");

  cfg.out_dir = dir_a.string();
  const auto first = run_analyze(cfg);
  cfg.out_dir = dir_b.string();
  cfg.threads = 2;  // worker count must not leak into the numbers
  const auto second = run_analyze(cfg);

  CHECK(first.files == second.files);
  for (const auto& name : first.files) {
    if (name == "manifest.json") continue;  // carries wall-clock stages
    CHECK(read_file(dir_a / name) == read_file(dir_b / name));
  }
}

TEST_CASE("majorant runner exports the construction") {
  const auto dir = fresh_dir("majorant");
  auto cfg = parse(R"({
    "seed": 1,
    "majorant": {
      "f": {"kind": "power", "q": 1},
      "g": {"kind": "power", "q": 2},
      "n_max": 6,
      "x_grid": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16]
    }
  })");
  cfg.out_dir = dir.string();

  const auto manifest = run_majorant(cfg);
  CHECK(manifest.exit_code == kExitOk);
  check_manifest_complete(manifest, dir);

  const auto v = ConcaveMajorant::from_json(read_file(dir / "majorant.json"));
  CHECK(v.breakpoints.size() == 7);
  CHECK(v.breakpoints[4] == 16.0);

  const auto breakpoints = read_file(dir / "breakpoints.csv");
  CHECK(breakpoints.rfind("n,a,v,slope", 0) == 0);
  CHECK(breakpoints.find("\n3,4,") != std::string::npos);

  const auto delta = read_file(dir / "delta.json");
  CHECK(delta.find("0.7387961250362586") != std::string::npos);
  CHECK(delta.find("\"bound_holds\": true") != std::string::npos);
  CHECK(fs::exists(dir / "psi.json"));
  bool floor_row = false;
  for (const auto& row : manifest.consistency)
    if (row.name == "partial_sum_floor") floor_row = row.status == "holds";
  CHECK(floor_row);

  auto missing = cfg;
  missing.majorant.reset();
  CHECK_THROWS_AS(run_majorant(missing), ConfigError);
}

TEST_CASE("majorant runner reports an exhausted domain") {
  // f reaches only up to 10, so a_4 = 16 is out of reach
  const auto dir = fresh_dir("majorant_exhausted");
  auto cfg = parse(R"({
    "seed": 1,
    "majorant": {
      "f": {"kind": "tabulated", "x": [0, 10], "y": [0, 10]},
      "g": {"kind": "power", "q": 2},
      "n_max": 8,
      "x_grid": [1, 2, 3]
    }
  })");
  cfg.out_dir = dir.string();

  const auto manifest = run_majorant(cfg);
  CHECK(manifest.exit_code == kExitDomain);
  check_manifest_complete(manifest, dir);
  CHECK(fs::exists(dir / "majorant.json"));
  const auto v = ConcaveMajorant::from_json(read_file(dir / "majorant.json"));
  CHECK(v.breakpoints == std::vector<double>{0, 1, 2, 4, 16});
  bool noted = false;
  for (const auto& note : manifest.notes)
    if (note.find("exhausted at n = 4") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("cli binary maps flags and failures to exit codes") {
  const fs::path work = fresh_dir("cli");
  fs::create_directories(work);
  const std::string bin = ORLICZ_LAB_BIN;

  auto run = [&](const std::string& args) {
    const std::string cmd = bin + " " + args + " > " +
                            (work / "stdout.txt").string() + " 2> " +
                            (work / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
  };

  write_file(work / "certify.json",
             R"({"seed": 5, "orlicz": {"family": "power", "params": {"p": 4}}})");
  CHECK(run("certify --config " + (work / "certify.json").string() + " --out " +
            (work / "out_certify").string()) == 0);
  CHECK(fs::exists(work / "out_certify" / "manifest.json"));
  CHECK(read_file(work / "stdout.txt").find("manifest:") != std::string::npos);

  // seed override lands in the manifest's config echo
  CHECK(run("certify --config " + (work / "certify.json").string() +
            " --seed 99 --out " + (work / "out_seed").string()) == 0);
  CHECK(read_file(work / "out_seed" / "manifest.json").find("\"seed\": 99") !=
        std::string::npos);

  write_file(work / "short.json",
             R"({"seed": 1, "majorant": {
                  "f": {"kind": "power", "q": 1},
                  "g": {"kind": "power", "q": 2}, "n_max": 2}})");
  CHECK(run("majorant --config " + (work / "short.json").string() + " --out " +
            (work / "out_short").string()) == 64);
  CHECK(read_file(work / "stderr.txt").find("below minimum") !=
        std::string::npos);

  CHECK(run("certify --config " + (work / "missing.json").string()) == 64);
  CHECK(run("certify") == 64);  // --config is required
  CHECK(run("--version") == 0);

  write_file(work / "exhausted.json",
             R"({"seed": 1, "majorant": {
                  "f": {"kind": "tabulated", "x": [0, 10], "y": [0, 10]},
                  "g": {"kind": "power", "q": 2},
                  "n_max": 8, "x_grid": [1, 2, 3]}})");
  CHECK(run("majorant --config " + (work / "exhausted.json").string() +
            " --out " + (work / "out_exhausted").string()) == 66);
}
