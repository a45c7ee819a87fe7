#include "olab/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "olab/errors.hpp"
#include "olab/numfmt.hpp"

namespace olab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

void require_config(bool cond, const char* msg) {
  if (!cond) throw ConfigError(msg);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects written files and serializes the manifest last, so the manifest
// lists every artifact including itself.
struct Workspace {
  explicit Workspace(const AnalysisConfig& config, const char* command) {
    dir = config.out_dir;
    fs::create_directories(dir);
    manifest.version = kArtifactVersion;
    manifest.command = command;
    manifest.config_echo = config.to_json();
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os)
      throw std::runtime_error("cannot write " + (dir / name).string());
    os << content;
    manifest.files.push_back(name);
  }

  void stage(const char* name, Clock::time_point t0) {
    manifest.stages.push_back({name, seconds_since(t0)});
  }

  RunManifest finish() {
    manifest.files.push_back("manifest.json");
    std::ofstream os(dir / "manifest.json", std::ios::binary);
    os << manifest.to_json();
    return manifest;
  }

  fs::path dir;
  RunManifest manifest;
};

std::string consistency_csv(const std::vector<ConsistencyRow>& rows) {
  std::ostringstream os;
  os << "name,status\n";
  for (const auto& row : rows) os << row.name << "," << row.status << "\n";
  return os.str();
}

bool any_violated(const std::vector<ConsistencyRow>& rows) {
  for (const auto& row : rows)
    if (row.status == "violated") return true;
  return false;
}

std::vector<double> analyze_lens_h_grid() {
  std::vector<double> grid;
  for (int k = 4; k <= 10; ++k) grid.push_back(std::pow(2.0, -0.5 * k));
  return grid;
}

}  // namespace

std::string RunManifest::to_json() const {
  json j;
  j["version"] = version;
  j["command"] = command;
  j["config"] = json::parse(config_echo);
  j["files"] = files;
  json cons = json::array();
  for (const auto& row : consistency)
    cons.push_back({{"name", row.name}, {"status", row.status}});
  j["consistency"] = cons;
  json st = json::array();
  for (const auto& s : stages)
    st.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
  j["stages"] = st;
  j["notes"] = notes;
  j["exit_code"] = exit_code;
  return j.dump(2);
}

RunManifest RunManifest::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunManifest m;
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.config_echo = j.at("config").dump(2);
    m.files = j.at("files").get<std::vector<std::string>>();
    for (const auto& row : j.at("consistency"))
      m.consistency.push_back({row.at("name").get<std::string>(),
                               row.at("status").get<std::string>()});
    for (const auto& s : j.at("stages"))
      m.stages.push_back(
          {s.at("stage").get<std::string>(), s.at("seconds").get<double>()});
    m.notes = j.at("notes").get<std::vector<std::string>>();
    m.exit_code = j.at("exit_code").get<int>();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest malformed: ") + e.what());
  }
}

RunManifest run_certify(const AnalysisConfig& config) {
  require_config(config.orlicz.has_value(), "certify needs an orlicz section");
  Workspace ws(config, "certify");

  auto t0 = Clock::now();
  const auto certs = certify_all(*config.orlicz);
  ws.stage("certify", t0);

  t0 = Clock::now();
  const auto implications = check_implications(certs);
  for (const auto& imp : implications)
    ws.manifest.consistency.push_back(
        {imp.implication,
         imp.status == "consistent" ? "holds" : imp.status});
  ws.stage("implications", t0);

  t0 = Clock::now();
  json arr = json::array();
  bool all_inconclusive = true;
  for (const auto& cert : certs) {
    arr.push_back(json::parse(cert.to_json()));
    if (cert.verdict != Verdict::kInconclusive) all_inconclusive = false;
  }
  ws.write("certificates.json", arr.dump(2));
  std::ostringstream imp_csv;
  imp_csv << "implication,status\n";
  for (const auto& imp : implications)
    imp_csv << imp.implication << "," << imp.status << "\n";
  ws.write("implications.csv", imp_csv.str());
  ws.stage("write", t0);

  ws.manifest.exit_code = any_violated(ws.manifest.consistency)
                              ? kExitInconsistent
                              : (all_inconclusive ? kExitInconclusive : kExitOk);
  return ws.finish();
}

RunManifest run_profile(const AnalysisConfig& config) {
  require_config(config.symbol.has_value(), "profile needs a symbol section");
  require_config(config.space_set, "profile needs a space section");
  Workspace ws(config, "profile");

  auto t0 = Clock::now();
  const auto h = config.h_grid.empty() ? default_h_grid() : config.h_grid;
  const auto profile =
      build_profile(*config.symbol, config.measure(), h, config.centers,
                    config.n_per_cell, config.seed, config.threads);
  ws.stage("profile", t0);

  t0 = Clock::now();
  ws.write("profile.json", profile.to_json());
  std::ostringstream csv;
  profile.write_csv(csv);
  ws.write("profile.csv", csv.str());
  ws.stage("write", t0);

  ws.manifest.exit_code = kExitOk;
  return ws.finish();
}

RunManifest run_analyze(const AnalysisConfig& config) {
  require_config(config.symbol.has_value(), "analyze needs a symbol section");
  require_config(config.orlicz.has_value(), "analyze needs an orlicz section");
  require_config(config.space_set, "analyze needs a space section");
  Workspace ws(config, "analyze");
  const SymbolMap& phi = *config.symbol;
  const OrliczFunction& psi = *config.orlicz;
  const double ratio_alpha = config.hardy ? kHardyAlpha : config.alpha;
  const bool lens_family = phi.family() == SymbolFamily::kLens1D ||
                           phi.family() == SymbolFamily::kEmbeddedLens;

  auto t0 = Clock::now();
  const auto certs = certify_all(psi);
  json cert_arr = json::array();
  for (const auto& cert : certs) cert_arr.push_back(json::parse(cert.to_json()));
  ws.write("certificates.json", cert_arr.dump(2));
  ws.stage("certify", t0);

  t0 = Clock::now();
  const auto h = config.h_grid.empty() ? default_h_grid() : config.h_grid;
  const auto profile =
      build_profile(phi, config.measure(), h, config.centers,
                    config.n_per_cell, config.seed, config.threads);
  ws.write("profile.json", profile.to_json());
  std::ostringstream pcsv;
  profile.write_csv(pcsv);
  ws.write("profile.csv", pcsv.str());
  ws.stage("profile", t0);

  std::vector<CriterionReport> reports;
  t0 = Clock::now();
  reports.push_back(
      psi_carleson_fit(profile, psi, 0, FitMode::kBigOh, config.A_grid));
  reports.push_back(
      psi_carleson_fit(profile, psi, 0, FitMode::kLittleOh, config.A_grid));
  ws.stage("carleson_fit", t0);

  t0 = Clock::now();
  reports.push_back(boundary_ratio_alpha(psi, phi, phi.dim(), ratio_alpha,
                                         config.r_grid, config.ratio_samples,
                                         config.seed));
  reports.push_back(boundary_ratio_simplified(
      psi, phi, config.r_grid, config.ratio_samples, config.seed));
  reports.push_back(classical_angular_ratio(phi, config.r_grid,
                                            config.ratio_samples, config.seed));
  ws.stage("boundary_ratios", t0);

  t0 = Clock::now();
  reports.push_back(h_infty_compact(phi, config.sup_samples, config.seed));
  if (lens_family) {
    reports.push_back(delta2sharp_sufficiency(psi, phi.param_beta(), phi.dim(),
                                              config.C_grid));
  } else {
    ws.manifest.notes.push_back(
        "delta2_sharp_sufficiency skipped: symbol has no lens exponent");
  }
  if (lens_family && phi.dim() == 1 && phi.pre_dilation() == 1.0) {
    const auto lens_h =
        config.h_grid.empty() ? analyze_lens_h_grid() : config.h_grid;
    const auto lens_measure = config.hardy
                                  ? MeasureSpec::sphere(1)
                                  : MeasureSpec::ball_weighted(1, config.alpha);
    reports.push_back(lens_exponent_check(phi.param_beta(), lens_measure,
                                          lens_h, {config.n_per_cell},
                                          config.seed));
  } else if (lens_family) {
    ws.manifest.notes.push_back(
        "lens_lower_bound_exponent skipped: only the unrestricted disk lens "
        "has a pinned window-mass exponent");
  }
  reports.push_back(koranyi_aperture_verdict(phi, certs));
  ws.stage("pointwise_criteria", t0);

  t0 = Clock::now();
  auto rows = cross_checks(reports);
  for (const auto& rep : reports)
    for (const auto& row : rep.consistency)
      rows.push_back(
          {std::string(to_string(rep.criterion)) + "." + row.name, row.status});
  ws.manifest.consistency = rows;
  ws.stage("cross_checks", t0);

  t0 = Clock::now();
  bool all_inconclusive = true;
  for (const auto& rep : reports) {
    const std::string name = to_string(rep.criterion);
    ws.write("report_" + name + ".json", rep.to_json());
    std::ostringstream ecsv;
    rep.write_csv(ecsv);
    ws.write("evidence_" + name + ".csv", ecsv.str());
    if (rep.verdict != Verdict::kInconclusive) all_inconclusive = false;
  }
  ws.write("consistency.csv", consistency_csv(rows));
  ws.stage("write", t0);

  ws.manifest.exit_code = any_violated(rows)
                              ? kExitInconsistent
                              : (all_inconclusive ? kExitInconclusive : kExitOk);
  return ws.finish();
}

RunManifest run_majorant(const AnalysisConfig& config) {
  require_config(config.majorant.has_value(), "majorant needs its own section");
  const auto& lm = *config.majorant;
  Workspace ws(config, "majorant");

  auto t0 = Clock::now();
  const auto seq = build_sequence(lm.f, lm.g, lm.n_max);
  ws.stage("sequence", t0);
  if (seq.exhausted) {
    ws.manifest.notes.push_back(
        "domain exhausted at n = " + std::to_string(seq.a.size() - 1) +
        " of " + std::to_string(lm.n_max));
  }

  if (seq.a.size() < 3) {
    ws.manifest.notes.push_back(
        "sequence too short for a majorant; nothing further written");
    ws.manifest.consistency.push_back({"partial_sum_floor", "not_applicable"});
    ws.manifest.exit_code = kExitDomain;
    return ws.finish();
  }

  t0 = Clock::now();
  const auto v = build_v(seq);
  std::ostringstream bcsv;
  bcsv << "n,a,v,slope\n";
  for (std::size_t i = 0; i < v.breakpoints.size(); ++i) {
    const double slope = v.slopes[std::min(i, v.slopes.size() - 1)];
    bcsv << i << "," << format_double(v.breakpoints[i]) << ","
         << format_double(v.values[i]) << "," << format_double(slope) << "\n";
  }
  ws.write("breakpoints.csv", bcsv.str());
  ws.write("majorant.json", v.to_json());
  ws.stage("majorant", t0);

  t0 = Clock::now();
  std::vector<double> x_grid = lm.x_grid;
  if (x_grid.empty())
    for (int x = 1; x <= 16; ++x) x_grid.push_back(x);
  const auto rd = ratio_delta(v, lm.f, lm.g, x_grid);
  json dj;
  dj["delta_hat"] = rd.delta_hat;
  dj["argmin_x"] = rd.argmin_x;
  dj["argmin_n"] = rd.argmin_n;
  dj["bound"] = rd.bound;
  dj["bound_holds"] = rd.bound_holds;
  dj["truncated"] = rd.truncated;
  dj["notes"] = rd.notes;
  ws.write("delta.json", dj.dump(2));
  ws.manifest.consistency.push_back(
      {"partial_sum_floor", rd.bound_holds ? "holds" : "violated"});
  ws.stage("ratio", t0);

  t0 = Clock::now();
  if (v.breakpoints.size() >= 4) {
    const auto psi = orlicz_from_v(v, lm.strictify);
    ws.write("psi.json", psi.to_json());
  } else {
    ws.manifest.notes.push_back(
        "fewer than 4 breakpoints; psi export skipped");
  }
  ws.stage("export", t0);

  ws.manifest.exit_code = seq.exhausted ? kExitDomain
                          : any_violated(ws.manifest.consistency)
                              ? kExitInconsistent
                              : kExitOk;
  return ws.finish();
}

}  // namespace olab
