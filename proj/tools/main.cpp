#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "olab/config.hpp"
#include "olab/errors.hpp"
#include "olab/runner.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file")
      ->required();
  cmd->add_option("--seed", flags.seed, "override the config seed");
  cmd->add_option("--out", flags.out, "override the output directory");
  cmd->add_option("--threads", flags.threads,
                  "worker threads (ORLICZ_LAB_THREADS as fallback, else 1)");
}

int env_threads() {
  const char* raw = std::getenv("ORLICZ_LAB_THREADS");
  if (!raw) return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1 || value > 1024) return 0;
  return static_cast<int>(value);
}

void print_summary(const olab::RunManifest& manifest,
                   const std::string& out_dir) {
  std::cout << "command: " << manifest.command << "\n";
  for (const auto& stage : manifest.stages)
    std::cout << "  stage " << stage.stage << ": " << stage.seconds << " s\n";
  int holds = 0;
  int violated = 0;
  int na = 0;
  for (const auto& row : manifest.consistency) {
    if (row.status == "holds")
      ++holds;
    else if (row.status == "violated")
      ++violated;
    else
      ++na;
  }
  std::cout << "consistency: " << holds << " holds, " << violated
            << " violated, " << na << " not applicable\n";
  for (const auto& note : manifest.notes) std::cout << "note: " << note << "\n";
  const auto path = std::filesystem::path(out_dir) / "manifest.json";
  std::cout << "manifest: " << path.string() << "\n";
  std::cout << "exit: " << manifest.exit_code << "\n";
}

int dispatch(const std::string& command, const CommonFlags& flags,
             const CLI::App* cmd) {
  olab::AnalysisConfig config =
      olab::AnalysisConfig::load_file(flags.config_path);
  if (cmd->count("--seed") > 0) config.seed = flags.seed;
  if (!flags.out.empty()) config.out_dir = flags.out;
  if (cmd->count("--threads") > 0)
    config.threads = flags.threads;
  else if (const int from_env = env_threads())
    config.threads = from_env;
  if (config.threads < 1) throw olab::ConfigError("threads must be >= 1");

  olab::RunManifest manifest;
  if (command == "certify")
    manifest = olab::run_certify(config);
  else if (command == "profile")
    manifest = olab::run_profile(config);
  else if (command == "analyze")
    manifest = olab::run_analyze(config);
  else
    manifest = olab::run_majorant(config);
  print_summary(manifest, config.out_dir);
  return manifest.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numerical laboratory for composition operators on Orlicz spaces"};
  app.set_version_flag("--version", olab::kArtifactVersion);
  app.require_subcommand(1);

  CommonFlags flags;
  auto* certify = app.add_subcommand(
      "certify", "classify an Orlicz function against the growth conditions");
  auto* profile = app.add_subcommand(
      "profile", "estimate Carleson window masses for a symbol");
  auto* analyze = app.add_subcommand(
      "analyze", "run the full boundedness/compactness criterion battery");
  auto* majorant = app.add_subcommand(
      "majorant", "build a concave majorant from an (f, g) growth pair");
  for (auto* cmd : {certify, profile, analyze, majorant})
    add_common(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : olab::kExitConfig;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  try {
    return dispatch(cmd->get_name(), flags, cmd);
  } catch (const olab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return olab::kExitConfig;
  } catch (const olab::SelfMapViolation& e) {
    std::cerr << "symbol violation: " << e.what() << "\n";
    return olab::kExitSelfMap;
  } catch (const olab::DomainExhausted& e) {
    std::cerr << "domain exhausted: " << e.what() << "\n";
    return olab::kExitDomain;
  } catch (const std::domain_error& e) {
    std::cerr << "domain exhausted: " << e.what() << "\n";
    return olab::kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return olab::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
