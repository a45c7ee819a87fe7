#pragma once

#include <string>
#include <vector>

#include "olab/config.hpp"
#include "olab/criteria.hpp"

// Command runners behind the CLI. They live in the library so batteries can
// drive them in-process; the CLI binary only parses flags and maps errors to
// exit codes.

namespace olab {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Process exit codes shared by the runners and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 2;    // a consistency row is violated
inline constexpr int kExitInconclusive = 3;    // only inconclusive verdicts
inline constexpr int kExitConfig = 64;         // malformed configuration
inline constexpr int kExitSelfMap = 65;        // symbol left the unit ball
inline constexpr int kExitDomain = 66;         // construction ran out of domain

struct StageClock {
  std::string stage;
  double seconds = 0;
};

struct RunManifest {
  std::string version;      // artifact version stamp
  std::string command;
  std::string config_echo;  // JSON document that reproduces this run
  std::vector<std::string> files;  // everything written, out_dir-relative
  std::vector<ConsistencyRow> consistency;
  std::vector<StageClock> stages;  // wall clock per stage
  std::vector<std::string> notes;
  int exit_code = 0;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

// Each runner writes its artifacts under config.out_dir (created when
// missing), writes manifest.json last, and returns the manifest; its
// exit_code is the process exit code. Numeric file content depends only on
// the config, never on wall clock or thread count.

// Growth-class certificates for the configured function, plus the
// implication cross-checks between them.
RunManifest run_certify(const AnalysisConfig& config);

// Window-mass profile of the configured symbol over the h grid.
RunManifest run_profile(const AnalysisConfig& config);

// The full criteria battery for symbol + function + space, one report and
// evidence table per criterion, with cross-checks between them.
RunManifest run_analyze(const AnalysisConfig& config);

// Concave-majorant construction for the configured (f, g) pair: breakpoint
// table, majorant, ratio floor, and the exported Orlicz function.
RunManifest run_majorant(const AnalysisConfig& config);

}  // namespace olab
