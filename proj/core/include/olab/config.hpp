#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "olab/ball.hpp"
#include "olab/carleson.hpp"
#include "olab/concave.hpp"
#include "olab/orlicz.hpp"
#include "olab/symbols.hpp"

// Run configuration parsed from a single JSON document. The seed is
// mandatory; every other section is optional and each command validates the
// ones it needs. Unknown keys are rejected so a typo cannot silently fall
// back to a default.

namespace olab {

struct AnalysisConfig {
  std::uint64_t seed = 0;
  std::string out_dir = ".";

  // Worker count for profile construction. Set by the command line (flag,
  // then ORLICZ_LAB_THREADS), never read from or written to the JSON;
  // results do not depend on it.
  int threads = 1;

  std::optional<SymbolMap> symbol;
  std::optional<OrliczFunction> orlicz;

  // Space selector: boundary measure (hardy) or weighted volume with the
  // given alpha > -1.
  bool space_set = false;
  bool hardy = false;
  double alpha = 0.0;

  // Empty grids select the library defaults at the point of use.
  std::vector<double> h_grid;  // strictly decreasing, in (0, 1)
  std::vector<double> r_grid;  // strictly increasing, in (0, 1)
  std::vector<double> A_grid;  // positive
  std::vector<double> C_grid;  // >= 1

  std::size_t n_per_cell = 1 << 16;
  std::size_t ratio_samples = 256;
  std::size_t sup_samples = 4096;
  CenterStrategy centers;

  struct MajorantPlan {
    MonotoneFunction f;
    MonotoneFunction g;
    int n_max = 8;
    std::vector<double> x_grid;  // empty selects integers 1..16
    bool strictify = false;
  };
  std::optional<MajorantPlan> majorant;

  // Measure implied by the space selector; requires symbol and space.
  MeasureSpec measure() const;

  // Throws ConfigError on malformed JSON, schema violations, unknown keys,
  // or out-of-range grid entries.
  static AnalysisConfig from_json_text(const std::string& text);
  static AnalysisConfig load_file(const std::string& path);

  // Canonical echo: feeding the result back through from_json_text
  // reproduces the same run.
  std::string to_json() const;
};

}  // namespace olab
