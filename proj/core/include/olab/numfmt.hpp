#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace olab {

// Shortest decimal string that parses back to exactly the same double.
// Used everywhere a number crosses a file boundary, so re-running a job
// reproduces output files byte for byte.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline double parse_double(const std::string& s) {
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  if (s == "nan") return NAN;
  return std::stod(s);
}

}  // namespace olab
