#pragma once

#include <stdexcept>
#include <string>

namespace olab {

// Malformed or out-of-contract configuration input.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A symbol map produced a point on or outside the unit sphere. This is a
// hard error: masses and ratios downstream would silently degrade if the
// point were clamped back inside.
class SelfMapViolation : public std::runtime_error {
 public:
  explicit SelfMapViolation(const std::string& what) : std::runtime_error(what) {}
};

// An iterative construction ran past the domain of one of its inputs.
class DomainExhausted : public std::runtime_error {
 public:
  DomainExhausted(const std::string& what, int last_index)
      : std::runtime_error(what), last_index(last_index) {}
  int last_index;
};

}  // namespace olab
