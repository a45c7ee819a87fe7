#pragma once

#include <stdexcept>
#include <string>

namespace olab {

// Three-valued outcome for every grid-based check. Inconclusive is reserved
// for "the grid could not decide" (domain ran out, too few reliable cells,
// noise swamps the trend); it is never a soft failure.
enum class Verdict { kPass, kFail, kInconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "Pass";
    case Verdict::kFail: return "Fail";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "Pass") return Verdict::kPass;
  if (s == "Fail") return Verdict::kFail;
  if (s == "Inconclusive") return Verdict::kInconclusive;
  throw std::invalid_argument("unknown verdict: " + s);
}

}  // namespace olab
