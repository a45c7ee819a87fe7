#pragma once

#include <string>
#include <vector>

#include "olab/orlicz.hpp"

// Constructive concave majorant: from two increasing unbounded functions
// f and g, build a breakpoint sequence (a_n) and a piecewise-affine concave
// v with v(f(x))/v(g(x)) bounded away from zero, then export psi = v^{-1}
// as an Orlicz function.

namespace olab {

enum class MonotoneKind {
  kPower,      // x^q
  kExpForm,    // e^{a x^b} - 1
  kLogForm,    // a ln(1+x)^b
  kTabulated,  // linear interpolation on a strictly increasing grid
};

// Increasing function on [0, domain_max]. Closed forms are unbounded and
// report an infinite domain; tabulated functions refuse to extrapolate in
// either direction.
class MonotoneFunction {
 public:
  static MonotoneFunction power(double q);
  static MonotoneFunction exp_form(double a, double b);
  static MonotoneFunction log_form(double a, double b);

  // Nodes must start at x = 0, be strictly increasing in both coordinates,
  // and evaluate(0) need not be 0 (only monotonicity is required of g).
  static MonotoneFunction tabulated(std::vector<double> x,
                                    std::vector<double> y);

  MonotoneKind kind() const { return kind_; }

  // Throws std::domain_error outside [0, domain_max()].
  double evaluate(double x) const;

  // Monotone inversion: the unique x with evaluate(x) = y. Throws
  // std::domain_error when y is outside the attained range.
  double inverse(double y) const;

  // Largest admissible argument (+infinity for closed forms).
  double domain_max() const;

  // Largest attainable value, evaluate(domain_max) for tabulated kinds.
  double range_max() const;

  std::string describe() const;

  std::string to_json() const;
  static MonotoneFunction from_json(const std::string& text);

 private:
  MonotoneFunction() = default;
  MonotoneKind kind_ = MonotoneKind::kPower;
  double q_ = 0, a_ = 0, b_ = 0;
  std::vector<double> xs_, ys_;
};

// Breakpoint recurrence: a_0 = 0, a_1 = 1,
//   b_{n+2} = g(f^{-1}(a_{n+1}))   (the sup of g over {f <= a_{n+1}}),
//   a_{n+2} = max(b_{n+2}, 2 a_{n+1} - a_n).
// The build stops early, with `exhausted` set, as soon as computing the
// next b would need f or g outside its domain; the returned prefix is
// still valid.
struct SequenceBuild {
  std::vector<double> a;  // a_0 .. a_m, m <= n_max
  bool exhausted = false;
  int n_requested = 0;
  std::string f_text, g_text;
};

// n_max >= 3 or std::invalid_argument.
SequenceBuild build_sequence(const MonotoneFunction& f,
                             const MonotoneFunction& g, int n_max);

// Piecewise-affine concave v through the breakpoints: slope 1 on (a_0, a_1)
// and 1/(sqrt(n) (a_{n+1} - a_n)) on (a_n, a_{n+1}) for n >= 1, v(0) = 0.
// Values telescope as v(a_{n+1}) = v(a_n) + 1/sqrt(n); the increment holds
// bit-exactly because values are accumulated from 1/sqrt(n) directly and
// slopes are derived from them. Slopes are nonincreasing (a tie with the
// unit first slope occurs exactly when a_2 - a_1 = 1) and strictly
// decreasing from the second interval on.
struct ConcaveMajorant {
  std::vector<double> breakpoints;  // a_0 .. a_m
  std::vector<double> values;       // v(a_i)
  std::vector<double> slopes;       // size breakpoints.size() - 1
  std::string f_text, g_text;
  int n_requested = 0;
  bool exhausted = false;

  // Piecewise-affine interpolation; beyond the last breakpoint extends
  // with the final slope. Exact at breakpoints.
  double evaluate(double x) const;

  std::string to_json() const;
  static ConcaveMajorant from_json(const std::string& text);
};

// Requires at least 3 breakpoints (two intervals) or std::invalid_argument.
ConcaveMajorant build_v(const SequenceBuild& seq);

// Partial-sum ratio (sum_{k=1}^{n} 1/sqrt(k)) / (sum_{k=1}^{n+2} 1/sqrt(k)),
// the proof-side floor for the ratio at points whose f-value lies in
// [a_n, a_{n+1}]. Requires n >= 1.
double partial_sum_bound(int n);

struct RatioDelta {
  double delta_hat = 0;      // min over the kept grid of v(f(x))/v(g(x))
  double argmin_x = 0;
  int argmin_n = 0;          // n with f(argmin_x) in [a_n, a_{n+1}]
  double bound = 0;          // partial_sum_bound(argmin_n)
  bool bound_holds = false;  // bound <= delta_hat
  bool truncated = false;    // some grid points left the built range
  std::vector<std::string> notes;
};

// Evaluates v(f(x))/v(g(x)) over the grid, restricted to x with
// f(x) >= a_1 (where the proof's floor applies) and with both f(x) and
// g(x) inside the built breakpoint range. Grid points outside are dropped
// and flagged via `truncated`. Throws std::invalid_argument if no grid
// point survives.
RatioDelta ratio_delta(const ConcaveMajorant& v, const MonotoneFunction& f,
                       const MonotoneFunction& g,
                       const std::vector<double>& x_grid);

// psi = v^{-1} as an Orlicz function (inverse of a concave increasing
// piecewise-affine map, hence convex). Requires >= 4 breakpoints.
// With strictify set, slope n of v is divided by (1 + 1e-6 n) before
// inversion; this breaks slope ties so that psi's slopes strictly
// increase, at the cost of the exact 1/sqrt(n) increments.
OrliczFunction orlicz_from_v(const ConcaveMajorant& v, bool strictify = false);

}  // namespace olab
