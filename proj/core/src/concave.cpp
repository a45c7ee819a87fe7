#include "olab/concave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "olab/errors.hpp"

namespace olab {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_domain(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

// Index of the segment [x_i, x_{i+1}) containing x; the last segment is
// closed on the right.
std::size_t segment_of(const std::vector<double>& xs, double x) {
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return xs.size() - 2;
  if (it == xs.begin()) return 0;
  return static_cast<std::size_t>(it - xs.begin()) - 1;
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double x) {
  const std::size_t i = segment_of(xs, x);
  const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + t * (ys[i + 1] - ys[i]);
}

}  // namespace

MonotoneFunction MonotoneFunction::power(double q) {
  require(std::isfinite(q) && q > 0, "monotone power needs q > 0");
  MonotoneFunction f;
  f.kind_ = MonotoneKind::kPower;
  f.q_ = q;
  return f;
}

MonotoneFunction MonotoneFunction::exp_form(double a, double b) {
  require(std::isfinite(a) && a > 0, "monotone exp_form needs a > 0");
  require(std::isfinite(b) && b > 0, "monotone exp_form needs b > 0");
  MonotoneFunction f;
  f.kind_ = MonotoneKind::kExpForm;
  f.a_ = a;
  f.b_ = b;
  return f;
}

MonotoneFunction MonotoneFunction::log_form(double a, double b) {
  require(std::isfinite(a) && a > 0, "monotone log_form needs a > 0");
  require(std::isfinite(b) && b > 0, "monotone log_form needs b > 0");
  MonotoneFunction f;
  f.kind_ = MonotoneKind::kLogForm;
  f.a_ = a;
  f.b_ = b;
  return f;
}

MonotoneFunction MonotoneFunction::tabulated(std::vector<double> x,
                                             std::vector<double> y) {
  require(x.size() == y.size(), "tabulated monotone: size mismatch");
  require(x.size() >= 2, "tabulated monotone: need at least 2 nodes");
  require(x.front() == 0.0, "tabulated monotone: grid must start at 0");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    require(std::isfinite(x[i + 1]) && std::isfinite(y[i + 1]),
            "tabulated monotone: nodes must be finite");
    require(x[i + 1] > x[i] && y[i + 1] > y[i],
            "tabulated monotone: nodes must be strictly increasing");
  }
  require(std::isfinite(y.front()) && y.front() >= 0,
          "tabulated monotone: values must be >= 0");
  MonotoneFunction f;
  f.kind_ = MonotoneKind::kTabulated;
  f.xs_ = std::move(x);
  f.ys_ = std::move(y);
  return f;
}

double MonotoneFunction::evaluate(double x) const {
  require_domain(std::isfinite(x) && x >= 0,
                 "monotone argument must be finite and >= 0");
  switch (kind_) {
    case MonotoneKind::kPower:
      return x == 0 ? 0.0 : std::pow(x, q_);
    case MonotoneKind::kExpForm:
      return std::expm1(a_ * std::pow(x, b_));
    case MonotoneKind::kLogForm:
      return a_ * std::pow(std::log1p(x), b_);
    case MonotoneKind::kTabulated:
      require_domain(x <= xs_.back(),
                     "tabulated monotone: argument beyond the table");
      return interp(xs_, ys_, x);
  }
  return 0;
}

double MonotoneFunction::inverse(double y) const {
  require_domain(std::isfinite(y), "monotone inverse needs a finite value");
  switch (kind_) {
    case MonotoneKind::kPower:
      require_domain(y >= 0, "monotone power inverse needs y >= 0");
      return y == 0 ? 0.0 : std::pow(y, 1.0 / q_);
    case MonotoneKind::kExpForm:
      require_domain(y >= 0, "monotone exp_form inverse needs y >= 0");
      return std::pow(std::log1p(y) / a_, 1.0 / b_);
    case MonotoneKind::kLogForm:
      require_domain(y >= 0, "monotone log_form inverse needs y >= 0");
      return std::expm1(std::pow(y / a_, 1.0 / b_));
    case MonotoneKind::kTabulated:
      require_domain(y >= ys_.front() && y <= ys_.back(),
                     "tabulated monotone: value outside the attained range");
      return interp(ys_, xs_, y);
  }
  return 0;
}

double MonotoneFunction::domain_max() const {
  return kind_ == MonotoneKind::kTabulated ? xs_.back() : kInf;
}

double MonotoneFunction::range_max() const {
  return kind_ == MonotoneKind::kTabulated ? ys_.back() : kInf;
}

std::string MonotoneFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case MonotoneKind::kPower:
      os << "x^" << q_;
      break;
    case MonotoneKind::kExpForm:
      os << "e^(" << a_ << " x^" << b_ << ") - 1";
      break;
    case MonotoneKind::kLogForm:
      os << a_ << " ln(1+x)^" << b_;
      break;
    case MonotoneKind::kTabulated:
      os << "tabulated(" << xs_.size() << " nodes on [0, " << xs_.back()
         << "])";
      break;
  }
  return os.str();
}

std::string MonotoneFunction::to_json() const {
  json j;
  switch (kind_) {
    case MonotoneKind::kPower:
      j["kind"] = "power";
      j["q"] = q_;
      break;
    case MonotoneKind::kExpForm:
      j["kind"] = "exp_form";
      j["a"] = a_;
      j["b"] = b_;
      break;
    case MonotoneKind::kLogForm:
      j["kind"] = "log_form";
      j["a"] = a_;
      j["b"] = b_;
      break;
    case MonotoneKind::kTabulated:
      j["kind"] = "tabulated";
      j["x"] = xs_;
      j["y"] = ys_;
      break;
  }
  return j.dump();
}

MonotoneFunction MonotoneFunction::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return power(j.at("q").get<double>());
    if (kind == "exp_form")
      return exp_form(j.at("a").get<double>(), j.at("b").get<double>());
    if (kind == "log_form")
      return log_form(j.at("a").get<double>(), j.at("b").get<double>());
    if (kind == "tabulated")
      return tabulated(j.at("x").get<std::vector<double>>(),
                       j.at("y").get<std::vector<double>>());
    throw ConfigError("unknown monotone function kind: " + kind);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("monotone function spec malformed: ") +
                      e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("monotone function spec invalid: ") +
                      e.what());
  }
}

SequenceBuild build_sequence(const MonotoneFunction& f,
                             const MonotoneFunction& g, int n_max) {
  require(n_max >= 3, "build_sequence needs n_max >= 3");
  SequenceBuild out;
  out.n_requested = n_max;
  out.f_text = f.describe();
  out.g_text = g.describe();
  out.a = {0.0, 1.0};
  while (static_cast<int>(out.a.size()) <= n_max) {
    const double prev = out.a[out.a.size() - 1];
    const double prev2 = out.a[out.a.size() - 2];
    if (prev > f.range_max()) {
      out.exhausted = true;
      break;
    }
    // Empty constraint set {f <= a_{n+1}}: the spacing clause alone decides.
    double b = -kInf;
    if (prev >= f.evaluate(0.0)) {
      const double x_star = f.inverse(prev);
      if (x_star > g.domain_max()) {
        out.exhausted = true;
        break;
      }
      b = g.evaluate(x_star);
    }
    const double next = std::max(b, 2 * prev - prev2);
    if (!std::isfinite(next)) {
      out.exhausted = true;
      break;
    }
    out.a.push_back(next);
  }
  return out;
}

ConcaveMajorant build_v(const SequenceBuild& seq) {
  require(seq.a.size() >= 3, "build_v needs at least 3 breakpoints");
  require(seq.a[0] == 0.0 && seq.a[1] == 1.0,
          "build_v needs a_0 = 0 and a_1 = 1");
  ConcaveMajorant v;
  v.breakpoints = seq.a;
  v.f_text = seq.f_text;
  v.g_text = seq.g_text;
  v.n_requested = seq.n_requested;
  v.exhausted = seq.exhausted;
  v.values.resize(seq.a.size());
  v.slopes.resize(seq.a.size() - 1);
  v.values[0] = 0.0;
  v.values[1] = 1.0;
  v.slopes[0] = 1.0;
  for (std::size_t n = 1; n + 1 < seq.a.size(); ++n) {
    const double inc = 1.0 / std::sqrt(static_cast<double>(n));
    v.values[n + 1] = v.values[n] + inc;
    v.slopes[n] = inc / (seq.a[n + 1] - seq.a[n]);
  }
  return v;
}

double ConcaveMajorant::evaluate(double x) const {
  require_domain(std::isfinite(x) && x >= 0,
                 "majorant argument must be finite and >= 0");
  if (x >= breakpoints.back())
    return values.back() + (x - breakpoints.back()) * slopes.back();
  const std::size_t i = segment_of(breakpoints, x);
  return values[i] + (x - breakpoints[i]) * slopes[i];
}

std::string ConcaveMajorant::to_json() const {
  json j;
  j["breakpoints"] = breakpoints;
  j["values"] = values;
  j["slopes"] = slopes;
  j["f"] = f_text;
  j["g"] = g_text;
  j["n_requested"] = n_requested;
  j["exhausted"] = exhausted;
  return j.dump(2);
}

ConcaveMajorant ConcaveMajorant::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ConcaveMajorant v;
    v.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    v.values = j.at("values").get<std::vector<double>>();
    v.slopes = j.at("slopes").get<std::vector<double>>();
    v.f_text = j.at("f").get<std::string>();
    v.g_text = j.at("g").get<std::string>();
    v.n_requested = j.at("n_requested").get<int>();
    v.exhausted = j.at("exhausted").get<bool>();
    if (v.breakpoints.size() < 3 || v.values.size() != v.breakpoints.size() ||
        v.slopes.size() + 1 != v.breakpoints.size())
      throw ConfigError("majorant arrays inconsistent");
    if (v.breakpoints[0] != 0.0 || v.values[0] != 0.0)
      throw ConfigError("majorant must start at (0, 0)");
    for (std::size_t i = 0; i + 1 < v.breakpoints.size(); ++i) {
      if (!(v.breakpoints[i + 1] > v.breakpoints[i]) ||
          !(v.values[i + 1] > v.values[i]))
        throw ConfigError("majorant must be strictly increasing");
      if (i > 0 && !(v.slopes[i] <= v.slopes[i - 1] * (1 + 1e-12)))
        throw ConfigError("majorant slopes must be nonincreasing");
    }
    return v;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("majorant spec malformed: ") + e.what());
  }
}

double partial_sum_bound(int n) {
  require(n >= 1, "partial_sum_bound needs n >= 1");
  double num = 0.0;
  for (int k = 1; k <= n; ++k) num += 1.0 / std::sqrt(static_cast<double>(k));
  double den = num;
  for (int k = n + 1; k <= n + 2; ++k)
    den += 1.0 / std::sqrt(static_cast<double>(k));
  return num / den;
}

RatioDelta ratio_delta(const ConcaveMajorant& v, const MonotoneFunction& f,
                       const MonotoneFunction& g,
                       const std::vector<double>& x_grid) {
  const double a1 = v.breakpoints[1];
  const double a_last = v.breakpoints.back();
  RatioDelta out;
  out.delta_hat = kInf;
  bool zero_denominator = false;
  for (double x : x_grid) {
    if (!(std::isfinite(x) && x >= 0) || x > f.domain_max() ||
        x > g.domain_max()) {
      out.truncated = true;
      continue;
    }
    const double fx = f.evaluate(x);
    const double gx = g.evaluate(x);
    if (fx < a1) continue;
    if (fx > a_last || gx > a_last) {
      out.truncated = true;
      continue;
    }
    const double denom = v.evaluate(gx);
    if (denom <= 0) {
      zero_denominator = true;
      continue;
    }
    const double ratio = v.evaluate(fx) / denom;
    if (ratio < out.delta_hat) {
      out.delta_hat = ratio;
      out.argmin_x = x;
      out.argmin_n = static_cast<int>(segment_of(v.breakpoints, fx));
    }
  }
  require(std::isfinite(out.delta_hat),
          "ratio_delta: no grid point reaches past the first breakpoint "
          "inside the built range");
  if (out.delta_hat <= 0)
    throw std::runtime_error("ratio_delta: nonpositive ratio; majorant broken");
  out.bound = partial_sum_bound(out.argmin_n);
  out.bound_holds = out.bound <= out.delta_hat + 1e-12;
  if (out.truncated)
    out.notes.push_back("grid truncated to the built breakpoint range");
  if (zero_denominator)
    out.notes.push_back("grid points with v(g(x)) = 0 were skipped");
  return out;
}

OrliczFunction orlicz_from_v(const ConcaveMajorant& v, bool strictify) {
  require(v.breakpoints.size() >= 4,
          "orlicz_from_v needs at least 4 breakpoints");
  if (!strictify)
    return OrliczFunction::piecewise_affine_inverse(v.breakpoints, v.values);
  std::vector<double> values(v.values.size());
  values[0] = 0.0;
  for (std::size_t n = 0; n + 1 < v.breakpoints.size(); ++n) {
    const double slope = v.slopes[n] / (1.0 + 1e-6 * static_cast<double>(n));
    values[n + 1] =
        values[n] + slope * (v.breakpoints[n + 1] - v.breakpoints[n]);
  }
  return OrliczFunction::piecewise_affine_inverse(v.breakpoints, values);
}

}  // namespace olab
