#include "olab/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "olab/errors.hpp"
#include "olab/numfmt.hpp"

namespace olab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Comparison slack for witness inequalities. Exact algebraic equalities
// (e.g. psi(2x) = 4 psi(x) for x^2 with beta = 2) must not flip on a ulp.
constexpr double kCmpTol = 1e-9;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// ln(e^u - 1) without forming e^u.
double log_expm1(double u) {
  if (u <= 0) return u == 0 ? -kInf : kNan;
  if (u < 0.6931471805599453) return std::log(std::expm1(u));
  return u + std::log1p(-std::exp(-u));
}

}  // namespace

OrliczFunction OrliczFunction::power(double p) {
  require(std::isfinite(p) && p >= 1.0, "power exponent must satisfy p >= 1");
  OrliczFunction f;
  f.family_ = OrliczFamily::kPower;
  f.p_ = p;
  return f;
}

OrliczFunction OrliczFunction::exp_power(double a, double b) {
  require(std::isfinite(a) && a > 0, "exp_power needs a > 0");
  require(std::isfinite(b) && b >= 1, "exp_power needs b >= 1");
  OrliczFunction f;
  f.family_ = OrliczFamily::kExpPower;
  f.a_ = a;
  f.b_ = b;
  return f;
}

OrliczFunction OrliczFunction::log_exp(double a, double b) {
  require(std::isfinite(a) && a > 0, "log_exp needs a > 0");
  require(std::isfinite(b) && b >= 1, "log_exp needs b >= 1");
  OrliczFunction f;
  f.family_ = OrliczFamily::kLogExp;
  f.a_ = a;
  f.b_ = b;
  return f;
}

OrliczFunction OrliczFunction::tabulated(std::vector<double> x,
                                         std::vector<double> y) {
  require(x.size() == y.size(), "tabulated: x and y sizes differ");
  require(x.size() >= 2, "tabulated: need at least 2 nodes");
  require(x.front() == 0.0 && y.front() == 0.0,
          "tabulated: table must start at (0, 0)");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(std::isfinite(x[i]) && std::isfinite(y[i]) && y[i] >= 0,
            "tabulated: nodes must be finite and nonnegative");
    if (i > 0) {
      require(x[i] > x[i - 1], "tabulated: x must be strictly increasing");
      require(y[i] >= y[i - 1], "tabulated: y must be nondecreasing");
    }
  }
  OrliczFunction f;
  f.family_ = OrliczFamily::kTabulated;
  f.xs_ = std::move(x);
  f.ys_ = std::move(y);
  return f;
}

OrliczFunction OrliczFunction::piecewise_affine_inverse(std::vector<double> a,
                                                        std::vector<double> v) {
  require(a.size() == v.size(), "piecewise_affine_inverse: size mismatch");
  require(a.size() >= 2, "piecewise_affine_inverse: need at least 2 breakpoints");
  require(a.front() == 0.0 && v.front() == 0.0,
          "piecewise_affine_inverse: v(0) = 0 required");
  double prev_slope = kInf;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    require(std::isfinite(a[i + 1]) && std::isfinite(v[i + 1]),
            "piecewise_affine_inverse: nodes must be finite");
    require(a[i + 1] > a[i] && v[i + 1] > v[i],
            "piecewise_affine_inverse: v must be strictly increasing");
    const double s = (v[i + 1] - v[i]) / (a[i + 1] - a[i]);
    require(s <= prev_slope * (1 + 1e-12),
            "piecewise_affine_inverse: v must be concave (slopes nonincreasing)");
    prev_slope = s;
  }
  OrliczFunction f;
  f.family_ = OrliczFamily::kPiecewiseAffineInverse;
  f.xs_ = std::move(a);
  f.ys_ = std::move(v);
  return f;
}

double OrliczFunction::domain_max() const {
  return family_ == OrliczFamily::kTabulated ? xs_.back() : kInf;
}

double OrliczFunction::evaluate(double x) const {
  require(std::isfinite(x) && x >= 0, "psi argument must be finite and >= 0");
  switch (family_) {
    case OrliczFamily::kPower:
      return x == 0 ? 0.0 : std::pow(x, p_);
    case OrliczFamily::kExpPower:
      return std::expm1(a_ * std::pow(x, b_));
    case OrliczFamily::kLogExp:
      return std::expm1(a_ * std::pow(std::log1p(x), b_));
    case OrliczFamily::kPiecewiseAffineInverse: {
      // psi maps the v-value axis (ys_) back to the breakpoint axis (xs_).
      if (x >= ys_.back()) {
        const std::size_t n = ys_.size();
        const double s =
            (xs_[n - 1] - xs_[n - 2]) / (ys_[n - 1] - ys_[n - 2]);
        return xs_.back() + (x - ys_.back()) * s;
      }
      const auto it = std::upper_bound(ys_.begin(), ys_.end(), x);
      const std::size_t i = (it == ys_.begin()) ? 0 : (it - ys_.begin() - 1);
      const double t = (x - ys_[i]) / (ys_[i + 1] - ys_[i]);
      return xs_[i] + t * (xs_[i + 1] - xs_[i]);
    }
    case OrliczFamily::kTabulated: {
      if (x > xs_.back())
        throw std::domain_error("tabulated psi evaluated beyond its table");
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      if (it == xs_.end()) return ys_.back();
      const std::size_t i = (it == xs_.begin()) ? 0 : (it - xs_.begin() - 1);
      const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
      return ys_[i] + t * (ys_[i + 1] - ys_[i]);
    }
  }
  return kNan;
}

double OrliczFunction::log_evaluate(double x) const {
  require(std::isfinite(x) && x >= 0, "psi argument must be finite and >= 0");
  switch (family_) {
    case OrliczFamily::kPower:
      return p_ * std::log(x);
    case OrliczFamily::kExpPower:
      return log_expm1(a_ * std::pow(x, b_));
    case OrliczFamily::kLogExp:
      return log_expm1(a_ * std::pow(std::log1p(x), b_));
    case OrliczFamily::kPiecewiseAffineInverse:
    case OrliczFamily::kTabulated:
      return std::log(evaluate(x));
  }
  return kNan;
}

double OrliczFunction::inverse(double y, double rel_tol) const {
  if (!std::isfinite(y) || y < 0)
    throw std::domain_error("psi inverse argument out of range");
  if (y == 0) return 0.0;
  switch (family_) {
    case OrliczFamily::kPower:
      return std::pow(y, 1.0 / p_);
    case OrliczFamily::kExpPower:
      return std::pow(std::log1p(y) / a_, 1.0 / b_);
    case OrliczFamily::kPiecewiseAffineInverse: {
      // The inverse of psi is the stored v itself; evaluate it exactly.
      if (y >= xs_.back()) {
        const std::size_t n = xs_.size();
        const double s =
            (ys_[n - 1] - ys_[n - 2]) / (xs_[n - 1] - xs_[n - 2]);
        return ys_.back() + (y - xs_.back()) * s;
      }
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), y);
      const std::size_t i = (it == xs_.begin()) ? 0 : (it - xs_.begin() - 1);
      const double t = (y - xs_[i]) / (xs_[i + 1] - xs_[i]);
      return ys_[i] + t * (ys_[i + 1] - ys_[i]);
    }
    default:
      break;
  }
  // Bracketing bisection on a monotone function.
  if (family_ == OrliczFamily::kTabulated && y > ys_.back())
    throw std::domain_error("psi inverse argument beyond tabulated range");
  double lo = 0.0;
  double hi = 1.0;
  const double hi_max = domain_max();
  while (evaluate(std::min(hi, hi_max)) < y) {
    if (hi >= hi_max) break;
    hi = std::min(hi * 2, hi_max);
  }
  hi = std::min(hi, hi_max);
  const double goal = rel_tol * std::max(y, 1.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = evaluate(mid);
    if (std::abs(val - y) <= goal) return mid;
    (val < y ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * std::max(hi, 1.0)) break;
  }
  return 0.5 * (lo + hi);
}

std::string OrliczFunction::describe() const {
  std::ostringstream os;
  switch (family_) {
    case OrliczFamily::kPower:
      os << "power(p=" << format_double(p_) << ")";
      break;
    case OrliczFamily::kExpPower:
      os << "exp_power(a=" << format_double(a_) << ",b=" << format_double(b_) << ")";
      break;
    case OrliczFamily::kLogExp:
      os << "log_exp(a=" << format_double(a_) << ",b=" << format_double(b_) << ")";
      break;
    case OrliczFamily::kPiecewiseAffineInverse:
      os << "piecewise_affine_inverse(nodes=" << xs_.size() << ")";
      break;
    case OrliczFamily::kTabulated:
      os << "tabulated(nodes=" << xs_.size() << ")";
      break;
  }
  return os.str();
}

std::string OrliczFunction::to_json() const {
  nlohmann::json j;
  switch (family_) {
    case OrliczFamily::kPower:
      j["family"] = "power";
      j["params"] = {{"p", p_}};
      break;
    case OrliczFamily::kExpPower:
      j["family"] = "exp_power";
      j["params"] = {{"a", a_}, {"b", b_}};
      break;
    case OrliczFamily::kLogExp:
      j["family"] = "log_exp";
      j["params"] = {{"a", a_}, {"b", b_}};
      break;
    case OrliczFamily::kPiecewiseAffineInverse:
      j["family"] = "piecewise_affine_inverse";
      j["params"] = {{"breakpoints", xs_}, {"values", ys_}};
      break;
    case OrliczFamily::kTabulated:
      j["family"] = "tabulated";
      j["params"] = {{"x", xs_}, {"y", ys_}};
      break;
  }
  return j.dump();
}

OrliczFunction OrliczFunction::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("orlicz spec is not valid JSON: ") + e.what());
  }
  try {
    const std::string family = j.at("family").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    if (family == "power") return power(params.at("p").get<double>());
    if (family == "exp_power")
      return exp_power(params.at("a").get<double>(), params.at("b").get<double>());
    if (family == "log_exp")
      return log_exp(params.at("a").get<double>(), params.at("b").get<double>());
    if (family == "tabulated")
      return tabulated(params.at("x").get<std::vector<double>>(),
                       params.at("y").get<std::vector<double>>());
    if (family == "piecewise_affine_inverse")
      return piecewise_affine_inverse(
          params.at("breakpoints").get<std::vector<double>>(),
          params.at("values").get<std::vector<double>>());
    throw ConfigError("unknown orlicz family: " + family);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("orlicz spec malformed: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("orlicz spec invalid: ") + e.what());
  }
}

std::vector<OrliczFunction> builtin_battery() {
  return {OrliczFunction::power(2), OrliczFunction::power(4),
          OrliczFunction::exp_power(1, 1), OrliczFunction::exp_power(1, 2),
          OrliczFunction::log_exp(1, 2)};
}

// ---------------------------------------------------------------------------
// Certification.

const char* to_string(GrowthCondition c) {
  switch (c) {
    case GrowthCondition::kNabla2: return "nabla2";
    case GrowthCondition::kNabla0: return "nabla0";
    case GrowthCondition::kUniformNabla0: return "uniform_nabla0";
    case GrowthCondition::kDelta2: return "delta2";
    case GrowthCondition::kDeltaSharp2: return "delta_sharp2";
  }
  return "?";
}

GrowthCondition growth_condition_from_string(const std::string& s) {
  if (s == "nabla2") return GrowthCondition::kNabla2;
  if (s == "nabla0") return GrowthCondition::kNabla0;
  if (s == "uniform_nabla0") return GrowthCondition::kUniformNabla0;
  if (s == "delta2") return GrowthCondition::kDelta2;
  if (s == "delta_sharp2") return GrowthCondition::kDeltaSharp2;
  throw std::invalid_argument("unknown growth condition: " + s);
}

std::vector<double> GridSpec::points() const {
  require(x_min > 0 && std::isfinite(x_min), "grid x_min must be positive");
  require(ratio > 1 && std::isfinite(ratio), "grid ratio must exceed 1");
  require(x_max > x_min && std::isfinite(x_max), "grid x_max must exceed x_min");
  std::vector<double> pts;
  for (double x = x_min; x <= x_max * (1 + 1e-12); x *= ratio) pts.push_back(x);
  require(pts.size() >= 8, "grid too small: need at least 8 points");
  return pts;
}

namespace {

// ln psi(factor * x) per grid point; NaN marks points past the domain.
std::vector<double> logs_at(const OrliczFunction& psi,
                            const std::vector<double>& pts, double factor) {
  const double dmax = psi.domain_max();
  std::vector<double> out(pts.size(), kNan);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double arg = pts[i] * factor;
    if (arg <= dmax) out[i] = psi.log_evaluate(arg);
  }
  return out;
}

// Outcome of testing a single witness over the grid tail.
struct WitnessScan {
  enum Kind { kPassFrom, kFailTop, kUnusableTop } kind;
  int i0 = -1;  // for kPassFrom: first index the inequality holds from
};

// Scans a pointwise inequality ok(i). `limit` is the first index that could
// not be evaluated (points past it are unusable; unusable regions are always
// suffixes here since factors are >= 1).
WitnessScan scan_pointwise(const std::vector<char>& ok, int limit, int first_top,
                           int n) {
  int last_viol = -1;
  for (int i = 0; i < limit; ++i)
    if (!ok[i]) last_viol = i;
  if (last_viol >= first_top) return {WitnessScan::kFailTop, -1};
  if (limit < n) return {WitnessScan::kUnusableTop, -1};
  return {WitnessScan::kPassFrom, last_viol + 1};
}

int usable_limit(const std::vector<double>& a, const std::vector<double>& b) {
  int limit = 0;
  const int n = static_cast<int>(a.size());
  while (limit < n && std::isfinite(a[limit]) && std::isfinite(b[limit])) ++limit;
  return limit;
}

// The pair condition D(x) <= E(y) + tol for all i0 <= x <= y. Returns the
// minimal usable start index, or -1 if none works within [0, limit).
int pair_start_index(const std::vector<double>& D, const std::vector<double>& E,
                     int limit) {
  for (int i0 = 0; i0 < limit; ++i0) {
    double dmax = -kInf;
    bool ok = true;
    for (int j = i0; j < limit; ++j) {
      dmax = std::max(dmax, D[j]);
      if (dmax > E[j] + kCmpTol) {
        ok = false;
        break;
      }
    }
    if (ok) return i0;
  }
  return -1;
}

WitnessScan scan_pair(const std::vector<double>& D, const std::vector<double>& E,
                      int first_top, int n) {
  const int limit = usable_limit(D, E);
  if (limit <= first_top) return {WitnessScan::kUnusableTop, -1};
  const int i0 = pair_start_index(D, E, limit);
  if (i0 >= 0 && i0 <= first_top && limit == n)
    return {WitnessScan::kPassFrom, i0};
  // Decisive failure needs a violation among pairs inside the visible top
  // decade; otherwise the truncated tail leaves the question open.
  double dmax = -kInf;
  for (int j = first_top; j < limit; ++j) {
    dmax = std::max(dmax, D[j]);
    if (dmax > E[j] + kCmpTol) return {WitnessScan::kFailTop, -1};
  }
  return limit == n && i0 >= 0 ? WitnessScan{WitnessScan::kPassFrom, i0}
                               : WitnessScan{WitnessScan::kUnusableTop, -1};
}

std::vector<double> geometric(double lo, double hi, double ratio) {
  std::vector<double> v;
  for (double x = lo; x <= hi * (1 + 1e-12); x *= ratio) v.push_back(x);
  return v;
}

const std::vector<double>& nabla2_betas() {
  static const std::vector<double> v = {1.5, 2.0, 4.0};
  return v;
}
const std::vector<double>& doubling_constants() {
  static const std::vector<double> v = geometric(2.0, 1048576.0, 2.0);  // 2..2^20
  return v;
}
const std::vector<double>& nabla0_constants() {
  static const std::vector<double> v = [] {
    std::vector<double> c = {1.0};
    const auto more = geometric(2.0, 1048576.0, 2.0);
    c.insert(c.end(), more.begin(), more.end());
    return c;
  }();
  return v;
}
const std::vector<double>& b_grid() {
  static const std::vector<double> v = {2.0, 4.0, 8.0, 16.0};
  return v;
}

int first_top_index(const std::vector<double>& pts, int base_limit) {
  // Top decade of the usable grid: points within a factor 10 of the largest.
  const double x_top = pts[base_limit - 1] / 10.0;
  int i = base_limit - 1;
  while (i > 0 && pts[i - 1] > x_top) --i;
  return i;
}

}  // namespace

ClassCertificate certify(const OrliczFunction& psi, GrowthCondition condition,
                         const GridSpec& grid) {
  const std::vector<double> pts = grid.points();
  const int n = static_cast<int>(pts.size());

  ClassCertificate cert;
  cert.condition = condition;
  cert.grid = pts;
  cert.psi = psi.describe();

  const std::vector<double> base = logs_at(psi, pts, 1.0);
  int base_limit = 0;
  while (base_limit < n && std::isfinite(base[base_limit])) ++base_limit;
  if (base_limit < 8) {
    cert.verdict = Verdict::kInconclusive;
    return cert;
  }
  const int first_top = first_top_index(pts, base_limit);

  // Single-witness conditions share one scan loop.
  const auto run_single = [&](const std::vector<double>& witnesses,
                              auto&& ok_at) {
    bool all_fail_top = true;
    for (const double w : witnesses) {
      const auto [okvec, limit] = ok_at(w);
      const WitnessScan s = scan_pointwise(okvec, limit, first_top, base_limit);
      if (s.kind == WitnessScan::kPassFrom) {
        cert.verdict = Verdict::kPass;
        cert.x0 = pts[s.i0];
        return w;
      }
      if (s.kind != WitnessScan::kFailTop) all_fail_top = false;
    }
    cert.verdict = all_fail_top ? Verdict::kFail : Verdict::kInconclusive;
    return 0.0;
  };

  switch (condition) {
    case GrowthCondition::kNabla2: {
      cert.beta = run_single(nabla2_betas(), [&](double beta) {
        const auto scaled = logs_at(psi, pts, beta);
        std::vector<char> ok(n, 1);
        int limit = usable_limit(base, scaled);
        limit = std::min(limit, base_limit);
        const double gain = std::log(2 * beta);
        for (int i = 0; i < limit; ++i)
          ok[i] = scaled[i] >= gain + base[i] - kCmpTol;
        return std::pair<std::vector<char>, int>(std::move(ok), limit);
      });
      break;
    }
    case GrowthCondition::kDelta2: {
      cert.K = run_single(doubling_constants(), [&](double K) {
        const auto scaled = logs_at(psi, pts, 2.0);
        std::vector<char> ok(n, 1);
        int limit = std::min(usable_limit(base, scaled), base_limit);
        const double cap = std::log(K);
        for (int i = 0; i < limit; ++i)
          ok[i] = scaled[i] <= cap + base[i] + kCmpTol;
        return std::pair<std::vector<char>, int>(std::move(ok), limit);
      });
      break;
    }
    case GrowthCondition::kDeltaSharp2: {
      cert.C = run_single(doubling_constants(), [&](double C) {
        const auto scaled = logs_at(psi, pts, C);
        std::vector<char> ok(n, 1);
        int limit = std::min(usable_limit(base, scaled), base_limit);
        for (int i = 0; i < limit; ++i)
          ok[i] = 2 * base[i] <= scaled[i] + kCmpTol;
        return std::pair<std::vector<char>, int>(std::move(ok), limit);
      });
      break;
    }
    case GrowthCondition::kNabla0:
    case GrowthCondition::kUniformNabla0: {
      cert.B_grid = b_grid();
      // D[B](x) = ln psi(Bx) - ln psi(x); E[B,C](y) = ln psi(CBy) - ln psi(y).
      const auto ratio_logs = [&](double factor) {
        auto v = logs_at(psi, pts, factor);
        for (int i = 0; i < n; ++i) v[i] -= base[i];
        return v;
      };
      std::vector<std::vector<double>> D;
      for (const double B : b_grid()) D.push_back(ratio_logs(B));

      const auto scan_BC = [&](std::size_t bi, double C) {
        const auto E = ratio_logs(b_grid()[bi] * C);
        return scan_pair(D[bi], E, first_top, base_limit);
      };

      if (condition == GrowthCondition::kNabla0) {
        cert.C_B.assign(b_grid().size(), 0.0);
        std::vector<int> starts(b_grid().size(), -1);
        bool any_decisive_fail = false, all_found = true;
        for (std::size_t bi = 0; bi < b_grid().size(); ++bi) {
          bool all_fail_top = true;
          bool found = false;
          for (const double C : nabla0_constants()) {
            const WitnessScan s = scan_BC(bi, C);
            if (s.kind == WitnessScan::kPassFrom) {
              cert.C_B[bi] = C;
              starts[bi] = s.i0;
              found = true;
              break;
            }
            if (s.kind != WitnessScan::kFailTop) all_fail_top = false;
          }
          if (!found) {
            all_found = false;
            if (all_fail_top) any_decisive_fail = true;
          }
        }
        if (all_found) {
          cert.verdict = Verdict::kPass;
          cert.x0 = pts[*std::max_element(starts.begin(), starts.end())];
        } else {
          cert.verdict =
              any_decisive_fail ? Verdict::kFail : Verdict::kInconclusive;
        }
      } else {
        bool all_decisive_fail = true;
        for (const double C : nabla0_constants()) {
          bool pass_all = true, decisive = false;
          int start = 0;
          for (std::size_t bi = 0; bi < b_grid().size(); ++bi) {
            const WitnessScan s = scan_BC(bi, C);
            if (s.kind != WitnessScan::kPassFrom) {
              pass_all = false;
              if (s.kind == WitnessScan::kFailTop) decisive = true;
              break;
            }
            start = std::max(start, s.i0);
          }
          if (pass_all) {
            cert.verdict = Verdict::kPass;
            cert.C = C;
            cert.x0 = pts[start];
            return cert;
          }
          if (!decisive) all_decisive_fail = false;
        }
        cert.verdict =
            all_decisive_fail ? Verdict::kFail : Verdict::kInconclusive;
      }
      break;
    }
  }
  return cert;
}

std::vector<ClassCertificate> certify_all(const OrliczFunction& psi,
                                          const GridSpec& grid) {
  std::vector<ClassCertificate> out;
  for (const GrowthCondition c :
       {GrowthCondition::kNabla2, GrowthCondition::kNabla0,
        GrowthCondition::kUniformNabla0, GrowthCondition::kDelta2,
        GrowthCondition::kDeltaSharp2})
    out.push_back(certify(psi, c, grid));
  return out;
}

bool revalidate(const ClassCertificate& cert, const OrliczFunction& psi) {
  if (cert.verdict != Verdict::kPass) return true;
  const auto& pts = cert.grid;
  const int n = static_cast<int>(pts.size());
  int i0 = 0;
  while (i0 < n && pts[i0] < cert.x0) ++i0;
  const auto L = [&](double x) { return psi.log_evaluate(x); };

  switch (cert.condition) {
    case GrowthCondition::kNabla2: {
      for (int i = i0; i < n; ++i)
        if (L(cert.beta * pts[i]) < std::log(2 * cert.beta) + L(pts[i]) - kCmpTol)
          return false;
      return true;
    }
    case GrowthCondition::kDelta2: {
      for (int i = i0; i < n; ++i)
        if (L(2 * pts[i]) > std::log(cert.K) + L(pts[i]) + kCmpTol) return false;
      return true;
    }
    case GrowthCondition::kDeltaSharp2: {
      for (int i = i0; i < n; ++i)
        if (2 * L(pts[i]) > L(cert.C * pts[i]) + kCmpTol) return false;
      return true;
    }
    case GrowthCondition::kNabla0:
    case GrowthCondition::kUniformNabla0: {
      for (std::size_t bi = 0; bi < cert.B_grid.size(); ++bi) {
        const double B = cert.B_grid[bi];
        const double C =
            cert.condition == GrowthCondition::kNabla0 ? cert.C_B[bi] : cert.C;
        double dmax = -kInf;
        for (int j = i0; j < n; ++j) {
          dmax = std::max(dmax, L(B * pts[j]) - L(pts[j]));
          if (dmax > L(C * B * pts[j]) - L(pts[j]) + kCmpTol) return false;
        }
      }
      return true;
    }
  }
  return false;
}

std::vector<ImplicationCheck> check_implications(
    const std::vector<ClassCertificate>& certs) {
  const auto find = [&](GrowthCondition c) -> const ClassCertificate* {
    for (const auto& cert : certs)
      if (cert.condition == c) return &cert;
    return nullptr;
  };
  const auto judge = [&](GrowthCondition from, GrowthCondition to,
                         const char* name) {
    ImplicationCheck chk{name, "not_applicable"};
    const auto* a = find(from);
    const auto* b = find(to);
    if (a && b) {
      if (a->verdict == Verdict::kPass && b->verdict == Verdict::kFail)
        chk.status = "violated";
      else
        chk.status = "consistent";
    }
    return chk;
  };
  return {judge(GrowthCondition::kUniformNabla0, GrowthCondition::kNabla2,
                "uniform_nabla0_implies_nabla2"),
          judge(GrowthCondition::kDeltaSharp2, GrowthCondition::kUniformNabla0,
                "delta_sharp2_implies_uniform_nabla0")};
}

std::string ClassCertificate::to_json() const {
  nlohmann::json j;
  j["condition"] = olab::to_string(condition);
  j["verdict"] = olab::to_string(verdict);
  j["psi"] = psi;
  j["x0"] = x0;
  j["grid"] = grid;
  switch (condition) {
    case GrowthCondition::kNabla2: j["beta"] = beta; break;
    case GrowthCondition::kDelta2: j["K"] = K; break;
    case GrowthCondition::kDeltaSharp2: j["C"] = C; break;
    case GrowthCondition::kUniformNabla0:
      j["C"] = C;
      j["B_grid"] = B_grid;
      break;
    case GrowthCondition::kNabla0:
      j["B_grid"] = B_grid;
      j["C_B"] = C_B;
      break;
  }
  return j.dump();
}

ClassCertificate ClassCertificate::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("certificate is not valid JSON: ") + e.what());
  }
  ClassCertificate c;
  try {
    c.condition = growth_condition_from_string(j.at("condition"));
    c.verdict = verdict_from_string(j.at("verdict"));
    c.psi = j.value("psi", "");
    c.x0 = j.value("x0", 0.0);
    c.grid = j.value("grid", std::vector<double>{});
    c.beta = j.value("beta", 0.0);
    c.K = j.value("K", 0.0);
    c.C = j.value("C", 0.0);
    c.B_grid = j.value("B_grid", std::vector<double>{});
    c.C_B = j.value("C_B", std::vector<double>{});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("certificate malformed: ") + e.what());
  }
  return c;
}

}  // namespace olab
