#include "olab/luxemburg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "olab/errors.hpp"
#include "olab/numfmt.hpp"
#include "olab/rng.hpp"

namespace olab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kHardyStream = 11;
constexpr std::uint64_t kBergmanStream = 12;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// sum_i w_i psi(f_i / C); +inf past the domain of psi, so an infeasible C
// simply reads as integral > 1.
double unit_integral(const OrliczFunction& psi, const SampledFunction& f,
                     double C) {
  const double dmax = psi.domain_max();
  double sum = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double arg = f.values[i] / C;
    if (arg > dmax) return kInf;
    sum += f.weights[i] * psi.evaluate(arg);
    if (sum == kInf) return kInf;
  }
  return sum;
}

// psi^{-1}(y), capped to the table range for bounded (tabulated) psi.
double inverse_capped(const OrliczFunction& psi, double y) {
  if (psi.family() == OrliczFamily::kTabulated) {
    const double ymax = psi.table_y().back();
    if (y >= ymax) return psi.domain_max();
  }
  return psi.inverse(y);
}

std::string point_label(const BallPoint& z) {
  std::ostringstream os;
  os << "(";
  for (std::size_t c = 0; c < z.z.size(); ++c) {
    if (c) os << ", ";
    os << format_double(z.z[c].real()) << "+" << format_double(z.z[c].imag())
       << "i";
  }
  os << ")";
  return os.str();
}

double abs_at(const PointFunction& f, const BallPoint& z) {
  const std::complex<double> w = f(z);
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw std::runtime_error("function value is not finite at " +
                             point_label(z));
  return std::abs(w);
}

}  // namespace

SampledFunction make_sampled_function(std::vector<double> values,
                                      std::vector<double> weights,
                                      std::string label) {
  require(!values.empty(), "sampled function needs at least one point");
  require(values.size() == weights.size(),
          "values and weights must have equal length");
  double wsum = 0;
  for (double v : values)
    require(std::isfinite(v) && v >= 0, "values must be finite and >= 0");
  for (double w : weights) {
    require(std::isfinite(w) && w > 0, "weights must be finite and > 0");
    wsum += w;
  }
  require(std::abs(wsum - 1) <= 1e-12, "weights must sum to 1");
  return SampledFunction{std::move(values), std::move(weights),
                         std::move(label)};
}

SampledFunction sampled_function_from_csv(std::istream& is,
                                          std::string label) {
  std::vector<double> values, weights;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("sample csv line lacks a comma: " + line);
    try {
      const double v = parse_double(line.substr(0, comma));
      const double w = parse_double(line.substr(comma + 1));
      values.push_back(v);
      weights.push_back(w);
    } catch (const std::exception&) {
      if (first) {
        first = false;  // header row
        continue;
      }
      throw ConfigError("sample csv line is not numeric: " + line);
    }
    first = false;
  }
  try {
    return make_sampled_function(std::move(values), std::move(weights),
                                 std::move(label));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sample csv invalid: ") + e.what());
  }
}

double luxemburg_norm(const OrliczFunction& psi, const SampledFunction& f,
                      double tol) {
  require(tol > 0 && tol < 0.1, "tolerance must be in (0, 0.1)");
  const double fmax = *std::max_element(f.values.begin(), f.values.end());
  if (fmax == 0) return 0;
  double wmin = 1;
  for (double w : f.weights) wmin = std::min(wmin, w);

  double lo = fmax / inverse_capped(psi, 1 / wmin);
  double hi = fmax / inverse_capped(psi, 1);
  if (lo > hi) std::swap(lo, hi);
  if (lo == hi) return hi;

  // numeric safety: the math above guarantees integral(lo) >= 1 >=
  // integral(hi), but re-establish both ends before trusting them
  for (int i = 0; i < 200 && unit_integral(psi, f, hi) > 1; ++i) hi *= 2;
  for (int i = 0; i < 200 && unit_integral(psi, f, lo) <= 1 && lo > 0; ++i) {
    hi = lo;
    lo /= 2;
  }

  for (int i = 0; i < 200; ++i) {
    const bool tight = hi - lo <= tol * hi;
    if (tight && unit_integral(psi, f, hi) > 1 - 5 * tol) break;
    if (hi - lo <= 1e-15 * hi) break;  // psi cannot reach 1 on this data
    const double mid = 0.5 * (lo + hi);
    if (unit_integral(psi, f, mid) <= 1)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double hardy_norm_estimate(const OrliczFunction& psi, const PointFunction& f,
                           int N, const std::vector<double>& r_grid,
                           std::size_t sphere_samples, std::uint64_t seed) {
  require(N >= 1, "dimension must be >= 1");
  require(!r_grid.empty(), "radius grid must be nonempty");
  require(sphere_samples >= 1, "need at least one sphere sample");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    require(r_grid[i] > 0 && r_grid[i] < 1, "radii must lie in (0, 1)");
    require(i == 0 || r_grid[i] > r_grid[i - 1],
            "radius grid must be increasing");
  }
  const std::vector<double> weights(
      sphere_samples, 1.0 / static_cast<double>(sphere_samples));
  double best = 0;
  BallPoint zeta, scaled;
  scaled.z.resize(N);
  for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
    const double r = r_grid[ri];
    const CounterRng rng(seed, substream(kHardyStream, ri));
    std::vector<double> values(sphere_samples);
    for (std::size_t i = 0; i < sphere_samples; ++i) {
      sphere_point_into(rng, i, N, zeta);
      for (int c = 0; c < N; ++c) scaled.z[c] = r * zeta.z[c];
      scaled.norm = r;
      values[i] = abs_at(f, scaled);
    }
    best = std::max(best, luxemburg_norm(psi, make_sampled_function(
                                                  std::move(values), weights)));
  }
  return best;
}

double bergman_norm_estimate(const OrliczFunction& psi, const PointFunction& f,
                             int N, double alpha, std::size_t ball_samples,
                             std::uint64_t seed) {
  require(ball_samples >= 1, "need at least one ball sample");
  const RadialLaw& law = radial_law(N, alpha);
  const CounterRng rng(seed, kBergmanStream);
  std::vector<double> values(ball_samples);
  BallPoint z;
  for (std::size_t i = 0; i < ball_samples; ++i) {
    ball_point_into(rng, i, law, z);
    values[i] = abs_at(f, z);
  }
  const std::vector<double> weights(ball_samples,
                                    1.0 / static_cast<double>(ball_samples));
  return luxemburg_norm(psi, make_sampled_function(std::move(values), weights));
}

}  // namespace olab
