#include "olab/ball.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "olab/numfmt.hpp"

namespace olab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRadialNodes = 4096;
constexpr std::uint64_t kSphereStream = 1;
constexpr std::uint64_t kBallStream = 2;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double norm_of(const std::vector<std::complex<double>>& coords) {
  double n2 = 0;
  for (const auto& c : coords) n2 += std::norm(c);
  return std::sqrt(n2);
}

void require_unit(const std::vector<std::complex<double>>& zeta) {
  require(!zeta.empty(), "direction must have at least one coordinate");
  require(std::abs(norm_of(zeta) - 1.0) <= 1e-12,
          "direction must lie on the unit sphere");
}

}  // namespace

BallPoint make_ball_point(std::vector<std::complex<double>> coords) {
  require(!coords.empty(), "point needs at least one coordinate");
  for (const auto& c : coords)
    require(std::isfinite(c.real()) && std::isfinite(c.imag()),
            "point coordinates must be finite");
  BallPoint p;
  p.norm = norm_of(coords);
  require(p.norm <= 1 + 1e-12, "point lies outside the closed unit ball");
  p.z = std::move(coords);
  return p;
}

BallPoint radial_e1_point(int N, double r) {
  require(N >= 1, "dimension must be >= 1");
  require(std::isfinite(r) && r >= 0 && r <= 1, "radius must be in [0, 1]");
  BallPoint p;
  p.z.assign(N, 0);
  p.z[0] = r;
  p.norm = r;
  return p;
}

std::complex<double> inner(const BallPoint& z,
                           const std::vector<std::complex<double>>& zeta) {
  require(z.z.size() == zeta.size(), "inner product dimension mismatch");
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < zeta.size(); ++i) s += z.z[i] * std::conj(zeta[i]);
  return s;
}

std::vector<std::complex<double>> normalized_direction(
    std::vector<std::complex<double>> coords) {
  const double n = norm_of(coords);
  require(n > 0, "cannot normalize the zero vector");
  for (auto& c : coords) c /= n;
  return coords;
}

KoranyiRegion make_koranyi_region(std::vector<std::complex<double>> zeta,
                                  double a) {
  require_unit(zeta);
  require(a > 1, "aperture must exceed 1");
  return KoranyiRegion{std::move(zeta), a};
}

bool in_koranyi(const BallPoint& z, const KoranyiRegion& region) {
  if (region.a == kInf) return z.norm < 1;
  const double lhs = std::abs(1.0 - inner(z, region.zeta));
  return lhs < (region.a / 2) * (1 - z.norm * z.norm);
}

CarlesonWindow make_window(std::vector<std::complex<double>> zeta, double h,
                           WindowClosure closure) {
  require_unit(zeta);
  require(h > 0 && h < 1, "window size must be in (0, 1)");
  return CarlesonWindow{std::move(zeta), h, closure};
}

bool in_window(const BallPoint& z, const CarlesonWindow& window) {
  if (window.closure == WindowClosure::kOpen) {
    if (!(z.norm < 1)) return false;
  } else if (!(z.norm <= 1 + 1e-12)) {
    return false;
  }
  return std::abs(1.0 - inner(z, window.zeta)) < window.h;
}

bool in_corona(const BallPoint& z, const Corona& corona) {
  return corona.r0 < z.norm && z.norm < 1;
}

double n_alpha(int N, double alpha) {
  require(N >= 1, "dimension must be >= 1");
  if (is_hardy(alpha)) return N;
  require(alpha > -1, "weight must exceed -1");
  return N + alpha + 1;
}

double koranyi_aperture_bound(int N) {
  require(N >= 1, "dimension must be >= 1");
  if (N == 1) return kInf;
  return 1.0 / std::cos(3.14159265358979323846 / (2.0 * N));
}

double bergman_normalizer(int N, double alpha) {
  require(N >= 1, "dimension must be >= 1");
  require(alpha > -1, "weight must exceed -1");
  return std::exp(std::lgamma(N + alpha + 1) - std::lgamma(N + 1.0) -
                  std::lgamma(alpha + 1));
}

MeasureSpec MeasureSpec::sphere(int N) {
  require(N >= 1, "dimension must be >= 1");
  return MeasureSpec{MeasureKind::kSphereSigma, N, 0};
}

MeasureSpec MeasureSpec::ball_weighted(int N, double alpha) {
  require(N >= 1, "dimension must be >= 1");
  require(std::isfinite(alpha) && alpha > -1, "weight must exceed -1");
  return MeasureSpec{MeasureKind::kBallWeighted, N, alpha};
}

double MeasureSpec::normalizer() const {
  return kind == MeasureKind::kSphereSigma ? 1.0 : bergman_normalizer(N, alpha);
}

RadialLaw::RadialLaw(int N, double alpha) : N_(N), alpha_(alpha) {
  require(N >= 1, "dimension must be >= 1");
  require(std::isfinite(alpha) && alpha > -1, "weight must exceed -1");
  coeffs_.resize(N);
  double binom = 1;  // C(N-1, k) with alternating sign
  for (int k = 0; k < N; ++k) {
    coeffs_[k] = binom / (alpha + k + 1);
    binom *= -static_cast<double>(N - 1 - k) / (k + 1);
  }
  total_ = tail_integral(0);
  cdf_grid_.resize(kRadialNodes + 1);
  for (int i = 0; i <= kRadialNodes; ++i)
    cdf_grid_[i] = cdf(static_cast<double>(i) / kRadialNodes);
}

double RadialLaw::tail_integral(double x) const {
  const double omx = 1 - x;
  double p = std::pow(omx, alpha_ + 1);
  double sum = 0;
  for (int k = 0; k < N_; ++k) {
    sum += coeffs_[k] * p;
    p *= omx;
  }
  return sum;
}

double RadialLaw::cdf(double r) const {
  if (r <= 0) return 0;
  if (r >= 1) return 1;
  const double omx = (1 - r) * (1 + r);  // 1 - r^2 without cancellation
  double p = std::pow(omx, alpha_ + 1);
  double sum = 0;
  for (int k = 0; k < N_; ++k) {
    sum += coeffs_[k] * p;
    p *= omx;
  }
  return std::clamp(1 - sum / total_, 0.0, 1.0);
}

double RadialLaw::density(double r) const {
  if (r <= 0 || r >= 1) return 0;
  const double omx = (1 - r) * (1 + r);
  return 2 * std::pow(r, 2 * N_ - 1) * std::pow(omx, alpha_) / total_;
}

double RadialLaw::inverse_cdf(double u) const {
  require(std::isfinite(u) && u >= 0 && u <= 1, "cdf level must be in [0, 1]");
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  const auto it = std::upper_bound(cdf_grid_.begin(), cdf_grid_.end(), u);
  const std::size_t i =
      (it == cdf_grid_.begin()) ? 0 : (it - cdf_grid_.begin() - 1);
  double lo = static_cast<double>(i) / kRadialNodes;
  double hi = std::min(1.0, static_cast<double>(i + 1) / kRadialNodes);
  const double f_lo = cdf_grid_[i];
  const double f_hi = i + 1 < cdf_grid_.size() ? cdf_grid_[i + 1] : 1.0;
  double r = f_hi > f_lo ? lo + (hi - lo) * (u - f_lo) / (f_hi - f_lo)
                         : 0.5 * (lo + hi);
  for (int iter = 0; iter < 60; ++iter) {
    const double g = cdf(r) - u;
    if (std::abs(g) <= 1e-15) break;
    (g > 0 ? hi : lo) = r;
    const double d = density(r);
    double next = d > 0 ? r - g / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
    if (hi - lo < 5e-16) break;
  }
  return r;
}

const RadialLaw& radial_law(int N, double alpha) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint64_t>, std::unique_ptr<RadialLaw>>
      cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{N, std::bit_cast<std::uint64_t>(alpha)}];
  if (!slot) slot = std::make_unique<RadialLaw>(N, alpha);
  return *slot;
}

void sphere_point_into(const CounterRng& rng, std::uint64_t index, int N,
                       BallPoint& out) {
  out.z.resize(N);
  double n2 = 0;
  for (int c = 0; c < N; ++c) {
    double gr, gi;
    rng.gauss_pair(index * N + c, gr, gi);
    out.z[c] = {gr, gi};
    n2 += gr * gr + gi * gi;
  }
  if (n2 < 1e-280) {
    out.z.assign(N, 0);
    out.z[0] = 1;
  } else {
    const double s = 1 / std::sqrt(n2);
    for (auto& c : out.z) c *= s;
  }
  out.norm = 1;
}

void ball_point_into(const CounterRng& rng, std::uint64_t index,
                     const RadialLaw& law, BallPoint& out) {
  const int N = law.dim();
  out.z.resize(N);
  double n2 = 0;
  for (int c = 0; c < N; ++c) {
    double gr, gi;
    rng.gauss_pair(index * (N + 1) + c, gr, gi);
    out.z[c] = {gr, gi};
    n2 += gr * gr + gi * gi;
  }
  const double u = rng.uniform_open(index * (2 * N + 2) + 2 * N);
  const double r = law.inverse_cdf(u);
  if (n2 < 1e-280) {
    out.z.assign(N, 0);
    out.z[0] = r;
  } else {
    const double s = r / std::sqrt(n2);
    for (auto& c : out.z) c *= s;
  }
  out.norm = r;
}

std::vector<BallPoint> sample_sphere(int N, std::size_t count,
                                     std::uint64_t seed) {
  require(N >= 1, "dimension must be >= 1");
  require(count >= 1, "need at least one sample");
  const CounterRng rng(seed, kSphereStream);
  std::vector<BallPoint> pts(count);
  for (std::size_t i = 0; i < count; ++i) sphere_point_into(rng, i, N, pts[i]);
  return pts;
}

std::vector<BallPoint> sample_ball_weighted(int N, double alpha,
                                            std::size_t count,
                                            std::uint64_t seed) {
  require(count >= 1, "need at least one sample");
  const RadialLaw& law = radial_law(N, alpha);
  const CounterRng rng(seed, kBallStream);
  std::vector<BallPoint> pts(count);
  for (std::size_t i = 0; i < count; ++i) ball_point_into(rng, i, law, pts[i]);
  return pts;
}

void write_sample_csv(std::ostream& os, const std::vector<BallPoint>& points,
                      const std::vector<double>& weights) {
  require(!points.empty(), "nothing to export");
  require(weights.empty() || weights.size() == points.size(),
          "weights must match the sample size");
  const std::size_t N = points.front().z.size();
  for (std::size_t c = 0; c < N; ++c) os << "re" << c << ",im" << c << ",";
  os << "weight\n";
  const double uniform = 1.0 / static_cast<double>(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t c = 0; c < N; ++c)
      os << format_double(points[i].z[c].real()) << ","
         << format_double(points[i].z[c].imag()) << ",";
    os << format_double(weights.empty() ? uniform : weights[i]) << "\n";
  }
}

}  // namespace olab
