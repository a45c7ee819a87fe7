#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>
#include <vector>

#include "olab/rng.hpp"

// Geometry of the unit ball of C^N: approach regions, non-isotropic windows
// near the sphere, and samplers for the boundary measure and the weighted
// volume measures. Window masses measured here are the raw material every
// operator criterion consumes.

namespace olab {

// Marks "the boundary measure case" wherever a weight alpha > -1 would
// otherwise select a weighted volume measure.
inline constexpr double kHardyAlpha = -std::numeric_limits<double>::infinity();

inline bool is_hardy(double alpha) { return alpha == kHardyAlpha; }

struct BallPoint {
  std::vector<std::complex<double>> z;
  double norm = 0;  // cached |z|
};

// Computes and caches the norm; rejects non-finite coordinates and |z| > 1.
BallPoint make_ball_point(std::vector<std::complex<double>> coords);

// r * e1.
BallPoint radial_e1_point(int N, double r);

// Hermitian inner product sum z_i * conj(zeta_i).
std::complex<double> inner(const BallPoint& z,
                           const std::vector<std::complex<double>>& zeta);

// Scales coords to unit norm.
std::vector<std::complex<double>> normalized_direction(
    std::vector<std::complex<double>> coords);

// Approach region with aperture a > 1: |1 - <z, zeta>| < (a/2)(1 - |z|^2).
// a = +infinity is the whole-ball convention used in dimension 1.
struct KoranyiRegion {
  std::vector<std::complex<double>> zeta;
  double a = 2;
};
KoranyiRegion make_koranyi_region(std::vector<std::complex<double>> zeta,
                                  double a);
bool in_koranyi(const BallPoint& z, const KoranyiRegion& region);

// Non-isotropic window near the boundary point zeta: |1 - <z, zeta>| < h.
// The open variant lives in the open ball, the closed one admits boundary
// points (needed when the tested measure sits on the sphere itself).
enum class WindowClosure { kOpen, kClosed };
struct CarlesonWindow {
  std::vector<std::complex<double>> zeta;
  double h = 0.5;
  WindowClosure closure = WindowClosure::kOpen;
};
CarlesonWindow make_window(std::vector<std::complex<double>> zeta, double h,
                           WindowClosure closure);
bool in_window(const BallPoint& z, const CarlesonWindow& window);

struct Corona {
  double r0 = 0.5;  // membership: r0 < |z| < 1
};
bool in_corona(const BallPoint& z, const Corona& corona);

// Exponent N + alpha + 1 driving every window-mass comparison; the boundary
// measure case contributes exponent N instead.
double n_alpha(int N, double alpha);

// Largest aperture for which the angular compactness dichotomy is decided in
// dimension N: 1/cos(pi/(2N)); +infinity in dimension 1.
double koranyi_aperture_bound(int N);

// c_alpha with c_alpha (1-|z|^2)^alpha dv a probability measure.
double bergman_normalizer(int N, double alpha);

enum class MeasureKind { kSphereSigma, kBallWeighted };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::kSphereSigma;
  int N = 1;
  double alpha = 0;  // meaningful for kBallWeighted only

  static MeasureSpec sphere(int N);
  static MeasureSpec ball_weighted(int N, double alpha);
  double normalizer() const;  // total-mass-1 density constant
};

// Distribution of |z| under the weighted volume measure: density
// proportional to r^(2N-1) (1-r^2)^alpha on (0,1). The cumulative integral
// has a closed form for integer N, tabulated once for bracketing and then
// polished by safeguarded Newton steps on the exact expression.
class RadialLaw {
 public:
  RadialLaw(int N, double alpha);

  int dim() const { return N_; }
  double weight() const { return alpha_; }

  double cdf(double r) const;
  double density(double r) const;
  double inverse_cdf(double u) const;

 private:
  int N_;
  double alpha_;
  double total_;                 // unnormalized integral over (0,1)
  std::vector<double> coeffs_;   // binomial expansion of the tail integral
  std::vector<double> cdf_grid_; // cdf at r = i / (size-1)

  double tail_integral(double x) const;  // over s in (x,1), s = r^2
};

// Process-wide cache; safe to call from parallel workers.
const RadialLaw& radial_law(int N, double alpha);

// Deterministic per-index generation. A sphere point consumes rng words
// [2N i, 2N (i+1)), a ball point [(2N+2) i, (2N+2)(i+1)), so any sub-range
// of a sample stream can be produced independently of the rest.
void sphere_point_into(const CounterRng& rng, std::uint64_t index, int N,
                       BallPoint& out);
void ball_point_into(const CounterRng& rng, std::uint64_t index,
                     const RadialLaw& law, BallPoint& out);

std::vector<BallPoint> sample_sphere(int N, std::size_t count,
                                     std::uint64_t seed);
std::vector<BallPoint> sample_ball_weighted(int N, double alpha,
                                            std::size_t count,
                                            std::uint64_t seed);

// Columns re_k, im_k per coordinate plus a weight column; weights may be
// empty, meaning uniform 1/count.
void write_sample_csv(std::ostream& os, const std::vector<BallPoint>& points,
                      const std::vector<double>& weights);

}  // namespace olab
