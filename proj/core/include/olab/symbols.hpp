#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "olab/ball.hpp"

// A closed family of holomorphic self-maps of the ball: constants, dilations,
// diagonal linear maps, and lens maps flattening the disk into an approach
// region. Composition with a dilation z -> phi(r z) stays inside the family,
// which is all the sup-over-r machinery needs.

namespace olab {

enum class SymbolFamily {
  kConstant,        // z -> w0
  kDilation,        // z -> r z (r = 1 is the identity)
  kDiagonalLinear,  // z -> (lambda_1 z_1, ..., lambda_N z_N)
  kLens1D,          // z -> 1 - (1-z)^beta on the disk
  kEmbeddedLens,    // z -> (lens(z_1), 0, ..., 0)
};

const char* to_string(SymbolFamily f);

class SymbolMap {
 public:
  static SymbolMap constant(std::vector<std::complex<double>> w0);
  static SymbolMap dilation(double r, int dim);
  static SymbolMap diagonal_linear(std::vector<std::complex<double>> lambda);
  static SymbolMap lens_1d(double beta);
  static SymbolMap embedded_lens(double beta, int dim);

  SymbolFamily family() const { return family_; }
  int dim() const { return dim_; }

  // Inner dilation factor rho: this map evaluates the base family at rho*z.
  double pre_dilation() const { return rho_; }

  // phi(z) for |z| < 1. The image is re-checked on every call; a point on or
  // outside the sphere aborts the computation rather than polluting masses.
  BallPoint apply(const BallPoint& z) const;

  // The map z -> phi(r z).
  SymbolMap radial_restriction(double r) const;

  // sup |phi| over the ball when the family admits a closed form
  // (constant, dilation, diagonal, unrestricted lens); throws otherwise.
  bool has_closed_form_sup() const;
  double sup_norm_closed_form() const;

  double param_beta() const { return beta_; }
  double param_r() const { return r_; }
  const std::vector<std::complex<double>>& param_vector() const { return vec_; }

  std::string describe() const;
  std::string to_json() const;
  static SymbolMap from_json(const std::string& text);

  std::string metadata;

 private:
  SymbolMap() = default;

  SymbolFamily family_ = SymbolFamily::kDilation;
  int dim_ = 1;
  double rho_ = 1;   // pre-dilation
  double r_ = 1;     // dilation factor
  double beta_ = 0;  // lens exponent
  std::vector<std::complex<double>> vec_;  // w0 or lambda
};

struct BoundaryLimit {
  BallPoint point;
  bool converged = false;
  int steps = 0;
};

// Radial limit of phi at zeta estimated along r_seq (default 1 - 2^-k,
// k = 4..24); converged once successive images differ by < 1e-9.
BoundaryLimit boundary_limit(const SymbolMap& phi,
                             const std::vector<std::complex<double>>& zeta,
                             std::vector<double> r_seq = {});

struct SupNormEstimate {
  double lower_bound = 0;    // max |phi| over samples and radial sweeps
  double closed_form = -1;   // -1 when the family has none
  bool has_closed_form = false;
};

SupNormEstimate sup_norm_estimate(const SymbolMap& phi, std::size_t samples,
                                  std::uint64_t seed);

// Aperture b > 1 of the approach region a lens with exponent beta fills:
// beta = (2/pi) arccos(1/b), b = 1/cos(beta pi/2).
double beta_from_aperture(double b);
double aperture_from_beta(double beta);

}  // namespace olab
