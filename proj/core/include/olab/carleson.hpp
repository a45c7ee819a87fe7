#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "olab/ball.hpp"
#include "olab/symbols.hpp"

// Monte-Carlo estimation of the measures a self-map pulls back onto windows,
// coronas, and whole sup-over-center profiles. Boundary-measure masses take a
// sup over a radius grid; volume masses are plain averages. Every estimator
// is counter-seeded, so a fixed (symbol, grid, seed) triple reproduces bit
//-identical numbers regardless of scheduling.

namespace olab {

struct MassEstimate {
  double estimate = 0;
  double std_error = 0;  // binomial; zero-count cells report 3/n instead
  std::size_t n = 0;
};

struct HardyWindowMass {
  MassEstimate sup;       // max over the radius grid
  double argmax_r = 0;    // radius attaining it
  MassEstimate boundary;  // radial-limit surrogate at the same window
  std::size_t unconverged = 0;  // limits that failed to settle
  bool flagged = false;         // more than 1% unconverged
};

// Mass of {z : phi(z) in window(zeta, h)} under the weighted volume measure.
MassEstimate bergman_window_mass(const SymbolMap& phi, double alpha,
                                 const std::vector<std::complex<double>>& zeta,
                                 double h, std::size_t n, std::uint64_t seed);

// Same mass for the window centered at 1, dimension 1 only, estimated by
// importance sampling a polar cone around the contact point instead of
// rejection from the whole disk. rho_cap must contain the preimage:
// every z with phi(z) in window(1, h) has |1 - z| < rho_cap, otherwise the
// tail outside the cone is silently missed. Draws are weighted by the exact
// density ratio, so the relative error per sample is O(1) regardless of how
// deep the window sits; rejection sampling pays 1/mass per hit instead.
MassEstimate bergman_window_mass_near_one(const SymbolMap& phi, double alpha,
                                          double h, double rho_cap,
                                          std::size_t n, std::uint64_t seed);

// For each r in r_grid, the boundary-measure mass of
// {xi : phi(r xi) in closed window(zeta, h)}; the sup over r is returned
// together with a radial-limit surrogate estimate.
HardyWindowMass hardy_window_mass(const SymbolMap& phi,
                                  const std::vector<std::complex<double>>& zeta,
                                  double h, const std::vector<double>& r_grid,
                                  std::size_t n, std::uint64_t seed);

// Mass of {|phi| > r0} under the selected measure (sup over the default
// radius grid in the boundary-measure case).
MassEstimate corona_mass(const SymbolMap& phi, const MeasureSpec& measure,
                         double r0, std::size_t n, std::uint64_t seed);

std::vector<double> default_h_grid();  // 2^-1 .. 2^-14, decreasing
std::vector<double> default_r_grid();  // 1 - 2^-k, k = 2..12, increasing

// Candidate centers for the sup over the sphere: e1, a few random points,
// and image-driven points phi(z)/|phi(z)| taken from the pilot draws with
// the largest image norm.
struct CenterStrategy {
  int n_random = 4;
  int n_image = 4;
  std::size_t pilot_samples = 4096;
};

struct ProfileCell {
  double h = 0;
  double estimate = 0;   // sup over candidate centers (and radii)
  double std_error = 0;
  std::size_t n = 0;     // samples behind the winning estimate
  std::vector<std::complex<double>> argmax_center;
  double argmax_r = 0;          // boundary-measure case only
  std::size_t unconverged = 0;  // boundary-measure case only
  bool flagged = false;
};

struct CarlesonProfile {
  MeasureSpec measure;
  std::vector<double> h_grid;
  std::vector<double> r_grid;  // empty for volume-measure profiles
  std::vector<ProfileCell> cells;
  std::uint64_t seed = 0;
  std::string symbol_json;  // machine-readable symbol spec
  std::string symbol_text;  // human-readable description

  std::string to_json() const;
  static CarlesonProfile from_json(const std::string& text);

  // columns: h, estimate, std_error, n, then the argmax center coordinates
  void write_csv(std::ostream& os) const;
};

CarlesonProfile build_profile(const SymbolMap& phi, const MeasureSpec& measure,
                              const std::vector<double>& h_grid,
                              const CenterStrategy& centers,
                              std::size_t n_per_cell, std::uint64_t seed,
                              int threads = 1);

}  // namespace olab
