#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "olab/ball.hpp"
#include "olab/orlicz.hpp"

// Luxemburg norm on finite sampled probability spaces, plus Monte-Carlo
// estimates of the induced analytic-function norms (sup over radii of sphere
// averages, or a single weighted-volume average).

namespace olab {

struct SampledFunction {
  std::vector<double> values;   // |f| at the sample points, >= 0
  std::vector<double> weights;  // > 0, summing to 1 within 1e-12
  std::string label;
};

SampledFunction make_sampled_function(std::vector<double> values,
                                      std::vector<double> weights,
                                      std::string label = "");

// Columns "value,weight"; a header row is skipped if present.
SampledFunction sampled_function_from_csv(std::istream& is,
                                          std::string label = "");

// inf{C > 0 : sum_i w_i psi(f_i / C) <= 1} by bisection; the map is
// nonincreasing in C so the bracket [max f / psi^{-1}(1 / min w),
// max f / psi^{-1}(1)] always contains the answer. Returns 0 for f = 0.
// At the returned C the unit integral is <= 1 and within 10*tol of 1
// whenever psi can reach 1 on the admissible range.
double luxemburg_norm(const OrliczFunction& psi, const SampledFunction& f,
                      double tol = 1e-10);

using PointFunction = std::function<std::complex<double>(const BallPoint&)>;

// sup over r in r_grid of the Luxemburg norm of zeta -> |f(r zeta)| under
// uniform sphere samples; r_grid must be increasing inside (0, 1).
double hardy_norm_estimate(const OrliczFunction& psi, const PointFunction& f,
                           int N, const std::vector<double>& r_grid,
                           std::size_t sphere_samples, std::uint64_t seed);

// Single Luxemburg computation over weighted-volume samples.
double bergman_norm_estimate(const OrliczFunction& psi, const PointFunction& f,
                             int N, double alpha, std::size_t ball_samples,
                             std::uint64_t seed);

}  // namespace olab
