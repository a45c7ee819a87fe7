#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>

#include "olab/ball.hpp"
#include "olab/carleson.hpp"
#include "olab/luxemburg.hpp"
#include "olab/orlicz.hpp"
#include "olab/rng.hpp"
#include "olab/symbols.hpp"

namespace {

void BM_OrliczLogEvaluate(benchmark::State& state) {
  const auto psi = olab::OrliczFunction::exp_power(1, 2);
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi.log_evaluate(x));
    x = x < 1e12 ? x * 1.0001 : 1.0;
  }
}
BENCHMARK(BM_OrliczLogEvaluate);

void BM_OrliczInverse(benchmark::State& state) {
  const auto psi = olab::OrliczFunction::log_exp(1, 2);
  double y = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi.inverse(y));
    y = y < 1e12 ? y * 1.001 : 1.0;
  }
}
BENCHMARK(BM_OrliczInverse);

void BM_CertifyAll(benchmark::State& state) {
  const auto psi = olab::OrliczFunction::log_exp(1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(olab::certify_all(psi));
  }
}
BENCHMARK(BM_CertifyAll);

void BM_LuxemburgNorm(benchmark::State& state) {
  const auto psi = olab::OrliczFunction::exp_power(1, 1);
  std::vector<double> values, weights;
  const olab::CounterRng rng(17, 0);
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < m; ++i) {
    values.push_back(-std::log(rng.uniform_open(2 * i)));
    weights.push_back(1.0 / static_cast<double>(m));
  }
  const auto f = olab::make_sampled_function(values, weights);
  for (auto _ : state) {
    benchmark::DoNotOptimize(olab::luxemburg_norm(psi, f, 1e-10));
  }
}
BENCHMARK(BM_LuxemburgNorm)->Arg(64)->Arg(1024);

void BM_SpherePoint(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const olab::CounterRng rng(17, 1);
  olab::BallPoint z;
  std::uint64_t i = 0;
  for (auto _ : state) {
    olab::sphere_point_into(rng, i++, N, z);
    benchmark::DoNotOptimize(z.norm);
  }
}
BENCHMARK(BM_SpherePoint)->Arg(1)->Arg(4);

void BM_BallPoint(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto& law = olab::radial_law(N, 1.0);
  const olab::CounterRng rng(17, 2);
  olab::BallPoint z;
  std::uint64_t i = 0;
  for (auto _ : state) {
    olab::ball_point_into(rng, i++, law, z);
    benchmark::DoNotOptimize(z.norm);
  }
}
BENCHMARK(BM_BallPoint)->Arg(1)->Arg(4);

void BM_LensApply(benchmark::State& state) {
  const auto lens = olab::SymbolMap::lens_1d(0.5);
  const olab::CounterRng rng(17, 3);
  const auto& law = olab::radial_law(1, 0.0);
  olab::BallPoint z;
  olab::ball_point_into(rng, 0, law, z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lens.apply(z));
  }
}
BENCHMARK(BM_LensApply);

void BM_WindowMassRejection(benchmark::State& state) {
  const auto lens = olab::SymbolMap::lens_1d(0.5);
  const std::vector<std::complex<double>> zeta{{1, 0}};
  std::uint64_t seed = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        olab::bergman_window_mass(lens, 0.0, zeta, 0.25, 1 << 14, seed++));
  }
}
BENCHMARK(BM_WindowMassRejection)->Unit(benchmark::kMillisecond);

void BM_WindowMassCone(benchmark::State& state) {
  const auto lens = olab::SymbolMap::lens_1d(0.5);
  std::uint64_t seed = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(olab::bergman_window_mass_near_one(
        lens, 0.0, 0.25, 1.05 * 0.0625, 1 << 14, seed++));
  }
}
BENCHMARK(BM_WindowMassCone)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
