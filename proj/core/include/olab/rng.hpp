#pragma once

#include <cmath>
#include <cstdint>

// Counter-based pseudo-random numbers. Every draw is a pure function of
// (seed, stream, counter), so a sample set can be produced in any order, in
// parallel, or in pieces, and still come out bit-identical. Workers never
// share generator state; they share the key and own disjoint counter ranges.

namespace olab {

// SplitMix64 finalizer. Good avalanche, cheap, and stable across platforms.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// Derives a child stream id, e.g. substream(cell_stream, r_index).
constexpr std::uint64_t substream(std::uint64_t parent, std::uint64_t child) {
  return mix64(parent + 0x9e3779b97f4a7c15ull * (child + 1));
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream + 0x6a09e667f3bcc909ull))) {}

  std::uint64_t word(std::uint64_t i) const {
    // Two rounds so the linear counter structure cannot survive.
    return mix64(mix64(key_ + i * 0x9e3779b97f4a7c15ull));
  }

  // Uniform in [0, 1), 53 random bits.
  double uniform(std::uint64_t i) const {
    return static_cast<double>(word(i) >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1); safe as a log() argument.
  double uniform_open(std::uint64_t i) const {
    return (static_cast<double>(word(i) >> 12) + 0.5) * 0x1.0p-52;
  }

  // Standard normal pair from counters (2j, 2j+1) by Box-Muller.
  void gauss_pair(std::uint64_t j, double& g0, double& g1) const {
    const double u1 = uniform_open(2 * j);
    const double u2 = uniform(2 * j + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.28318530717958647692 * u2;
    g0 = r * std::cos(t);
    g1 = r * std::sin(t);
  }

 private:
  std::uint64_t key_;
};

}  // namespace olab
