#pragma once

#include "proxpair/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace proxpair {

/// Deterministic random stream. Streams are keyed by (seed, index) so that work
/// distributed over threads draws the same numbers regardless of schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(mix(seed, stream)) {}

  /// Independent child seed for a labelled sub-task.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) { return mix(seed, tag + 0x5bd1e995ULL); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  double normal() {
    // Box-Muller; the stdlib distributions are implementation-defined.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double exponential() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -std::log(u);
  }

  /// Uniform point of the probability simplex with `n` entries.
  Vector dirichlet(Eigen::Index n) {
    Vector w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = exponential();
    return w / w.sum();
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace proxpair
