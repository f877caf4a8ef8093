// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace etamu {

// Mixes a (seed, stream) pair into an independent 64-bit state.  Used to
// derive per-block generator seeds so Monte Carlo results are invariant
// under re-partitioning of the sample budget.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source: a 64-bit Mersenne Twister with explicit,
// portable conversions to uniform, normal, and gamma variates.  The
// sequence for a given (seed, stream) pair is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix_seed(seed, stream)) {}

  // Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1): never returns 0, safe under log().
  double uniform_pos() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the Box-Muller transform (no cached spare, so the
  // draw count per variate is fixed and partition-invariant).
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692528677 * u2);
  }

  // Gamma(shape, scale) via the Marsaglia-Tsang squeeze method; shapes
  // below 1 use the boosting identity G(s) = G(s+1) * U^(1/s).
  double gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
      throw std::invalid_argument("Rng::gamma: shape and scale must be positive");
    }
    double boost = 1.0;
    double s = shape;
    if (s < 1.0) {
      boost = std::pow(uniform_pos(), 1.0 / s);
      s += 1.0;
    }
    const double d = s - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return boost * scale * d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * scale * d * v;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace etamu
