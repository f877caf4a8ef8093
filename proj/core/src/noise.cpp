// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "etamu/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "etamu/special.hpp"

namespace etamu {

NoiseSpec make_noise(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("make_noise: shape parameter must satisfy a > 0, got a=" +
                                std::to_string(a));
  }
  NoiseSpec n;
  n.a = a;
  n.lambda0 = std::exp(0.5 * (ln_gamma(3.0 / a) - ln_gamma(1.0 / a)));
  return n;
}

double ggn_pdf(const NoiseSpec& noise, double u) {
  const double a = noise.a;
  const double scaled = noise.lambda0 * std::abs(u);
  const double ln_norm = std::log(a) + std::log(noise.lambda0) - std::log(2.0) -
                         ln_gamma(1.0 / a);
  return std::exp(ln_norm - std::pow(scaled, a));
}

double qa_exact(const NoiseSpec& noise, double x) {
  if (x < 0.0) {
    throw std::domain_error("qa_exact: requires x >= 0, got x=" + std::to_string(x));
  }
  if (x == 0.0) return 0.5;
  const double a = noise.a;
  const double arg = std::pow(noise.lambda0 * x, a);
  return 0.5 * reg_upper_inc_gamma(1.0 / a, arg);
}

double sample_ggn(const NoiseSpec& noise, Rng& rng) {
  const double w = rng.gamma(1.0 / noise.a, 1.0);
  const double mag = std::pow(w, 1.0 / noise.a) / noise.lambda0;
  return rng.uniform01() < 0.5 ? -mag : mag;
}

}  // namespace etamu
