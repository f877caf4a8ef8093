// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "etamu/rng.hpp"

namespace etamu {

// Zero-mean, unit-variance generalized Gaussian noise with shape parameter
// `a`:
//   pdf(u)  = a L0 / (2 Gamma(1/a)) * exp(-(L0 |u|)^a),
//   L0      = sqrt(Gamma(3/a) / Gamma(1/a)),
// so a = 2 is the standard normal, a = 1 the unit-variance Laplacian, and
// smaller `a` gives progressively heavier tails.
struct NoiseSpec {
  double a = 2.0;        // shape (tail-decay) parameter, a > 0
  double lambda0 = 0.0;  // L0, the unit-variance scale constant
};

// Validates a > 0 (throws std::invalid_argument) and precomputes L0.
NoiseSpec make_noise(double a);

// Probability density of the noise amplitude at u.
double ggn_pdf(const NoiseSpec& noise, double u);

// Exact one-sided tail probability P(U > x) for x >= 0:
//   Q_a(x) = Gamma_upper(1/a, (L0 x)^a) / (2 Gamma(1/a)).
// For a = 2 this is the Gaussian Q-function.
double qa_exact(const NoiseSpec& noise, double x);

// Draws one noise sample: U = S * W^(1/a) / L0 with S a random sign and
// W ~ Gamma(1/a, 1).
double sample_ggn(const NoiseSpec& noise, Rng& rng);

}  // namespace etamu
