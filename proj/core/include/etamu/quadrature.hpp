// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>

namespace etamu {

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

// Globally adaptive Gauss-Kronrod 7/15 integration over a finite interval.
// Starts from a uniform 8-panel split, which lowers (but cannot eliminate)
// the risk of a coarse rule stepping over a narrow interior feature; a
// feature much narrower than the node spacing can still be missed, and
// callers aware of one should split the interval at it.  After seeding,
// bisects the panel with the largest local error estimate until the total
// satisfies max(abs_tol, rel_tol * |value|) or the subdivision budget is
// exhausted (then converged == false); subdivisions counts bisections.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureSettings& settings = {});

// Integral of f over [0, inf) via the substitution x = t / (1 - t),
// dx = dt / (1 - t)^2, reducing to an adaptive integral over (0, 1).
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSettings& settings = {});

}  // namespace etamu
