// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace etamu {

// Thrown when an iterative numerical procedure (quadrature, series
// acceleration, nonlinear fit) fails to reach its accuracy target within
// its iteration budget.  `best_estimate()` carries the last computed value
// so callers can still report a degraded result.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace etamu
