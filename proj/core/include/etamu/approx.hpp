// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etamu {

// Shape of a four-term exponential-sum approximation:
//   decaying:    f(x) ~= sum_i alpha_i exp(-lambda_i x)   (tail probabilities)
//   saturating:  f(x) ~= sum_i alpha_i (1 - exp(-lambda_i x))  (capacity logs)
// The saturating form is exactly 0 at x = 0.
enum class ApproxKind { decaying, saturating };

struct ExpSumTerm {
  double alpha = 0.0;
  double lambda = 0.0;  // > 0
};

struct ExpSumApprox {
  ApproxKind kind = ApproxKind::decaying;
  std::vector<ExpSumTerm> terms;  // four terms for every built-in product
  double fit_lo = 0.0;            // domain over which the terms were fitted
  double fit_hi = 0.0;
  double max_abs_err = 0.0;       // measured on the standard 200-point
                                  // log-spaced grid over [fit_lo, fit_hi]
};

// Evaluates the sum per kind; x >= 0.
double eval_approx(const ExpSumApprox& approx, double x);

// Built-in four-term approximations of the noise tail probability through
// Q_a(sqrt(x)), for a in {0.5, 1, 1.5, 2, 2.5}.  The stored alpha are on
// the unit-variance tail normalization (sum alpha_i ~= Q_a(0) = 1/2 for
// every a); the recorded max_abs_err is measured against qa_exact on
// [fit_lo, fit_hi] = [0.35, 40], the window over which these global fits
// hold to ~2e-3 (accuracy degrades below x ~= 0.35; the measured deviation
// there is part of the recorded data, not hidden).  Throws
// std::invalid_argument for other a values, pointing at fit_expsum.
ExpSumApprox preset_qa(double a);

// Targets the fitter knows how to evaluate.
enum class FitTarget { qa, log2 };

// Weighted nonlinear least squares: damped Gauss-Newton over
// (alpha_i, ln lambda_i) on a 200-point log-spaced grid over
// [fit_lo, fit_hi], initialized from geometric lambda ladders spanning the
// grid's decay scales (best of several starts; fully deterministic).
// `a` is the tail shape for FitTarget::qa and ignored for FitTarget::log2.
// Throws etamu::numerical_error if no start converges to a usable
// residual.
ExpSumApprox fit_expsum(FitTarget target, double a, ApproxKind kind,
                        double fit_lo, double fit_hi, int n_terms = 4);

// Fit against an arbitrary target on [fit_lo, fit_hi] (used by the
// self-consistency tests; same algorithm as fit_expsum).
ExpSumApprox fit_expsum_custom(double (*target)(double, const void*),
                               const void* target_ctx, ApproxKind kind,
                               double fit_lo, double fit_hi, int n_terms);

// Structured-text serialization (name, kind, terms, domain, measured
// error); parse_expsum accepts exactly what serialize_expsum emits and
// throws std::invalid_argument on malformed records.
std::string serialize_expsum(const ExpSumApprox& approx, const std::string& name);
ExpSumApprox parse_expsum(std::istream& in, std::string* name = nullptr);

}  // namespace etamu
