// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <vector>

#include "etamu/approx.hpp"
#include "etamu/fading.hpp"

namespace etamu {

// Modulation families for which the conditional symbol error rate is
// modeled as A * Q_a(sqrt(B * snr)).
enum class Scheme { BFSK, BPSK, QPSK, MPAM, MPSK, MQAM_rect, MQAM_nonrect };

struct ModulationSpec {
  Scheme scheme = Scheme::BPSK;
  int M = 2;       // constellation size
  double A = 1.0;  // multiplicity constant
  double B = 2.0;  // SNR scaling constant
};

// Builds the (A, B) constants for a (scheme, M) pair:
//   BFSK (1, 1); BPSK (1, 2); QPSK (2, 1);
//   M-PAM (2(M-1)/M, 6/(M^2-1)); M-PSK (2, 2 sin^2(pi/M));
//   rectangular M-QAM (4(sqrt(M)-1)/sqrt(M), 3/(M-1));
//   non-rectangular M-QAM (4, 3/(M-1)).
// Throws std::invalid_argument for an M invalid for the scheme.
ModulationSpec modulation_params(Scheme scheme, int M);

// The closed-form building block shared by the error-rate and capacity
// expressions:
//   K(m, b, xi, p) = integral(0..inf) g^(m-1) e^(-b g) gamma_lower(xi, p g) dg
//                  = p^xi Gamma(m+xi) / (xi b^(m+xi))
//                    * 2F1(xi, m+xi; xi+1; -p/b),
// evaluated through an Euler-transformed terminating series whose terms
// are all nonnegative (no cancellation), assembled in log space.  Throws
// std::domain_error for nonpositive parameters and std::overflow_error if
// the value exceeds the double range.
double kernel_K(int m, double beta_eff, int xi, double p);

// Average error rate of the A * Q_a(sqrt(B g)) conditional model over the
// fading distribution, using a four-term decaying exponential-sum
// approximation of Q_a(sqrt(x)):
//   P = A sum_k psi_k sum_i alpha_i K(m_k, beta + lambda_i B, xi_k, p).
// Requires kind == decaying; propagates the balanced-point degeneracy
// error from expansion().
double aber(const FadingSpec& spec, const ModulationSpec& mod,
            const ExpSumApprox& noise_approx);
double aber(const IntegerFormExpansion& ex, const ModulationSpec& mod,
            const ExpSumApprox& noise_approx);

// Average spectral efficiency E[log2(1 + SNR)] in bits/s/Hz, using a
// four-term saturating exponential-sum approximation of log2(1 + x); each
// term reduces to a difference of two kernel evaluations:
//   C = sum_i alpha_i sum_k psi_k [K(m_k, beta, xi_k, p)
//                                  - K(m_k, beta + lambda_i, xi_k, p)].
// Requires kind == saturating.
double acc(const FadingSpec& spec, const ExpSumApprox& log2_approx);
double acc(const IntegerFormExpansion& ex, const ExpSumApprox& log2_approx);

struct PerformancePoint {
  double mean_snr_db = 0.0;  // 10 log10 of the per-branch mean SNR
  double value = 0.0;        // error probability or bits/s/Hz
};

enum class CurveKind { aber, acc };

// Sweeps the per-branch mean SNR over the dB grid, holding everything
// else in `spec` fixed.  `mod` is required for CurveKind::aber and
// ignored for CurveKind::acc.  Grid must be strictly increasing; errors
// from individual points are rethrown with the offending dB value named.
std::vector<PerformancePoint> curve(CurveKind kind, const FadingSpec& spec,
                                    const ModulationSpec* mod,
                                    const ExpSumApprox& approx,
                                    const std::vector<double>& snr_grid_db);

}  // namespace etamu
