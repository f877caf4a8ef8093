// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>

#include "etamu/approx.hpp"
#include "etamu/fading.hpp"
#include "etamu/metrics.hpp"
#include "etamu/noise.hpp"
#include "etamu/quadrature.hpp"

namespace etamu {

// Ground-truth engines independent of the closed forms in metrics: direct
// adaptive quadrature of the defining integrals, and seeded Monte Carlo.
// Quadrature-based oracles throw etamu::numerical_error (with the best
// estimate attached) when the requested tolerance cannot be met.

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;     // sample std / sqrt(n)
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Average error rate by quadrature of A * Q_a(sqrt(B g)) against the
// Bessel-form density (valid for any positive total cluster count).
double aber_quadrature(const FadingSpec& spec, const ModulationSpec& mod,
                       const NoiseSpec& noise, const QuadratureSettings& settings = {});
double aber_quadrature(const BesselChannel& ch, const ModulationSpec& mod,
                       const NoiseSpec& noise, const QuadratureSettings& settings = {});

// Average spectral efficiency by quadrature of log2(1 + g) against the
// density.
double acc_quadrature(const FadingSpec& spec, const QuadratureSettings& settings = {});
double acc_quadrature(const BesselChannel& ch, const QuadratureSettings& settings = {});

// Same integrals with the exponential-sum approximation substituted for
// the exact conditional function, against the finite-series density: the
// quadrature counterpart of the closed forms in metrics, isolating the
// kernel identity from approximation quality.
double aber_quadrature_approx(const FadingSpec& spec, const ModulationSpec& mod,
                              const ExpSumApprox& noise_approx,
                              const QuadratureSettings& settings = {});
double acc_quadrature_approx(const FadingSpec& spec, const ExpSumApprox& log2_approx,
                             const QuadratureSettings& settings = {});

// Semi-analytic Monte Carlo: averages A * Q_a(sqrt(B g)) over exact SNR
// draws.  Deterministic per (seed, n): samples are generated in fixed
// blocks of 65536 draws, each block seeded by (seed, block index), and
// accumulated in block order, so the result is independent of how a budget
// might be partitioned.
MonteCarloEstimate aber_montecarlo(const FadingSpec& spec, const ModulationSpec& mod,
                                   const NoiseSpec& noise, std::uint64_t n,
                                   std::uint64_t seed);

// Symbol-level binary-antipodal simulation: per symbol, draw the SNR g and
// one unit-variance noise sample N, and count an error iff N > sqrt(2 g).
// Validates the conditional-error model itself.
MonteCarloEstimate ber_symbol_sim_bpsk(const FadingSpec& spec, const NoiseSpec& noise,
                                       std::uint64_t n, std::uint64_t seed);

// Monte Carlo mean of log2(1 + g), the stochastic cross-check for
// acc_quadrature.
MonteCarloEstimate acc_montecarlo(const FadingSpec& spec, std::uint64_t n,
                                  std::uint64_t seed);

// Gaussian-noise-only cross-check through the Laplace-domain statistic:
//   (1/pi) * integral(0..(M-1)pi/M) mgf(B / (2 sin^2 theta)) dtheta,
// the classical polar-form average for binary/M-ary phase modulation.
// Exactly equals aber_quadrature (a = 2) for the binary case; for M >= 4
// it is the true symbol error probability, which the A * Q_a model only
// approximates.  Rejects schemes other than BPSK/QPSK/MPSK.
double aber_mgf_awgn(const FadingSpec& spec, const ModulationSpec& mod,
                     const QuadratureSettings& settings = {});

// Ground-truth density by numerical convolution of the two independent
// gamma components (shape mu_tilde, means omega1 and omega2).
double pdf_convolution(const FadingSpec& spec, double snr,
                       const QuadratureSettings& settings = {});
double pdf_convolution(const BesselChannel& ch, double snr,
                       const QuadratureSettings& settings = {});

// Empirical arbitration between the two candidate Hoyt embeddings (see
// fading.hpp): draws the physical two-component envelope power
//   SNR = X^2 + Y^2,  X ~ N(0, sx^2), Y ~ N(0, sy^2),  q = sx/sy,
// with mean mean_snr, and computes the Kolmogorov-Smirnov distance of the
// empirical distribution against both candidate SNR laws.
struct HoytArbitrationReport {
  double q = 0.0;
  double mean_snr = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  double ks_mu1 = 0.0;           // unit-cluster mapping (from_special_case_hoyt_mu1)
  double ks_half_cluster = 0.0;  // classical description (hoyt_channel_reference)
  double ks_critical_1pct = 0.0;
  bool mu1_supported = false;          // ks_mu1 below the critical value
  bool half_cluster_supported = false; // ks_half_cluster below the critical value
};

HoytArbitrationReport hoyt_arbitration(double q, double mean_snr, std::uint64_t n,
                                       std::uint64_t seed);

}  // namespace etamu
