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

#include "etamu/rng.hpp"

namespace etamu {

// The two standard parameterizations of the eta-mu power imbalance:
// format I uses the in-phase/quadrature power ratio eta in (0, inf),
// format II the correlation coefficient eta in (-1, 1).
enum class Format { I, II };

// An eta-mu faded link after L-branch maximal-ratio combining.
//   eta        power-imbalance parameter, canonicalized (see make_fading)
//   mu         per-branch cluster count (integer model)
//   branches   number of combined branches L
//   mean_snr   average SNR per branch (linear scale)
// The combined output SNR has total cluster count Lmu and mean L*mean_snr.
struct FadingSpec {
  Format format = Format::I;
  double eta = 0.5;
  int mu = 1;
  int branches = 1;
  double mean_snr = 1.0;
};

// Geometry constants of the model:
//   format I:  h = (eta^-1 + eta + 2)/4,  H = (eta^-1 - eta)/4
//   format II: h = 1/(1 - eta^2),         H = eta/(1 - eta^2)
// satisfying h^2 - H^2 = h.
struct HHPair {
  double h = 1.0;
  double H = 0.0;
};

// Validates eta against the format's interval and canonicalizes to the
// H >= 0 half (format I: eta -> 1/eta when eta > 1; format II:
// eta -> -eta when eta < 0; the distribution is invariant under either
// reflection).  Throws std::domain_error outside the interval.
HHPair compute_hH(Format format, double eta);

// Validates all fields, canonicalizes eta as compute_hH does, and returns
// the normalized spec.  Throws std::invalid_argument / std::domain_error.
// The degenerate balanced point (eta = 1 format I, eta = 0 format II) is
// accepted here; only the integer-form expansion rejects it.
FadingSpec make_fading(Format format, double eta, int mu, int branches, double mean_snr);

// Channel description used by the Bessel-form density: only the total
// cluster count (which need not be an integer or half-integer) and the
// combined mean SNR enter.
struct BesselChannel {
  double mu_tilde = 1.0;  // total cluster count, > 0
  double h = 1.0;
  double H = 0.0;         // canonicalized, 0 <= H < h
  double mean_snr = 1.0;  // combined (post-combining) average SNR
};

BesselChannel bessel_channel(const FadingSpec& spec);
BesselChannel make_bessel_channel(double mu_tilde, double h, double H, double mean_snr);

// One term of the finite-series density representation.
struct ExpansionTerm {
  int k = 0;
  double psi = 0.0;              // signed coefficient (overflows double for
                                 // very large cluster counts; use logs then)
  long double ln_abs_psi = 0.0L;  // log |psi|, always finite; kept in
                                  // extended precision because the terms
                                  // cancel heavily and re-rounding the log
                                  // costs visible digits in the sum
  int sign = 1;             // sign of psi = (-1)^k
  int m = 1;                // power index, m = mu_tilde - k
  int xi = 1;               // incomplete-gamma order, xi = mu_tilde + k
};

// Finite-series representation of the combined-SNR density, valid for
// integer total cluster count and H > 0:
//   f(g) = sum_k psi_k g^(m_k - 1) e^(-beta g) gamma_lower(xi_k, p g)
// where gamma_lower is the unnormalized lower incomplete gamma.  The
// combined SNR is the sum of two independent gamma variates with common
// shape mu_tilde and means omega1 < omega2; all coefficients derive from
// that pair.
struct IntegerFormExpansion {
  int mu_tilde = 1;
  double zeta_tilde = 1.0;  // combined mean SNR, omega1 + omega2
  double omega1 = 0.0;      // mean of the fast-decaying component
  double omega2 = 0.0;      // mean of the slow-decaying component
  double p = 0.0;           // mu_tilde (1/omega1 - 1/omega2)
  double beta = 0.0;        // mu_tilde / omega2
  std::vector<ExpansionTerm> terms;  // k = 0 .. mu_tilde - 1
};

// Builds the finite-series representation.  Throws std::domain_error at
// the degenerate balanced point H = 0 (where omega1 = omega2 and the
// series coefficients blow up; use pdf_bessel there instead).
IntegerFormExpansion expansion(const FadingSpec& spec);

// Combined-SNR probability density, Bessel-function form.  Valid for any
// real total cluster count mu_tilde > 0, including the balanced point
// H = 0 (where it reduces exactly to a gamma density with shape
// 2 mu_tilde).  Throws std::domain_error for snr < 0.
double pdf_bessel(const BesselChannel& ch, double snr);
double pdf_bessel(const FadingSpec& spec, double snr);

// Combined-SNR probability density, finite-series form.  Requires integer
// total cluster count and H > 0; agrees with pdf_bessel pointwise.
double pdf_integer(const IntegerFormExpansion& ex, double snr);
double pdf_integer(const FadingSpec& spec, double snr);

// Laplace-domain statistic E[exp(-s * SNR)] of the combined SNR, s >= 0:
//   mgf(s) = (1 + s omega1 / mu_tilde)^-mu_tilde (1 + s omega2 / mu_tilde)^-mu_tilde
// evaluated stably in log space.  Works at H = 0.
double mgf(const FadingSpec& spec, double s);
double mgf_two_gamma(double mu_tilde, double omega1, double omega2, double s);

// Exact draw of the combined SNR: the sum of the two independent gamma
// components named in IntegerFormExpansion (valid for any spec, H = 0
// included).
double sample_snr(const FadingSpec& spec, Rng& rng);

// Special-case constructors.
//
// Nakagami-m embeds as the vanishing-imbalance limit: format I with
// eta = 1e-6 and per-branch cluster count m (relative density error of
// order eta).  Rayleigh is Nakagami with m = 1.
FadingSpec from_special_case_nakagami(int m, int branches, double mean_snr);
FadingSpec from_special_case_rayleigh(int branches, double mean_snr);

// Hoyt (Nakagami-q) embedding through the unit-cluster mapping
// eta = (1 - q)/(1 + q), mu = 1 (format I), q in (0, 1].  NOTE: this
// mapping is disputed — the classical description of a Hoyt channel in
// this family is the half-cluster one (mu_tilde = 0.5, eta = q^2, format
// I), which hoyt_channel_reference below provides.  The
// `hoyt_arbitration` validation suite draws the physical two-component
// envelope and reports which description its statistics support; run it
// before relying on this constructor.
FadingSpec from_special_case_hoyt_mu1(double q, int branches, double mean_snr);

// Classical half-cluster Hoyt description (single branch): total cluster
// count 0.5, eta = q^2 in format I.  Only the Bessel-form density applies
// (non-integer cluster count).
BesselChannel hoyt_channel_reference(double q, double mean_snr);

}  // namespace etamu
