// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "etamu/fading.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "etamu/special.hpp"

namespace etamu {

namespace {

constexpr long double kLn2 = 0.693147180559945309417232121458L;
constexpr long double kLnPi = 1.14472988584940017414342735135L;

// Vanishing power imbalance used to embed Nakagami-style channels.
constexpr double kNakagamiEta = 1e-6;

double canonical_eta(Format format, double eta) {
  if (format == Format::I) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
      throw std::domain_error("eta-mu format I requires 0 < eta < inf, got eta=" +
                              std::to_string(eta));
    }
    return eta > 1.0 ? 1.0 / eta : eta;
  }
  if (!(eta > -1.0 && eta < 1.0)) {
    throw std::domain_error("eta-mu format II requires -1 < eta < 1, got eta=" +
                            std::to_string(eta));
  }
  return eta < 0.0 ? -eta : eta;
}

long double ln_choose(int n, int k) {
  return detail::lgamma_t(static_cast<long double>(n) + 1.0L) -
         detail::lgamma_t(static_cast<long double>(k) + 1.0L) -
         detail::lgamma_t(static_cast<long double>(n - k) + 1.0L);
}

struct ComponentMeans {
  double omega1;
  double omega2;
};

ComponentMeans component_means(const FadingSpec& spec) {
  const HHPair g = compute_hH(spec.format, spec.eta);
  const double combined = spec.branches * spec.mean_snr;
  return {combined / (2.0 * (g.h + g.H)), combined / (2.0 * (g.h - g.H))};
}

}  // namespace

HHPair compute_hH(Format format, double eta) {
  const double e = canonical_eta(format, eta);
  HHPair out;
  if (format == Format::I) {
    const double inv = 1.0 / e;
    out.h = (inv + e + 2.0) / 4.0;
    out.H = (inv - e) / 4.0;
  } else {
    const double denom = 1.0 - e * e;
    out.h = 1.0 / denom;
    out.H = e / denom;
  }
  return out;
}

FadingSpec make_fading(Format format, double eta, int mu, int branches, double mean_snr) {
  if (mu < 1) {
    throw std::invalid_argument("make_fading: cluster count mu must be a positive integer, got mu=" +
                                std::to_string(mu));
  }
  if (branches < 1) {
    throw std::invalid_argument("make_fading: branch count must be >= 1, got branches=" +
                                std::to_string(branches));
  }
  if (!(mean_snr > 0.0) || !std::isfinite(mean_snr)) {
    throw std::invalid_argument("make_fading: mean SNR must be positive and finite, got mean_snr=" +
                                std::to_string(mean_snr));
  }
  FadingSpec spec;
  spec.format = format;
  spec.eta = canonical_eta(format, eta);
  spec.mu = mu;
  spec.branches = branches;
  spec.mean_snr = mean_snr;
  return spec;
}

BesselChannel bessel_channel(const FadingSpec& spec) {
  const HHPair g = compute_hH(spec.format, spec.eta);
  BesselChannel ch;
  ch.mu_tilde = static_cast<double>(spec.branches) * spec.mu;
  ch.h = g.h;
  ch.H = g.H;
  ch.mean_snr = spec.branches * spec.mean_snr;
  return ch;
}

BesselChannel make_bessel_channel(double mu_tilde, double h, double H, double mean_snr) {
  if (!(mu_tilde > 0.0) || !std::isfinite(mu_tilde)) {
    throw std::invalid_argument("make_bessel_channel: cluster count must be positive, got " +
                                std::to_string(mu_tilde));
  }
  if (!(mean_snr > 0.0) || !std::isfinite(mean_snr)) {
    throw std::invalid_argument("make_bessel_channel: mean SNR must be positive, got " +
                                std::to_string(mean_snr));
  }
  if (!(H >= 0.0) || !(h > H)) {
    throw std::invalid_argument("make_bessel_channel: geometry requires h > H >= 0");
  }
  const double defect = std::abs(h * h - H * H - h);
  if (defect > 1e-8 * std::max(1.0, h * h)) {
    throw std::invalid_argument(
        "make_bessel_channel: geometry constants must satisfy h^2 - H^2 = h "
        "(defect " + std::to_string(defect) + ")");
  }
  BesselChannel ch;
  ch.mu_tilde = mu_tilde;
  ch.h = h;
  ch.H = H;
  ch.mean_snr = mean_snr;
  return ch;
}

IntegerFormExpansion expansion(const FadingSpec& spec) {
  const HHPair g = compute_hH(spec.format, spec.eta);
  if (g.H == 0.0) {
    throw std::domain_error(
        "expansion: balanced point (H = 0) is degenerate for the finite-series "
        "form; use pdf_bessel, which reduces to the exact gamma density there");
  }
  IntegerFormExpansion ex;
  ex.mu_tilde = spec.branches * spec.mu;
  ex.zeta_tilde = spec.branches * spec.mean_snr;
  ex.omega1 = ex.zeta_tilde / (2.0 * (g.h + g.H));
  ex.omega2 = ex.zeta_tilde / (2.0 * (g.h - g.H));
  const double mt = static_cast<double>(ex.mu_tilde);
  ex.p = mt * (1.0 / ex.omega1 - 1.0 / ex.omega2);
  ex.beta = mt / ex.omega2;

  // psi_k = [mu_tilde/(omega2 - omega1)]^mu_tilde * (1/(mu_tilde-1)!)^2
  //         * C(mu_tilde-1, k) * (-1/p)^k,
  // assembled in log space so large cluster counts cannot overflow the
  // intermediate factors.
  const long double ln_scale =
      mt * std::log(static_cast<long double>(mt) /
                    (static_cast<long double>(ex.omega2) - static_cast<long double>(ex.omega1))) -
      2.0L * detail::lgamma_t(static_cast<long double>(mt));
  const long double ln_p = std::log(static_cast<long double>(ex.p));
  ex.terms.reserve(static_cast<std::size_t>(ex.mu_tilde));
  for (int k = 0; k < ex.mu_tilde; ++k) {
    ExpansionTerm t;
    t.k = k;
    t.m = ex.mu_tilde - k;
    t.xi = ex.mu_tilde + k;
    t.sign = (k % 2 == 0) ? 1 : -1;
    const long double ln_abs = ln_scale + ln_choose(ex.mu_tilde - 1, k) -
                               static_cast<long double>(k) * ln_p;
    t.ln_abs_psi = ln_abs;
    t.psi = t.sign * static_cast<double>(std::exp(ln_abs));
    ex.terms.push_back(t);
  }
  return ex;
}

double pdf_integer(const IntegerFormExpansion& ex, double snr) {
  if (snr < 0.0) {
    throw std::domain_error("pdf_integer: requires snr >= 0, got " + std::to_string(snr));
  }
  if (snr == 0.0) return 0.0;
  const long double g = snr;
  const long double ln_g = std::log(g);
  const long double beta_g = static_cast<long double>(ex.beta) * g;
  const long double p_g = static_cast<long double>(ex.p) * g;
  long double sum = 0.0L;
  for (const ExpansionTerm& t : ex.terms) {
    const long double ln_tail = detail::ln_gamma_lower<long double>(
        static_cast<long double>(t.xi), p_g);
    const long double ln_term =
        t.ln_abs_psi + static_cast<long double>(t.m - 1) * ln_g - beta_g + ln_tail;
    sum += t.sign * std::exp(ln_term);
  }
  if (sum < 0.0L) sum = 0.0L;  // guard against rounding at extreme tails
  return static_cast<double>(sum);
}

double pdf_integer(const FadingSpec& spec, double snr) {
  return pdf_integer(expansion(spec), snr);
}

double pdf_bessel(const BesselChannel& ch, double snr) {
  if (snr < 0.0) {
    throw std::domain_error("pdf_bessel: requires snr >= 0, got " + std::to_string(snr));
  }
  const long double mt = ch.mu_tilde;
  const long double h = ch.h;
  const long double H = ch.H;
  const long double zt = ch.mean_snr;
  const long double nu = mt - 0.5L;

  // Common prefactor with the (x/2)^nu / Gamma(nu+1) part of the Bessel
  // series folded in analytically; the remaining series factor R >= 1 is
  // smooth in H and equals 1 at the balanced point, where this expression
  // is exactly the gamma density with shape 2 mu_tilde and mean zt.
  const long double ln_pref = kLn2 + 0.5L * kLnPi + 2.0L * mt * std::log(mt) +
                              mt * std::log(h) - detail::lgamma_t(mt) -
                              detail::lgamma_t(mt + 0.5L) - 2.0L * mt * std::log(zt);
  if (snr == 0.0) {
    if (mt > 0.5) return 0.0;
    if (mt == 0.5) return static_cast<double>(std::exp(ln_pref));
    return std::numeric_limits<double>::infinity();
  }
  const long double g = snr;
  const long double y = 2.0L * mt * H * g / zt;
  const long double decay = 2.0L * mt * h * g / zt;
  if (y <= 705.0L) {
    const auto series = detail::bessel_ratio_series<long double>(nu, y);
    const long double ln_f = ln_pref + (2.0L * mt - 1.0L) * std::log(g) - decay +
                             std::log(series.value);
    return static_cast<double>(std::exp(ln_f));
  }
  // Large Bessel argument: assemble from ln I_nu directly (H > 0 here).
  const long double ln_f = kLn2 + 0.5L * kLnPi + (mt + 0.5L) * std::log(mt) +
                           mt * std::log(h) - detail::lgamma_t(mt) -
                           (mt - 0.5L) * std::log(H) - (mt + 0.5L) * std::log(zt) +
                           (mt - 0.5L) * std::log(g) - decay +
                           static_cast<long double>(ln_bessel_i(
                               static_cast<double>(nu), static_cast<double>(y)));
  return static_cast<double>(std::exp(ln_f));
}

double pdf_bessel(const FadingSpec& spec, double snr) {
  return pdf_bessel(bessel_channel(spec), snr);
}

double mgf_two_gamma(double mu_tilde, double omega1, double omega2, double s) {
  if (!(mu_tilde > 0.0)) {
    throw std::domain_error("mgf_two_gamma: cluster count must be positive");
  }
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
    throw std::domain_error("mgf_two_gamma: component means must be positive");
  }
  if (s < 0.0) {
    throw std::domain_error("mgf_two_gamma: requires s >= 0, got s=" + std::to_string(s));
  }
  const long double mt = mu_tilde;
  const long double ln_val = -mt * (std::log1p(static_cast<long double>(s) * omega1 / mt) +
                                    std::log1p(static_cast<long double>(s) * omega2 / mt));
  return static_cast<double>(std::exp(ln_val));
}

double mgf(const FadingSpec& spec, double s) {
  const ComponentMeans w = component_means(spec);
  return mgf_two_gamma(static_cast<double>(spec.branches) * spec.mu, w.omega1, w.omega2, s);
}

double sample_snr(const FadingSpec& spec, Rng& rng) {
  const ComponentMeans w = component_means(spec);
  const double mt = static_cast<double>(spec.branches) * spec.mu;
  return rng.gamma(mt, w.omega1 / mt) + rng.gamma(mt, w.omega2 / mt);
}

FadingSpec from_special_case_nakagami(int m, int branches, double mean_snr) {
  return make_fading(Format::I, kNakagamiEta, m, branches, mean_snr);
}

FadingSpec from_special_case_rayleigh(int branches, double mean_snr) {
  return from_special_case_nakagami(1, branches, mean_snr);
}

FadingSpec from_special_case_hoyt_mu1(double q, int branches, double mean_snr) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::domain_error("hoyt: axial ratio must satisfy 0 < q <= 1, got q=" +
                            std::to_string(q));
  }
  const double eta = std::max((1.0 - q) / (1.0 + q), kNakagamiEta);
  return make_fading(Format::I, eta, 1, branches, mean_snr);
}

BesselChannel hoyt_channel_reference(double q, double mean_snr) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::domain_error("hoyt: axial ratio must satisfy 0 < q <= 1, got q=" +
                            std::to_string(q));
  }
  const HHPair g = compute_hH(Format::I, q * q);
  return make_bessel_channel(0.5, g.h, g.H, mean_snr);
}

}  // namespace etamu
