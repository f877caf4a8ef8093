// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "etamu/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "etamu/errors.hpp"
#include "etamu/special.hpp"

namespace etamu {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

bool is_perfect_square(int m) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
  return r * r == m;
}

[[noreturn]] void bad_m(const char* scheme, int m, const char* expect) {
  throw std::invalid_argument(std::string("modulation_params: ") + scheme +
                              " requires " + expect + ", got M=" + std::to_string(m));
}

// ln K(m, b, xi, p) with the terminating hypergeometric factor evaluated
// through the Euler transformation:
//   2F1(xi, m+xi; xi+1; -p/b) = (b/(b+p))^(m+xi-1) * S,
//   S = sum_{n=0}^{m-1} t_n,  t_0 = 1,
//   t_{n+1} = t_n * (m-1-n) * (p/b) / (xi+1+n)  >= 0,
// so ln K = xi ln p + ln Gamma(m+xi) - ln xi - ln b - (m+xi-1) ln(b+p)
//           + ln S with every piece cancellation-free.
long double kernel_K_ln(int m, long double beta_eff, int xi, long double p) {
  const long double ratio = p / beta_eff;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 0; n < m - 1; ++n) {
    term *= static_cast<long double>(m - 1 - n) * ratio /
            static_cast<long double>(xi + 1 + n);
    sum += term;
  }
  return static_cast<long double>(xi) * std::log(p) +
         detail::lgamma_t(static_cast<long double>(m + xi)) -
         std::log(static_cast<long double>(xi)) - std::log(beta_eff) -
         static_cast<long double>(m + xi - 1) * std::log(beta_eff + p) +
         std::log(sum);
}

void check_kernel_args(int m, double beta_eff, int xi, double p) {
  if (m < 1 || xi < 1) {
    throw std::domain_error("kernel_K: indices must satisfy m >= 1, xi >= 1, got m=" +
                            std::to_string(m) + ", xi=" + std::to_string(xi));
  }
  if (!(beta_eff > 0.0) || !(p > 0.0)) {
    throw std::domain_error("kernel_K: rates must be positive, got beta_eff=" +
                            std::to_string(beta_eff) + ", p=" + std::to_string(p));
  }
}

void check_kind(const ExpSumApprox& approx, ApproxKind expected, const char* who) {
  if (approx.kind != expected) {
    throw std::invalid_argument(std::string(who) + ": approximation kind mismatch (" +
                                (expected == ApproxKind::decaying
                                     ? "decaying required for error rates"
                                     : "saturating required for capacity") +
                                ")");
  }
  if (approx.terms.empty()) {
    throw std::invalid_argument(std::string(who) + ": approximation has no terms");
  }
}

}  // namespace

ModulationSpec modulation_params(Scheme scheme, int M) {
  ModulationSpec mod;
  mod.scheme = scheme;
  mod.M = M;
  switch (scheme) {
    case Scheme::BFSK:
      if (M != 2) bad_m("BFSK", M, "M=2");
      mod.A = 1.0;
      mod.B = 1.0;
      break;
    case Scheme::BPSK:
      if (M != 2) bad_m("BPSK", M, "M=2");
      mod.A = 1.0;
      mod.B = 2.0;
      break;
    case Scheme::QPSK:
      if (M != 4) bad_m("QPSK", M, "M=4");
      mod.A = 2.0;
      mod.B = 1.0;
      break;
    case Scheme::MPAM:
      if (M < 2 || !is_power_of_two(M)) bad_m("MPAM", M, "a power of two >= 2");
      mod.A = 2.0 * (M - 1) / M;
      mod.B = 6.0 / (static_cast<double>(M) * M - 1.0);
      break;
    case Scheme::MPSK:
      if (M < 4 || !is_power_of_two(M)) bad_m("MPSK", M, "a power of two >= 4");
      {
        const double s = std::sin(kPi / M);
        mod.A = 2.0;
        mod.B = 2.0 * s * s;
      }
      break;
    case Scheme::MQAM_rect:
      if (M < 4 || !is_power_of_two(M) || !is_perfect_square(M)) {
        bad_m("MQAM_rect", M, "a square power of two >= 4");
      }
      {
        const double root = std::sqrt(static_cast<double>(M));
        mod.A = 4.0 * (root - 1.0) / root;
        mod.B = 3.0 / (M - 1.0);
      }
      break;
    case Scheme::MQAM_nonrect:
      if (M < 8 || !is_power_of_two(M) || is_perfect_square(M)) {
        bad_m("MQAM_nonrect", M, "a non-square power of two >= 8");
      }
      mod.A = 4.0;
      mod.B = 3.0 / (M - 1.0);
      break;
  }
  return mod;
}

double kernel_K(int m, double beta_eff, int xi, double p) {
  check_kernel_args(m, beta_eff, xi, p);
  const long double ln_val = kernel_K_ln(m, beta_eff, xi, p);
  if (ln_val > 709.78L) {
    throw std::overflow_error("kernel_K: result overflows double for m=" +
                              std::to_string(m) + ", xi=" + std::to_string(xi));
  }
  return static_cast<double>(std::exp(ln_val));
}

double aber(const IntegerFormExpansion& ex, const ModulationSpec& mod,
            const ExpSumApprox& noise_approx) {
  check_kind(noise_approx, ApproxKind::decaying, "aber");
  // sum_k psi_k sum_i alpha_i K(m_k, beta + lambda_i B, xi_k, p), assembled
  // per term as sign * exp(ln|psi| + ln K) in extended precision: the
  // alternating k-sum loses ~6-7 digits to cancellation at large cluster
  // counts, which extended precision absorbs.
  long double total = 0.0L;
  const long double p = ex.p;
  for (const ExpansionTerm& t : ex.terms) {
    long double inner = 0.0L;
    for (const ExpSumTerm& a : noise_approx.terms) {
      const long double beta_eff = static_cast<long double>(ex.beta) +
                                   static_cast<long double>(a.lambda) * mod.B;
      inner += static_cast<long double>(a.alpha) *
               std::exp(kernel_K_ln(t.m, beta_eff, t.xi, p));
    }
    total += t.sign * std::exp(t.ln_abs_psi) * inner;
  }
  return static_cast<double>(mod.A * total);
}

double aber(const FadingSpec& spec, const ModulationSpec& mod,
            const ExpSumApprox& noise_approx) {
  return aber(expansion(spec), mod, noise_approx);
}

double acc(const IntegerFormExpansion& ex, const ExpSumApprox& log2_approx) {
  check_kind(log2_approx, ApproxKind::saturating, "acc");
  long double total = 0.0L;
  const long double p = ex.p;
  for (const ExpansionTerm& t : ex.terms) {
    const long double base = std::exp(kernel_K_ln(t.m, ex.beta, t.xi, p));
    long double inner = 0.0L;
    for (const ExpSumTerm& a : log2_approx.terms) {
      const long double shifted = std::exp(kernel_K_ln(
          t.m, static_cast<long double>(ex.beta) + a.lambda, t.xi, p));
      inner += static_cast<long double>(a.alpha) * (base - shifted);
    }
    total += t.sign * std::exp(t.ln_abs_psi) * inner;
  }
  return static_cast<double>(total);
}

double acc(const FadingSpec& spec, const ExpSumApprox& log2_approx) {
  return acc(expansion(spec), log2_approx);
}

std::vector<PerformancePoint> curve(CurveKind kind, const FadingSpec& spec,
                                    const ModulationSpec* mod,
                                    const ExpSumApprox& approx,
                                    const std::vector<double>& snr_grid_db) {
  if (snr_grid_db.empty()) {
    throw std::invalid_argument("curve: empty SNR grid");
  }
  for (std::size_t j = 1; j < snr_grid_db.size(); ++j) {
    if (!(snr_grid_db[j] > snr_grid_db[j - 1])) {
      throw std::invalid_argument("curve: SNR grid must be strictly increasing");
    }
  }
  if (kind == CurveKind::aber && mod == nullptr) {
    throw std::invalid_argument("curve: error-rate sweep requires a modulation");
  }
  std::vector<PerformancePoint> out;
  out.reserve(snr_grid_db.size());
  for (const double db : snr_grid_db) {
    FadingSpec point_spec = spec;
    point_spec.mean_snr = std::pow(10.0, db / 10.0);
    PerformancePoint pt;
    pt.mean_snr_db = db;
    try {
      pt.value = kind == CurveKind::aber ? aber(point_spec, *mod, approx)
                                         : acc(point_spec, approx);
    } catch (const numerical_error& e) {
      throw numerical_error("curve: failure at " + std::to_string(db) +
                                " dB: " + e.what(),
                            e.best_estimate());
    } catch (const std::exception& e) {
      throw std::runtime_error("curve: failure at " + std::to_string(db) +
                               " dB: " + e.what());
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace etamu
