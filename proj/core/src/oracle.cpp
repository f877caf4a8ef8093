// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "etamu/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "etamu/errors.hpp"
#include "etamu/special.hpp"

namespace etamu {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Fixed Monte Carlo block size; every block b draws from an Rng seeded
// with (seed, b), so estimates depend only on (seed, n).
constexpr std::uint64_t kMcBlock = 65536;

// Semi-infinite quadrature with the truncated-domain fallback: when the
// mapped integral stalls, retry on [0, g_max] with g_max far enough into
// the exponential tail that the remainder is negligible against abs_tol.
double integrate_snr_average(const std::function<double(double)>& f,
                             double combined_mean, double mu_tilde,
                             const QuadratureSettings& settings, const char* who) {
  QuadratureResult r = integrate_semi_infinite(f, settings);
  if (r.converged) return r.value;
  const double g_max = combined_mean * std::max(200.0, 50.0 * mu_tilde);
  QuadratureResult fallback = integrate_adaptive(f, 0.0, g_max, settings);
  if (fallback.converged) return fallback.value;
  throw numerical_error(std::string(who) +
                            ": quadrature failed to reach tolerance (error estimate " +
                            std::to_string(fallback.error_estimate) + ")",
                        fallback.value);
}

MonteCarloEstimate finish_estimate(long double sum, long double sum_sq,
                                   std::uint64_t n, std::uint64_t seed) {
  MonteCarloEstimate est;
  est.n_samples = n;
  est.seed = seed;
  const long double mean = sum / static_cast<long double>(n);
  est.mean = static_cast<double>(mean);
  if (n > 1) {
    long double var = (sum_sq - static_cast<long double>(n) * mean * mean) /
                      static_cast<long double>(n - 1);
    if (var < 0.0L) var = 0.0L;
    est.std_error = static_cast<double>(std::sqrt(var / static_cast<long double>(n)));
  }
  return est;
}

// Runs `body(rng, i)` for each of n samples in fixed seeded blocks and
// accumulates the returned values and their squares in block order.
template <class Body>
MonteCarloEstimate run_blocks(std::uint64_t n, std::uint64_t seed, Body body) {
  if (n == 0) throw std::invalid_argument("Monte Carlo sample count must be positive");
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  const std::uint64_t blocks = (n + kMcBlock - 1) / kMcBlock;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    Rng rng(seed, b);
    const std::uint64_t lo = b * kMcBlock;
    const std::uint64_t hi = std::min(n, lo + kMcBlock);
    long double bsum = 0.0L;
    long double bsq = 0.0L;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double v = body(rng);
      bsum += v;
      bsq += static_cast<long double>(v) * v;
    }
    sum += bsum;
    sum_sq += bsq;
  }
  return finish_estimate(sum, sum_sq, n, seed);
}

double gamma_pdf(double shape, double mean, double x) {
  if (x <= 0.0) return 0.0;
  const double rate = shape / mean;
  return std::exp(shape * std::log(rate) - std::lgamma(shape) +
                  (shape - 1.0) * std::log(x) - rate * x);
}

struct TwoGamma {
  double mu_tilde;
  double omega1;
  double omega2;
};

TwoGamma two_gamma_of(const BesselChannel& ch) {
  return {ch.mu_tilde, ch.mean_snr / (2.0 * (ch.h + ch.H)),
          ch.mean_snr / (2.0 * (ch.h - ch.H))};
}

double convolution_density(const TwoGamma& tg, double snr,
                           const QuadratureSettings& settings) {
  if (snr < 0.0) {
    throw std::domain_error("pdf_convolution: requires snr >= 0");
  }
  if (snr == 0.0) return 0.0;
  const auto integrand = [&tg, snr](double t) {
    // x = snr * t keeps the domain fixed at (0, 1) for any snr.
    const double x = snr * t;
    return snr * gamma_pdf(tg.mu_tilde, tg.omega1, x) *
           gamma_pdf(tg.mu_tilde, tg.omega2, snr - x);
  };
  QuadratureResult r = integrate_adaptive(integrand, 0.0, 1.0, settings);
  if (!r.converged) {
    throw numerical_error("pdf_convolution: quadrature failed to reach tolerance",
                          r.value);
  }
  return r.value;
}

}  // namespace

double aber_quadrature(const BesselChannel& ch, const ModulationSpec& mod,
                       const NoiseSpec& noise, const QuadratureSettings& settings) {
  const auto f = [&](double g) {
    return pdf_bessel(ch, g) * qa_exact(noise, std::sqrt(mod.B * g));
  };
  return mod.A *
         integrate_snr_average(f, ch.mean_snr, ch.mu_tilde, settings, "aber_quadrature");
}

double aber_quadrature(const FadingSpec& spec, const ModulationSpec& mod,
                       const NoiseSpec& noise, const QuadratureSettings& settings) {
  return aber_quadrature(bessel_channel(spec), mod, noise, settings);
}

double acc_quadrature(const BesselChannel& ch, const QuadratureSettings& settings) {
  constexpr double kInvLn2 = 1.4426950408889634073599246810;
  const auto f = [&](double g) { return pdf_bessel(ch, g) * std::log1p(g) * kInvLn2; };
  return integrate_snr_average(f, ch.mean_snr, ch.mu_tilde, settings, "acc_quadrature");
}

double acc_quadrature(const FadingSpec& spec, const QuadratureSettings& settings) {
  return acc_quadrature(bessel_channel(spec), settings);
}

double aber_quadrature_approx(const FadingSpec& spec, const ModulationSpec& mod,
                              const ExpSumApprox& noise_approx,
                              const QuadratureSettings& settings) {
  if (noise_approx.kind != ApproxKind::decaying) {
    throw std::invalid_argument("aber_quadrature_approx: decaying approximation required");
  }
  const IntegerFormExpansion ex = expansion(spec);
  const auto f = [&](double g) {
    return pdf_integer(ex, g) * eval_approx(noise_approx, mod.B * g);
  };
  return mod.A * integrate_snr_average(f, ex.zeta_tilde, ex.mu_tilde, settings,
                                       "aber_quadrature_approx");
}

double acc_quadrature_approx(const FadingSpec& spec, const ExpSumApprox& log2_approx,
                             const QuadratureSettings& settings) {
  if (log2_approx.kind != ApproxKind::saturating) {
    throw std::invalid_argument("acc_quadrature_approx: saturating approximation required");
  }
  const IntegerFormExpansion ex = expansion(spec);
  const auto f = [&](double g) {
    return pdf_integer(ex, g) * eval_approx(log2_approx, g);
  };
  return integrate_snr_average(f, ex.zeta_tilde, ex.mu_tilde, settings,
                               "acc_quadrature_approx");
}

MonteCarloEstimate aber_montecarlo(const FadingSpec& spec, const ModulationSpec& mod,
                                   const NoiseSpec& noise, std::uint64_t n,
                                   std::uint64_t seed) {
  return run_blocks(n, seed, [&](Rng& rng) {
    const double g = sample_snr(spec, rng);
    return mod.A * qa_exact(noise, std::sqrt(mod.B * g));
  });
}

MonteCarloEstimate ber_symbol_sim_bpsk(const FadingSpec& spec, const NoiseSpec& noise,
                                       std::uint64_t n, std::uint64_t seed) {
  return run_blocks(n, seed, [&](Rng& rng) {
    // Draw order is fixed: SNR first, then the noise sample.
    const double g = sample_snr(spec, rng);
    const double u = sample_ggn(noise, rng);
    return u > std::sqrt(2.0 * g) ? 1.0 : 0.0;
  });
}

MonteCarloEstimate acc_montecarlo(const FadingSpec& spec, std::uint64_t n,
                                  std::uint64_t seed) {
  constexpr double kInvLn2 = 1.4426950408889634073599246810;
  return run_blocks(n, seed, [&](Rng& rng) {
    return std::log1p(sample_snr(spec, rng)) * kInvLn2;
  });
}

double aber_mgf_awgn(const FadingSpec& spec, const ModulationSpec& mod,
                     const QuadratureSettings& settings) {
  if (mod.scheme != Scheme::BPSK && mod.scheme != Scheme::QPSK &&
      mod.scheme != Scheme::MPSK) {
    throw std::invalid_argument(
        "aber_mgf_awgn: polar-form oracle covers BPSK/QPSK/MPSK only");
  }
  const double upper = (static_cast<double>(mod.M) - 1.0) / mod.M * kPi;
  const auto f = [&](double theta) {
    const double s = std::sin(theta);
    return mgf(spec, mod.B / (2.0 * s * s));
  };
  QuadratureResult r = integrate_adaptive(f, 0.0, upper, settings);
  if (!r.converged) {
    throw numerical_error("aber_mgf_awgn: quadrature failed to reach tolerance",
                          r.value);
  }
  return r.value / kPi;
}

double pdf_convolution(const BesselChannel& ch, double snr,
                       const QuadratureSettings& settings) {
  return convolution_density(two_gamma_of(ch), snr, settings);
}

double pdf_convolution(const FadingSpec& spec, double snr,
                       const QuadratureSettings& settings) {
  return convolution_density(two_gamma_of(bessel_channel(spec)), snr, settings);
}

HoytArbitrationReport hoyt_arbitration(double q, double mean_snr, std::uint64_t n,
                                       std::uint64_t seed) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::domain_error("hoyt_arbitration: requires 0 < q <= 1");
  }
  if (!(mean_snr > 0.0)) {
    throw std::domain_error("hoyt_arbitration: requires mean_snr > 0");
  }
  if (n < 1000) {
    throw std::invalid_argument("hoyt_arbitration: needs at least 1000 samples");
  }

  HoytArbitrationReport report;
  report.q = q;
  report.mean_snr = mean_snr;
  report.n_samples = n;
  report.seed = seed;

  // Physical two-component envelope power with axial ratio q and the
  // requested mean: Var X = q^2 s2, Var Y = s2, q^2 s2 + s2 = mean.
  const double sy = std::sqrt(mean_snr / (1.0 + q * q));
  const double sx = q * sy;
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(n));
  const std::uint64_t blocks = (n + kMcBlock - 1) / kMcBlock;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    Rng rng(seed, b);
    const std::uint64_t lo = b * kMcBlock;
    const std::uint64_t hi = std::min(n, lo + kMcBlock);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double x = sx * rng.normal();
      const double y = sy * rng.normal();
      samples.push_back(x * x + y * y);
    }
  }
  std::sort(samples.begin(), samples.end());

  // Candidate 1: unit-cluster mapping; its SNR law is hypoexponential, so
  // the distribution function is available in closed form.
  const IntegerFormExpansion ex = expansion(from_special_case_hoyt_mu1(q, 1, mean_snr));
  const auto cdf_mu1 = [&ex](double g) {
    const double d = ex.omega2 - ex.omega1;
    return 1.0 - (ex.omega2 * std::exp(-g / ex.omega2) -
                  ex.omega1 * std::exp(-g / ex.omega1)) / d;
  };

  // Candidate 2: classical half-cluster description; tabulate its
  // distribution function by panelwise quadrature of the density on a
  // fixed fine grid and interpolate.
  const BesselChannel ref = hoyt_channel_reference(q, mean_snr);
  const double g_max = std::max(mean_snr * 50.0, samples.back() * 1.05);
  const int n_panels = 4000;
  std::vector<double> cdf_grid(static_cast<std::size_t>(n_panels) + 1, 0.0);
  const double dg = g_max / n_panels;
  const QuadratureSettings panel_settings{1e-12, 1e-16, 50};
  double acc_mass = 0.0;
  for (int j = 0; j < n_panels; ++j) {
    const auto dens = [&ref](double g) { return pdf_bessel(ref, g); };
    acc_mass += integrate_adaptive(dens, j * dg, (j + 1) * dg, panel_settings).value;
    cdf_grid[static_cast<std::size_t>(j) + 1] = acc_mass;
  }
  const auto cdf_half = [&](double g) {
    if (g <= 0.0) return 0.0;
    if (g >= g_max) return 1.0;
    const double pos = g / dg;
    const int j = std::min(static_cast<int>(pos), n_panels - 1);
    const double frac = pos - j;
    const double lo_v = cdf_grid[static_cast<std::size_t>(j)];
    const double hi_v = cdf_grid[static_cast<std::size_t>(j) + 1];
    return lo_v + frac * (hi_v - lo_v);
  };

  double d_mu1 = 0.0;
  double d_half = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = samples[static_cast<std::size_t>(i)];
    const double lo_step = static_cast<double>(i) * inv_n;
    const double hi_step = static_cast<double>(i + 1) * inv_n;
    const double f1 = cdf_mu1(x);
    const double f2 = cdf_half(x);
    d_mu1 = std::max({d_mu1, std::abs(f1 - lo_step), std::abs(hi_step - f1)});
    d_half = std::max({d_half, std::abs(f2 - lo_step), std::abs(hi_step - f2)});
  }
  report.ks_mu1 = d_mu1;
  report.ks_half_cluster = d_half;
  report.ks_critical_1pct = 1.6276 / std::sqrt(static_cast<double>(n));
  report.mu1_supported = d_mu1 <= report.ks_critical_1pct;
  report.half_cluster_supported = d_half <= report.ks_critical_1pct;
  return report;
}

}  // namespace etamu
