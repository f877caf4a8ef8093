// SPDX-License-Identifier: Apache-2.0

#include "validate.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "etamu/approx.hpp"
#include "etamu/fading.hpp"
#include "etamu/metrics.hpp"
#include "etamu/noise.hpp"
#include "etamu/oracle.hpp"
#include "etamu/quadrature.hpp"
#include "etamu/special.hpp"

namespace etamu_cli {

namespace {

using namespace etamu;

int check(bool ok, const char* name, double measured, double bound) {
  std::printf("  %-4s %-44s measured=%-12.4e bound=%.1e\n", ok ? "ok" : "FAIL",
              name, measured, bound);
  return ok ? 0 : 1;
}

double rel(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

int suite_pdf() {
  std::printf("suite pdf\n");
  int fails = 0;

  double worst = 0.0;
  for (Format f : {Format::I, Format::II}) {
    for (double eta : {0.1, 0.5, 0.9}) {
      for (int mu : {1, 2, 3}) {
        for (int L : {1, 2}) {
          const auto spec = make_fading(f, eta, mu, L, 1.7);
          for (double frac : {0.05, 0.5, 1.0, 3.0}) {
            const double g = frac * L * 1.7;
            worst = std::max(worst, rel(pdf_integer(spec, g), pdf_bessel(spec, g)));
          }
        }
      }
    }
  }
  fails += check(worst <= 1e-9, "series form matches product form", worst, 1e-9);

  double worst_mass = 0.0, worst_mean = 0.0;
  const FadingSpec specs[] = {
      make_fading(Format::I, 0.25, 2, 1, 1.0),
      make_fading(Format::II, 0.6, 1, 2, 3.0),
      make_fading(Format::I, 0.9, 3, 3, 0.4),
  };
  for (const auto& spec : specs) {
    const double zt = spec.branches * spec.mean_snr;
    const auto mass = integrate_semi_infinite(
        [&](double g) { return pdf_bessel(spec, g); }, {1e-11, 1e-16, 4000});
    worst_mass = std::max(worst_mass, std::fabs(mass.value - 1.0));
    const auto mean = integrate_semi_infinite(
        [&](double g) { return g * pdf_bessel(spec, g); }, {1e-11, 1e-16, 4000});
    worst_mean = std::max(worst_mean, rel(mean.value, zt));
  }
  fails += check(worst_mass <= 1e-8, "density integrates to one", worst_mass, 1e-8);
  fails += check(worst_mean <= 1e-6, "density mean equals combined SNR", worst_mean, 1e-6);

  double worst_hypo = 0.0;
  for (double eta : {0.1, 0.45, 0.8}) {
    const auto spec = make_fading(Format::I, eta, 1, 1, 2.3);
    const auto ex = expansion(spec);
    for (double g : {0.05, 0.3, 1.0, 2.3, 7.0}) {
      const double want = (std::exp(-g / ex.omega2) - std::exp(-g / ex.omega1)) /
                          (ex.omega2 - ex.omega1);
      worst_hypo = std::max(worst_hypo, rel(pdf_integer(ex, g), want));
    }
  }
  fails += check(worst_hypo <= 1e-12, "unit cluster count is hypoexponential",
                 worst_hypo, 1e-12);
  return fails;
}

int suite_noise() {
  std::printf("suite noise\n");
  int fails = 0;

  const auto n2 = make_noise(2.0);
  double worst2 = 0.0;
  for (double x = 0.0; x <= 6.0; x += 0.1) {
    worst2 = std::max(worst2, rel(qa_exact(n2, x), 0.5 * std::erfc(x / std::sqrt(2.0))));
  }
  fails += check(worst2 <= 1e-12, "a=2 tail equals Gaussian Q", worst2, 1e-12);

  const auto n1 = make_noise(1.0);
  double worst1 = 0.0;
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    worst1 =
        std::max(worst1, rel(qa_exact(n1, x), 0.5 * std::exp(-std::sqrt(2.0) * x)));
  }
  fails += check(worst1 <= 1e-12, "a=1 tail equals Laplacian closed form", worst1, 1e-12);

  double worstq = 0.0, worstm = 0.0;
  for (double a : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    const auto noise = make_noise(a);
    for (double x : {0.1, 0.8, 2.0, 4.0}) {
      const auto tail = integrate_semi_infinite(
          [&](double t) { return ggn_pdf(noise, x + t); }, {1e-12, 1e-18, 4000});
      worstq = std::max(worstq, rel(qa_exact(noise, x), tail.value));
    }
    // u = v^2 keeps the integrand smooth at the origin for a < 1.
    const auto mass = integrate_semi_infinite(
        [&](double v) { return 2.0 * v * ggn_pdf(noise, v * v); },
        {1e-12, 1e-16, 4000});
    worstm = std::max(worstm, std::fabs(2.0 * mass.value - 1.0));
  }
  fails += check(worstq <= 1e-10, "tail equals density-tail quadrature", worstq, 1e-10);
  fails += check(worstm <= 1e-10, "density integrates to one", worstm, 1e-10);
  return fails;
}

int suite_kernel() {
  std::printf("suite kernel\n");
  int fails = 0;
  std::mt19937_64 gen(20250822);
  std::uniform_int_distribution<int> mdist(1, 6), xidist(1, 12);
  std::uniform_real_distribution<double> logu(std::log(0.05), std::log(20.0));
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int m = mdist(gen), xi = xidist(gen);
    const double be = std::exp(logu(gen)), p = std::exp(logu(gen));
    const auto q = integrate_semi_infinite(
        [=](double g) {
          if (g == 0.0) return 0.0;
          return std::exp((m - 1) * std::log(g) - be * g) *
                 lower_inc_gamma(double(xi), p * g);
        },
        {1e-12, 1e-300, 4000});
    const double r = rel(kernel_K(m, be, xi, p), q.value);
    worst = std::max(worst, r);
    char name[96];
    std::snprintf(name, sizeof(name), "kernel m=%d xi=%-2d beta=%-7.3f p=%-7.3f", m,
                  xi, be, p);
    fails += check(r <= 1e-10, name, r, 1e-10);
  }
  fails += check(worst <= 1e-10, "kernel worst of 50 random draws", worst, 1e-10);

  const auto approx = preset_qa(2.0);
  const auto mod = modulation_params(Scheme::QPSK, 4);
  double worst_sub = 0.0;
  for (double eta : {0.2, 0.7}) {
    for (int L : {1, 2}) {
      const auto spec = make_fading(Format::I, eta, 2, L, 8.0);
      worst_sub = std::max(
          worst_sub, rel(aber(spec, mod, approx), aber_quadrature_approx(spec, mod, approx)));
    }
  }
  fails += check(worst_sub <= 1e-8, "closed rate equals substituted quadrature",
                 worst_sub, 1e-8);
  return fails;
}

int suite_special_cases() {
  std::printf("suite special_cases\n");
  int fails = 0;

  const double exact = 0.5 * (1.0 - std::sqrt(10.0 / 11.0));
  const double closed = aber(from_special_case_rayleigh(1, 10.0),
                             modulation_params(Scheme::BPSK, 2), preset_qa(2.0));
  fails += check(rel(closed, exact) <= 0.005,
                 "one-cluster error rate matches closed form", rel(closed, exact),
                 5e-3);

  double worst_pdf = 0.0;
  for (int m : {1, 2, 4}) {
    const auto spec = from_special_case_nakagami(m, 1, 1.3);
    for (double frac : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double g = frac * 1.3;
      const double want = std::exp(m * std::log(m / 1.3) + (m - 1) * std::log(g) -
                                   m * g / 1.3 - ln_gamma(double(m)));
      worst_pdf = std::max(worst_pdf, rel(pdf_bessel(spec, g), want));
    }
  }
  fails += check(worst_pdf <= 1e-4, "limit constructor matches gamma density",
                 worst_pdf, 1e-4);

  const auto noise = make_noise(2.0);
  const auto bpsk = modulation_params(Scheme::BPSK, 2);
  double worst_mgf = 0.0;
  for (double gbar : {2.0, 10.0}) {
    const auto spec = make_fading(Format::I, 0.5, 1, 1, gbar);
    worst_mgf = std::max(worst_mgf, rel(aber_mgf_awgn(spec, bpsk),
                                        aber_quadrature(spec, bpsk, noise)));
  }
  fails += check(worst_mgf <= 1e-8, "transform route matches tail average",
                 worst_mgf, 1e-8);
  return fails;
}

int suite_hoyt_arbitration(std::uint64_t seed) {
  std::printf("suite hoyt_arbitration (report only)\n");
  for (double q : {0.3, 0.6}) {
    const auto rep = hoyt_arbitration(q, 2.0, 40000, seed);
    std::printf("  q=%.2f n=%llu seed=%llu critical(1%%)=%.5f\n", q,
                static_cast<unsigned long long>(rep.n_samples),
                static_cast<unsigned long long>(rep.seed), rep.ks_critical_1pct);
    std::printf("    unit-cluster mapping  (eta=(1-q)/(1+q), one pair):  KS=%.5f %s\n",
                rep.ks_mu1, rep.mu1_supported ? "supported" : "REJECTED");
    std::printf("    half-cluster mapping  (eta=q^2, half pair):         KS=%.5f %s\n",
                rep.ks_half_cluster,
                rep.half_cluster_supported ? "supported" : "REJECTED");
    const char* verdict = "inconclusive";
    if (rep.half_cluster_supported && !rep.mu1_supported) verdict = "half-cluster";
    if (rep.mu1_supported && !rep.half_cluster_supported) verdict = "unit-cluster";
    if (rep.mu1_supported && rep.half_cluster_supported) verdict = "both fit";
    std::printf("    sampled data supports: %s\n", verdict);
  }
  return 0;
}

}  // namespace

int run_validate(const std::string& suite, std::uint64_t seed) {
  int fails = 0;
  bool known = false;
  if (suite == "pdf" || suite == "all") {
    fails += suite_pdf();
    known = true;
  }
  if (suite == "noise" || suite == "all") {
    fails += suite_noise();
    known = true;
  }
  if (suite == "kernel" || suite == "all") {
    fails += suite_kernel();
    known = true;
  }
  if (suite == "special_cases" || suite == "all") {
    fails += suite_special_cases();
    known = true;
  }
  if (suite == "hoyt_arbitration" || suite == "all") {
    suite_hoyt_arbitration(seed);
    known = true;
  }
  if (!known) throw std::runtime_error("unknown validate suite '" + suite + "'");
  std::printf("validate %s: %d failure%s\n", suite.c_str(), fails,
              fails == 1 ? "" : "s");
  return fails;
}

}  // namespace etamu_cli
