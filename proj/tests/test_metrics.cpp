// SPDX-License-Identifier: Apache-2.0
//
// Closed-form performance layer: modulation constants, the kernel integral
// against direct quadrature, and the transform identities that tie the
// closed forms to the MGF.

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "etamu/approx.hpp"
#include "etamu/fading.hpp"
#include "etamu/metrics.hpp"
#include "etamu/quadrature.hpp"
#include "etamu/special.hpp"

using namespace etamu;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

// The kernel's defining integral, evaluated the slow way.
double kernel_by_quadrature(int m, double beta_eff, int xi, double p) {
  const auto q = integrate_semi_infinite(
      [=](double g) {
        if (g == 0.0) return 0.0;
        return std::exp((m - 1) * std::log(g) - beta_eff * g) *
               lower_inc_gamma(double(xi), p * g);
      },
      {1e-12, 1e-300, 4000});
  return q.value;
}

}  // namespace

TEST_CASE("modulation constants") {
  auto check = [](Scheme s, int M, double A, double B) {
    const auto mod = modulation_params(s, M);
    CHECK(rel_err(mod.A, A) < 1e-15);
    CHECK(rel_err(mod.B, B) < 1e-15);
    CHECK(mod.M == M);
  };
  check(Scheme::BFSK, 2, 1.0, 1.0);
  check(Scheme::BPSK, 2, 1.0, 2.0);
  check(Scheme::QPSK, 4, 2.0, 1.0);
  check(Scheme::MPAM, 4, 1.5, 0.4);
  check(Scheme::MPAM, 2, 1.0, 2.0);
  check(Scheme::MPSK, 8, 2.0, 2.0 * std::pow(std::sin(M_PI / 8.0), 2.0));
  check(Scheme::MQAM_rect, 16, 3.0, 0.2);
  check(Scheme::MQAM_rect, 64, 3.5, 3.0 / 63.0);
  check(Scheme::MQAM_nonrect, 8, 4.0, 3.0 / 7.0);
  check(Scheme::MQAM_nonrect, 32, 4.0, 3.0 / 31.0);
  // Quadriphase shift keying is the M = 4 point of the phase family.
  const auto qpsk = modulation_params(Scheme::QPSK, 4);
  const auto mpsk4 = modulation_params(Scheme::MPSK, 4);
  CHECK(rel_err(mpsk4.B, qpsk.B) < 1e-15);
  CHECK(mpsk4.A == qpsk.A);
}

TEST_CASE("modulation validation") {
  CHECK_THROWS_AS(modulation_params(Scheme::BPSK, 4), std::invalid_argument);
  CHECK_THROWS_AS(modulation_params(Scheme::QPSK, 2), std::invalid_argument);
  CHECK_THROWS_AS(modulation_params(Scheme::MPAM, 3), std::invalid_argument);
  CHECK_THROWS_AS(modulation_params(Scheme::MPSK, 2), std::invalid_argument);
  CHECK_THROWS_AS(modulation_params(Scheme::MQAM_rect, 8), std::invalid_argument);
  CHECK_THROWS_AS(modulation_params(Scheme::MQAM_nonrect, 16), std::invalid_argument);
  CHECK_THROWS_AS(modulation_params(Scheme::MQAM_rect, 0), std::invalid_argument);
  CHECK_THROWS_AS(modulation_params(Scheme::MPAM, -4), std::invalid_argument);
}

TEST_CASE("kernel: frozen rational and reference values") {
  CHECK(rel_err(kernel_K(2, 1.5, 2, 1.5), 2.0 / 9.0) < 1e-13);
  CHECK(rel_err(kernel_K(1, 2.0, 1, 1.0), 1.0 / 6.0) < 1e-13);
  CHECK(rel_err(kernel_K(5, 0.7, 8, 3.1), 681253.518461130340) < 1e-12);
  CHECK_THROWS_AS(kernel_K(0, 1.0, 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(kernel_K(1, 0.0, 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(kernel_K(1, 1.0, 0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kernel_K(1, 1.0, 1, -2.0), std::domain_error);
  // Far outside the double range the kernel must refuse loudly.
  CHECK_THROWS_AS(kernel_K(60, 1e-5, 60, 1e-5), std::overflow_error);
}

TEST_CASE("kernel agrees with its defining integral on random draws") {
  std::mt19937_64 gen(12345);
  std::uniform_int_distribution<int> mdist(1, 6), xidist(1, 12);
  std::uniform_real_distribution<double> logu(std::log(0.05), std::log(20.0));
  for (int trial = 0; trial < 50; ++trial) {
    const int m = mdist(gen);
    const int xi = xidist(gen);
    const double beta_eff = std::exp(logu(gen));
    const double p = std::exp(logu(gen));
    const double closed = kernel_K(m, beta_eff, xi, p);
    const double quad = kernel_by_quadrature(m, beta_eff, xi, p);
    CHECK(rel_err(closed, quad) < 1e-10);
  }
}

TEST_CASE("expansion-weighted kernel sums reproduce the mgf") {
  const FadingSpec specs[] = {
      make_fading(Format::I, 0.5, 1, 1, 1.0),
      make_fading(Format::I, 0.2, 2, 2, 2.5),
      make_fading(Format::II, 0.7, 3, 3, 0.8),  // 9 clusters: cancellation stress
  };
  for (const auto& spec : specs) {
    const auto ex = expansion(spec);
    for (double s : {0.3, 1.0, 5.0}) {
      long double acc_sum = 0.0L;
      for (const auto& t : ex.terms) {
        acc_sum += static_cast<long double>(t.psi) *
                   static_cast<long double>(kernel_K(t.m, ex.beta + s, t.xi, ex.p));
      }
      CHECK(rel_err(static_cast<double>(acc_sum), mgf(spec, s)) < 1e-11);
    }
  }
}

TEST_CASE("error rate equals the weight-mixed mgf") {
  // Substituting the exponential-sum tail into the average collapses the
  // whole expression to A * sum_i alpha_i M(lambda_i B); the kernel route
  // must reproduce that number to near machine accuracy.
  const auto approx = preset_qa(2.0);
  const FadingSpec specs[] = {
      make_fading(Format::I, 0.5, 1, 1, 4.0),
      make_fading(Format::I, 0.1, 3, 2, 10.0),
      make_fading(Format::II, 0.45, 2, 3, 31.6),
  };
  const ModulationSpec mods[] = {
      modulation_params(Scheme::BPSK, 2),
      modulation_params(Scheme::MQAM_rect, 16),
      modulation_params(Scheme::MPSK, 8),
  };
  for (const auto& spec : specs) {
    for (const auto& mod : mods) {
      const double closed = aber(spec, mod, approx);
      long double direct = 0.0L;
      for (const auto& t : approx.terms) {
        direct += static_cast<long double>(t.alpha) *
                  static_cast<long double>(mgf(spec, t.lambda * mod.B));
      }
      direct *= mod.A;
      CHECK(rel_err(closed, static_cast<double>(direct)) < 1e-10);
      CHECK(closed > 0.0);
      CHECK(closed < 0.5 * mod.A + 1e-12);
    }
  }
}

TEST_CASE("capacity equals the weight-mixed mgf complement") {
  const auto log2fit =
      fit_expsum(FitTarget::log2, 0.0, ApproxKind::saturating, 1e-3, 1e3);
  const FadingSpec specs[] = {
      make_fading(Format::I, 0.5, 1, 1, 4.0),
      make_fading(Format::II, 0.45, 2, 3, 31.6),
  };
  for (const auto& spec : specs) {
    const double closed = acc(spec, log2fit);
    long double direct = 0.0L;
    for (const auto& t : log2fit.terms) {
      direct += static_cast<long double>(t.alpha) *
                (1.0L - static_cast<long double>(mgf(spec, t.lambda)));
    }
    CHECK(rel_err(closed, static_cast<double>(direct)) < 1e-10);
    CHECK(closed > 0.0);
  }
}

TEST_CASE("approximation kind is enforced") {
  const auto spec = make_fading(Format::I, 0.5, 1, 1, 4.0);
  const auto mod = modulation_params(Scheme::BPSK, 2);
  const auto sat = fit_expsum(FitTarget::log2, 0.0, ApproxKind::saturating, 1e-3, 1e3);
  const auto dec = preset_qa(2.0);
  CHECK_THROWS_AS(aber(spec, mod, sat), std::invalid_argument);
  CHECK_THROWS_AS(acc(spec, dec), std::invalid_argument);
}

TEST_CASE("performance orderings") {
  const auto approx = preset_qa(2.0);
  const auto mod = modulation_params(Scheme::BPSK, 2);
  const auto log2fit =
      fit_expsum(FitTarget::log2, 0.0, ApproxKind::saturating, 1e-3, 1e3);
  double prev_aber = 1.0;
  double prev_acc = 0.0;
  for (double db = 0.0; db <= 30.0; db += 2.5) {
    const double gbar = std::pow(10.0, db / 10.0);
    const auto s1 = make_fading(Format::I, 0.5, 1, 1, gbar);
    const auto s3 = make_fading(Format::I, 0.5, 1, 3, gbar);
    const double p1 = aber(s1, mod, approx);
    const double p3 = aber(s3, mod, approx);
    CHECK(p1 < prev_aber);  // strictly decreasing in mean SNR
    CHECK(p3 <= p1);        // diversity never hurts
    const double c1 = acc(s1, log2fit);
    CHECK(c1 > prev_acc);  // strictly increasing in mean SNR
    prev_aber = p1;
    prev_acc = c1;
  }
}

TEST_CASE("curve wrapper") {
  const auto spec = make_fading(Format::I, 0.5, 1, 2, 1.0);  // mean_snr overridden per point
  const auto mod = modulation_params(Scheme::QPSK, 4);
  const auto approx = preset_qa(2.0);
  const std::vector<double> grid = {0.0, 5.0, 10.0, 15.0};
  const auto pts = curve(CurveKind::aber, spec, &mod, approx, grid);
  REQUIRE(pts.size() == grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(pts[i].mean_snr_db == grid[i]);
    auto at = spec;
    at.mean_snr = std::pow(10.0, grid[i] / 10.0);
    CHECK(rel_err(pts[i].value, aber(at, mod, approx)) < 1e-14);
  }
  CHECK_THROWS_AS(curve(CurveKind::aber, spec, &mod, approx, {}), std::invalid_argument);
  CHECK_THROWS_AS(curve(CurveKind::aber, spec, &mod, approx, {0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(curve(CurveKind::aber, spec, nullptr, approx, grid),
                  std::invalid_argument);
  const auto log2fit =
      fit_expsum(FitTarget::log2, 0.0, ApproxKind::saturating, 1e-3, 1e3);
  const auto cpts = curve(CurveKind::acc, spec, nullptr, log2fit, grid);
  REQUIRE(cpts.size() == grid.size());
  CHECK(cpts.back().value > cpts.front().value);
}
