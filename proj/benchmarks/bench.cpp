// SPDX-License-Identifier: Apache-2.0
//
// Hot-path timings: the closed-form building blocks, both density forms,
// the end-to-end closed metrics, the quadrature oracle they are judged
// against, and the deterministic fitter.

#include <benchmark/benchmark.h>

#include <cmath>

#include "etamu/approx.hpp"
#include "etamu/fading.hpp"
#include "etamu/metrics.hpp"
#include "etamu/noise.hpp"
#include "etamu/oracle.hpp"
#include "etamu/special.hpp"

using namespace etamu;

namespace {

void bm_kernel(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_K(m, 1.7, m + 3, 0.9));
  }
}
BENCHMARK(bm_kernel)->Arg(1)->Arg(3)->Arg(6);

void bm_pdf_bessel(benchmark::State& state) {
  const auto spec = make_fading(Format::I, 0.5, static_cast<int>(state.range(0)), 2, 1.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdf_bessel(spec, 2.3));
  }
}
BENCHMARK(bm_pdf_bessel)->Arg(1)->Arg(3);

void bm_pdf_integer(benchmark::State& state) {
  const auto ex = expansion(make_fading(Format::I, 0.5, static_cast<int>(state.range(0)), 2, 1.7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdf_integer(ex, 2.3));
  }
}
BENCHMARK(bm_pdf_integer)->Arg(1)->Arg(3);

void bm_aber_closed(benchmark::State& state) {
  const auto spec = make_fading(Format::I, 0.5, 2, static_cast<int>(state.range(0)), 10.0);
  const auto mod = modulation_params(Scheme::QPSK, 4);
  const auto approx = preset_qa(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aber(spec, mod, approx));
  }
}
BENCHMARK(bm_aber_closed)->Arg(1)->Arg(3);

void bm_aber_quadrature(benchmark::State& state) {
  const auto spec = make_fading(Format::I, 0.5, 2, 1, 10.0);
  const auto mod = modulation_params(Scheme::QPSK, 4);
  const auto noise = make_noise(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aber_quadrature(spec, mod, noise));
  }
}
BENCHMARK(bm_aber_quadrature);

void bm_acc_closed(benchmark::State& state) {
  const auto spec = make_fading(Format::II, 0.5, 2, 2, 10.0);
  const auto log2fit =
      fit_expsum(FitTarget::log2, 0.0, ApproxKind::saturating, 1e-3, 1e3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(acc(spec, log2fit));
  }
}
BENCHMARK(bm_acc_closed);

void bm_fit_log2(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_expsum(FitTarget::log2, 0.0, ApproxKind::saturating, 1e-3, 1e3));
  }
}
BENCHMARK(bm_fit_log2)->Unit(benchmark::kMillisecond);

void bm_tail_eval(benchmark::State& state) {
  const auto noise = make_noise(1.5);
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qa_exact(noise, x));
    x = x < 5.0 ? x + 1e-6 : 0.3;
  }
}
BENCHMARK(bm_tail_eval);

}  // namespace

BENCHMARK_MAIN();
