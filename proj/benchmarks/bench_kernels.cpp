#include <benchmark/benchmark.h>

#include "apmeas/constructions.hpp"
#include "apmeas/convolution.hpp"
#include "apmeas/corpus.hpp"
#include "apmeas/diffraction.hpp"
#include "apmeas/norms.hpp"
#include "apmeas/periods.hpp"

using namespace apmeas;

namespace {

const Window kU(0.0, 1.0);

Measure comb(double half) {
  return cps_comb(fibonacci_scheme(), fibonacci_tent(), Window(-half, half));
}

void BM_SlidingNormCorpus(benchmark::State& state) {
  const auto c = corpus(1, 200);
  for (auto _ : state) {
    double s = 0.0;
    for (const auto& mu : c) s += norm_U(mu, kU).value;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_SlidingNormCorpus)->Unit(benchmark::kMillisecond);

void BM_FamilyNorm(benchmark::State& state) {
  const auto c = corpus(2, 20);
  const auto fam = canonical_family(kU, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double s = 0.0;
    for (const auto& mu : c) s += norm_via_family(mu, kU, fam).value;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_FamilyNorm)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_NormDistances(benchmark::State& state) {
  const auto mu = comb(static_cast<double>(state.range(0)));
  const double h = 0.25 * static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_distances(mu, kU, Window(-h, h), 0.125));
  }
}
BENCHMARK(BM_NormDistances)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_ConvolveMF(benchmark::State& state) {
  const auto mu = gallery("ex3", {{"M", 6}});
  const auto g = TestFunction::hat(-1.0, 0.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve_mf(mu, g, -100.0, 0.25, 801));
  }
}
BENCHMARK(BM_ConvolveMF)->Unit(benchmark::kMillisecond);

void BM_Diffraction(benchmark::State& state) {
  const auto mu = comb(110.0);
  const auto gamma = autocorrelation(mu, VanHoveSequence({100.0}), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier(gamma, 0.1, 2.0, 1e-3));
  }
}
BENCHMARK(BM_Diffraction)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
