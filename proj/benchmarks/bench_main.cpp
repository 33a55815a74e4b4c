#include <benchmark/benchmark.h>

#include "fracdyn/integrate.hpp"
#include "fracdyn/mechanics.hpp"
#include "fracdyn/processes.hpp"
#include "fracdyn/runner.hpp"
#include "fracdyn/scenarios.hpp"
#include "fracdyn/special.hpp"

namespace {

using namespace fracdyn;

void BM_Gamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::gamma(x));
    x = x > 30.0 ? 0.1 : x + 0.37;
  }
}
BENCHMARK(BM_Gamma);

void BM_Digamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::digamma(x));
    x = x > 30.0 ? 0.1 : x + 0.37;
  }
}
BENCHMARK(BM_Digamma);

void BM_KernelValue(benchmark::State& state) {
  const KernelSpec spec{AlphaFunction::affine(0.6, 0.1), 0.2, 0.8};
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_value(spec, s));
    s = s > 0.7 ? 0.0 : s + 0.001;
  }
}
BENCHMARK(BM_KernelValue);

void BM_HCorrection(benchmark::State& state) {
  const KernelSpec spec{AlphaFunction::logistic(0.4, 0.95, 0.0, 0.5), 0.2, 0.8};
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h_correction(spec, s));
    s = s > 0.7 ? 0.0 : s + 0.001;
  }
}
BENCHMARK(BM_HCorrection);

void BM_SampleWiener(benchmark::State& state) {
  const GridSpec grid{0.0, 1.0, static_cast<std::size_t>(state.range(0))};
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_wiener(grid, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleWiener)->Arg(1 << 10)->Arg(1 << 14);

void BM_FractionalValues(benchmark::State& state) {
  const GridSpec grid{0.0, 1.0, static_cast<std::size_t>(state.range(0))};
  const KernelSpec spec{AlphaFunction::constant(0.6), 0.0, 0.0};
  const WienerPath w = sample_wiener(grid, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_values(spec, grid, w.increments));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FractionalValues)->RangeMultiplier(2)->Range(128, 1024)->Complexity(benchmark::oNSquared);

void BM_FractionalIntegral(benchmark::State& state) {
  const GridSpec grid{0.0, 1.0, static_cast<std::size_t>(state.range(0))};
  const KernelSpec spec{AlphaFunction::constant(0.5), 0.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fractional_integral(spec, [](double s) { return s; }, grid));
  }
}
BENCHMARK(BM_FractionalIntegral)->Arg(1 << 12)->Arg(1 << 16);

void BM_EulerHybrid(benchmark::State& state) {
  const GridSpec grid{0.0, 1.0, static_cast<std::size_t>(state.range(0))};
  HybridSystem sys;
  sys.drift = CoefficientField::diagonal_affine({0.1}, {-0.5});
  sys.diffusion = CoefficientField::diagonal_affine({0.0}, {0.3});
  sys.fuzzy = CoefficientField::diagonal_affine({0.05}, {0.0});
  sys.kernel_alpha = sys.kernel_beta = sys.kernel_gamma = {AlphaFunction::constant(0.7), 0.1, 2.0};
  sys.x0 = {1.0};
  const WienerPath w = sample_wiener(grid, 1);
  const LiuPath l = sample_liu(grid, 1.0, 0.0, 1.0);
  const IntegratorOptions options{{}, state.range(1) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(euler_hybrid(sys, grid, w, l, options));
}
BENCHMARK(BM_EulerHybrid)->Args({1000, 0})->Args({1000, 1});

void BM_PendulumScenario(benchmark::State& state) {
  const ExperimentConfig config = find_scenario("pendulum_hybrid_frac").config;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(config, {1, 15.0}));
}
BENCHMARK(BM_PendulumScenario);

}  // namespace

BENCHMARK_MAIN();
