#include <benchmark/benchmark.h>

#include "fewbody/coeffs.hpp"
#include "fewbody/hobasis.hpp"
#include "fewbody/scatter.hpp"

static void BM_KspDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fewbody::k_sp(n, n + 3, 2));
}
BENCHMARK(BM_KspDirect)->Arg(1)->Arg(50)->Arg(500);

static void BM_KspTable(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  for (auto _ : state) {
    fewbody::KspTable t(1, size);
    benchmark::DoNotOptimize(t(size - 1, size - 1));
  }
  state.SetComplexityN(size);
}
BENCHMARK(BM_KspTable)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

// Shell-resolved three-body sum; cost grows roughly as shells^3.
static void BM_Alpha33Shells(benchmark::State& state) {
  const int shells = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fewbody::alpha3_3_shells(shells, 1));
}
BENCHMARK(BM_Alpha33Shells)->Arg(41)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);

static void BM_Beta2_3(benchmark::State& state) {
  const auto reg = fewbody::RegulatorSpec::exponential(static_cast<double>(state.range(0)));
  const auto mode = state.range(1) ? fewbody::FactorMode::factorized : fewbody::FactorMode::direct;
  for (auto _ : state) benchmark::DoNotOptimize(fewbody::beta2_3(reg, mode));
}
BENCHMARK(BM_Beta2_3)->Args({50, 0})->Args({50, 1})->Args({200, 1})->Unit(benchmark::kMillisecond);

static void BM_Beta3_3(benchmark::State& state) {
  const auto reg = fewbody::RegulatorSpec::exponential(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fewbody::beta3_3(reg, fewbody::FactorMode::factorized));
}
BENCHMARK(BM_Beta3_3)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_PhaseShift(benchmark::State& state) {
  const fewbody::GaussianPotential pot{-1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(fewbody::phase_shift(pot, 0.05));
}
BENCHMARK(BM_PhaseShift)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
