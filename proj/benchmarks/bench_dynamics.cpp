#include <benchmark/benchmark.h>

#include <random>

#include "crg/dynamics.hpp"
#include "crg/parallel.hpp"

static void ClassifyOrbit_Sine(benchmark::State& state) {
  const auto sine = crg::ExponentialSum::sine();
  const auto beta = crg::GrowthMinorant::exp_power(0.5, 1.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> x(0.0, 6.2832), y(-3.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(crg::classify_orbit(sine, {x(rng), y(rng)}, beta, {}));
}
BENCHMARK(ClassifyOrbit_Sine);

static void EscapeMap_Sine(benchmark::State& state) {
  const auto sine = crg::ExponentialSum::sine();
  const auto beta = crg::GrowthMinorant::exp_power(0.5, 1.0);
  const int side = static_cast<int>(state.range(0));
  crg::ScopedThreadLimit one(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(crg::escape_map(sine, crg::Window{0, 6.2832, -3, 3}, side, side, beta, {}));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(EscapeMap_Sine)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
