#include <benchmark/benchmark.h>

#include <random>

#include "crg/models.hpp"

static void EvalLog_Sine(benchmark::State& state) {
  const auto sine = crg::ExponentialSum::sine();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(sine.eval_log({u(rng), u(rng)}));
}
BENCHMARK(EvalLog_Sine);

static void EvalLog_Product(benchmark::State& state) {
  // a_k = k^2, certified out to |z| = range(0)
  const double radius = static_cast<double>(state.range(0));
  crg::CanonicalProduct f({2.0, 1.0, 0.0}, 0, 1e-6, radius);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-radius / 2, radius / 2);
  for (auto _ : state) benchmark::DoNotOptimize(f.eval_log({u(rng), u(rng) + 1.0}));
}
BENCHMARK(EvalLog_Product)->Arg(100)->Arg(10000);

static void LogDerivative_Sine(benchmark::State& state) {
  const auto sine = crg::ExponentialSum::sine();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 50.0);
  for (auto _ : state) benchmark::DoNotOptimize(sine.log_derivative({u(rng), u(rng)}));
}
BENCHMARK(LogDerivative_Sine);
