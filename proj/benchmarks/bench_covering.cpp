#include <benchmark/benchmark.h>

#include <random>

#include "crg/covering.hpp"

namespace {

std::vector<crg::Complex> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<crg::Complex> pts;
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
  return pts;
}

}  // namespace

static void FuchsMacintyre(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(crg::fuchs_macintyre_disks(pts, 0.1, 2000));
}
BENCHMARK(FuchsMacintyre)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void Besicovitch(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 6);
  std::vector<double> radii(pts.size());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 0.05);
  for (auto& r : radii) r = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(crg::besicovitch_cover(pts, radii));
}
BENCHMARK(Besicovitch)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
