#pragma once

#include <cstdint>
#include <functional>
#include <variant>

#include "crg/models.hpp"

namespace crg {

/// ann(r) = {r/2 < |z| < 2r}
struct AnnulusSpec {
  double r = 1.0;

  double inner() const noexcept { return 0.5 * r; }
  double outer() const noexcept { return 2.0 * r; }
  double area() const noexcept;  // 15 pi r^2 / 4
  bool contains(Complex z) const noexcept;
};

struct Window {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  double area() const noexcept { return (x1 - x0) * (y1 - y0); }
};

using Region = std::variant<AnnulusSpec, Window>;

/// Cell-centre grid. For an annulus the columns are angles and the rows are
/// equal-area rings; for a window they are x and y.
struct GridPlan {
  int columns = 0;
  int rows = 0;
};

/// Area-uniform random samples; sample i draws from its own stream (seed, i).
struct MonteCarloPlan {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

using SamplePlan = std::variant<GridPlan, MonteCarloPlan>;

void validate(const Region& region);
void validate(const SamplePlan& plan);

std::uint64_t plan_size(const SamplePlan& plan);

/// The i-th sample of the plan; independent of evaluation order.
Complex sample_point(const Region& region, const SamplePlan& plan, std::uint64_t index);

/// splitmix64 finaliser; the basis of all per-index streams.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// k-th uniform double in [0, 1) of the stream belonging to (seed, index).
double stream_uniform(std::uint64_t seed, std::uint64_t index, unsigned k) noexcept;

struct DensityReport {
  Region region;
  SamplePlan plan;
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  double density = 0.0;
  double confidence_halfwidth = 0.0;  // 95% normal approximation; 0 for grids
};

/// Fraction of plan samples satisfying the predicate, evaluated in parallel.
DensityReport estimate_density(const Region& region, const SamplePlan& plan,
                               const std::function<bool(Complex)>& predicate);

/// hits / total with the halfwidth convention of the plan.
DensityReport make_density_report(const Region& region, const SamplePlan& plan, std::uint64_t hits,
                                  std::uint64_t total);

}  // namespace crg
