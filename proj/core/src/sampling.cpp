#include "crg/sampling.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "crg/error.hpp"
#include "crg/parallel.hpp"

namespace crg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Radius of the ring boundary enclosing area fraction s of ann(r).
double annulus_radius(double r, double s) { return r * std::sqrt(0.25 + 3.75 * s); }

}  // namespace

double AnnulusSpec::area() const noexcept { return 3.75 * std::numbers::pi * r * r; }

bool AnnulusSpec::contains(Complex z) const noexcept {
  const double m = std::abs(z);
  return m > inner() && m < outer();
}

void validate(const Region& region) {
  if (const auto* ann = std::get_if<AnnulusSpec>(&region)) {
    require(ann->r > 0.0 && std::isfinite(ann->r), "annulus radius must be positive");
  } else {
    const Window& w = std::get<Window>(region);
    require(w.x1 > w.x0 && w.y1 > w.y0, "window must be nondegenerate");
    require(std::isfinite(w.x0) && std::isfinite(w.x1) && std::isfinite(w.y0) && std::isfinite(w.y1),
            "window bounds must be finite");
  }
}

void validate(const SamplePlan& plan) {
  if (const auto* grid = std::get_if<GridPlan>(&plan))
    require(grid->columns >= 1 && grid->rows >= 1, "grid plan needs positive dimensions");
  else
    require(std::get<MonteCarloPlan>(plan).samples >= 1, "Monte Carlo plan needs at least one sample");
}

std::uint64_t plan_size(const SamplePlan& plan) {
  if (const auto* grid = std::get_if<GridPlan>(&plan))
    return static_cast<std::uint64_t>(grid->columns) * static_cast<std::uint64_t>(grid->rows);
  return std::get<MonteCarloPlan>(plan).samples;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double stream_uniform(std::uint64_t seed, std::uint64_t index, unsigned k) noexcept {
  const std::uint64_t stream = mix64(mix64(seed) ^ index);
  const std::uint64_t bits = mix64(stream + 0x632be59bd9b4e019ULL * (k + 1));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Complex sample_point(const Region& region, const SamplePlan& plan, std::uint64_t index) {
  double u, v;
  if (const auto* grid = std::get_if<GridPlan>(&plan)) {
    const std::uint64_t cols = static_cast<std::uint64_t>(grid->columns);
    u = (static_cast<double>(index % cols) + 0.5) / grid->columns;
    v = (static_cast<double>(index / cols) + 0.5) / grid->rows;
  } else {
    const std::uint64_t seed = std::get<MonteCarloPlan>(plan).seed;
    u = stream_uniform(seed, index, 0);
    v = stream_uniform(seed, index, 1);
  }
  if (const auto* ann = std::get_if<AnnulusSpec>(&region)) return std::polar(annulus_radius(ann->r, v), kTwoPi * u);
  const Window& w = std::get<Window>(region);
  // grid rows run from the top (largest imaginary part) down
  const double y = std::holds_alternative<GridPlan>(plan) ? w.y1 - v * (w.y1 - w.y0) : w.y0 + v * (w.y1 - w.y0);
  return {w.x0 + u * (w.x1 - w.x0), y};
}

DensityReport make_density_report(const Region& region, const SamplePlan& plan, std::uint64_t hits,
                                  std::uint64_t total) {
  DensityReport report{region, plan, hits, total, 0.0, 0.0};
  if (total == 0) return report;
  report.density = static_cast<double>(hits) / static_cast<double>(total);
  if (std::holds_alternative<MonteCarloPlan>(plan))
    report.confidence_halfwidth =
        1.96 * std::sqrt(report.density * (1.0 - report.density) / static_cast<double>(total));
  return report;
}

DensityReport estimate_density(const Region& region, const SamplePlan& plan,
                               const std::function<bool(Complex)>& predicate) {
  validate(region);
  validate(plan);
  const std::uint64_t n = plan_size(plan);
  std::vector<unsigned char> hit(n, 0);
  parallel_for(n, [&](std::size_t i) { hit[i] = predicate(sample_point(region, plan, i)) ? 1 : 0; });
  std::uint64_t hits = 0;
  for (unsigned char h : hit) hits += h;
  return make_density_report(region, plan, hits, n);
}

}  // namespace crg
