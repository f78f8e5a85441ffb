#include "crg/criteria.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "crg/error.hpp"
#include "crg/parallel.hpp"

namespace crg {

MembershipVerdict membership_A(const FunctionModel& model, const GrowthMinorant& beta, Complex z,
                               const EscapeConstants& constants) {
  MembershipVerdict v;
  v.min_disk_re = std::numeric_limits<double>::quiet_NaN();
  const LogEval e = model.eval_log(z);
  if (!e.valid) fail(ErrorCode::NearZero, "z is a zero of f");
  const Complex L = model.log_derivative(z);
  v.re_zL = (z * L).real();
  const double modulus = std::abs(z);
  v.log_margin = modulus > 0.0 ? e.log_abs - beta.log_beta(modulus) : -std::numeric_limits<double>::infinity();
  const double abs_L = std::abs(L);
  v.disk_radius = abs_L > 0.0 ? constants.disk_factor / abs_L : std::numeric_limits<double>::infinity();
  v.in_A = v.re_zL > constants.re_threshold && v.log_margin > 0.0;
  return v;
}

MembershipVerdict membership_B(const FunctionModel& model, const GrowthMinorant& beta, Complex z, int disk_samples,
                               const EscapeConstants& constants) {
  require(disk_samples >= 1, "disk_samples must be positive");
  MembershipVerdict v = membership_A(model, beta, z, constants);
  if (!v.in_A || !std::isfinite(v.disk_radius)) return v;

  v.sampling_certificate = true;
  auto re_at = [&](Complex zeta) { return (zeta * model.log_derivative(zeta)).real(); };
  double lowest = std::numeric_limits<double>::infinity();
  try {
    lowest = re_at(z);
    for (int j = 1; j <= 8 && lowest > 0.0; ++j) {
      const double rad = v.disk_radius * j / 8.0;
      for (int i = 0; i < disk_samples; ++i) {
        lowest = std::min(lowest, re_at(z + std::polar(rad, 2.0 * std::numbers::pi * i / disk_samples)));
        if (!(lowest > 0.0)) break;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NearZero && e.code() != ErrorCode::OverflowUnrepresentable) throw;
    lowest = -std::numeric_limits<double>::infinity();
  }
  v.min_disk_re = lowest;
  v.in_B = lowest > 0.0;
  return v;
}

DensityReport annulus_density(const std::function<bool(Complex)>& predicate, const AnnulusSpec& ann,
                              const SamplePlan& plan) {
  return estimate_density(ann, plan, predicate);
}

ExclusionDensity density_with_exclusions(const std::function<bool(Complex)>& predicate, const AnnulusSpec& ann,
                                         const DiskSet& disks, const SamplePlan& plan) {
  validate(Region{ann});
  validate(plan);
  const std::uint64_t n = plan_size(plan);
  // bit 0: predicate and outside, bit 1: inside a disk
  std::vector<unsigned char> flags(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const Complex z = sample_point(ann, plan, i);
    if (disks.contains(z))
      flags[i] = 2;
    else if (predicate(z))
      flags[i] = 1;
  });
  std::uint64_t hits = 0, inside = 0;
  for (unsigned char f : flags) {
    hits += f & 1;
    inside += f >> 1;
  }
  ExclusionDensity out;
  out.report = make_density_report(ann, plan, hits, n);
  out.excluded_fraction = static_cast<double>(inside) / static_cast<double>(n);
  out.disk_area_fraction = std::numbers::pi * disks.radius_square_sum() / ann.area();
  return out;
}

std::vector<MarginRow> margin_report(const std::function<bool(Complex)>& predicate, const DensityBudget& alpha,
                                     const std::vector<double>& radii, const SamplePlan& plan) {
  std::vector<MarginRow> rows;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0) require(radii[i] > radii[i - 1], "radii must be increasing");
    MarginRow row;
    row.r = radii[i];
    row.density = annulus_density(predicate, AnnulusSpec{radii[i]}, plan);
    row.alpha = alpha(radii[i]);
    row.margin = row.density.density - (1.0 - row.alpha);
    row.negative = row.margin < 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<MarginRow> hypothesis_check_14b(const FunctionModel& model, const GrowthMinorant& beta,
                                            const DensityBudget& alpha, const std::vector<double>& radii,
                                            const SamplePlan& plan, int disk_samples,
                                            const EscapeConstants& constants) {
  auto in_B = [&](Complex z) {
    try {
      return membership_B(model, beta, z, disk_samples, constants).in_B;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NearZero || e.code() == ErrorCode::OverflowUnrepresentable) return false;
      throw;
    }
  };
  return margin_report(in_B, alpha, radii, plan);
}

}  // namespace crg
