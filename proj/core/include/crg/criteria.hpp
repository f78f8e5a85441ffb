#pragma once

#include <functional>
#include <vector>

#include "crg/covering.hpp"
#include "crg/growth.hpp"
#include "crg/models.hpp"
#include "crg/sampling.hpp"

namespace crg {

/// Constants of the sets A and B: Re(zL) > re_threshold, and positivity on
/// the disk of radius disk_factor |f/f'|.
struct EscapeConstants {
  double re_threshold = 64.0;
  double disk_factor = 32.0;
};

struct MembershipVerdict {
  bool in_A = false;
  bool in_B = false;
  double re_zL = 0.0;               // Re(z f'(z)/f(z))
  double log_margin = 0.0;          // log|f(z)| - log beta(|z|)
  double min_disk_re = 0.0;         // min over disk samples of Re(zeta L(zeta)); NaN if not sampled
  double disk_radius = 0.0;         // disk_factor |f(z)/f'(z)|
  bool sampling_certificate = false;  // B was decided by sampling the disk
};

/// Throws NearZero when z is (numerically) a zero of f.
MembershipVerdict membership_A(const FunctionModel& model, const GrowthMinorant& beta, Complex z,
                               const EscapeConstants& constants = {});

/// A plus the disk condition, sampled at the centre and on 8 circles of radii
/// j/8 of the disk radius with disk_samples points each. A sample close to a
/// zero of f rejects B.
MembershipVerdict membership_B(const FunctionModel& model, const GrowthMinorant& beta, Complex z, int disk_samples,
                               const EscapeConstants& constants = {});

DensityReport annulus_density(const std::function<bool(Complex)>& predicate, const AnnulusSpec& ann,
                              const SamplePlan& plan);

struct ExclusionDensity {
  DensityReport report;           // predicate and outside every disk
  double excluded_fraction = 0.0; // share of samples inside the disks
  double disk_area_fraction = 0.0;  // pi sum s_k^2 / area(ann), ignoring overlaps
};

ExclusionDensity density_with_exclusions(const std::function<bool(Complex)>& predicate, const AnnulusSpec& ann,
                                         const DiskSet& disks, const SamplePlan& plan);

struct MarginRow {
  double r = 0.0;
  DensityReport density;
  double alpha = 0.0;
  double margin = 0.0;  // density_B - (1 - alpha(r))
  bool negative = false;
};

/// dens(B, ann(r)) >= 1 - alpha(r) on every listed radius, reported as margins.
std::vector<MarginRow> hypothesis_check_14b(const FunctionModel& model, const GrowthMinorant& beta,
                                            const DensityBudget& alpha, const std::vector<double>& radii,
                                            const SamplePlan& plan, int disk_samples = 16,
                                            const EscapeConstants& constants = {});

/// Same margins for an arbitrary predicate standing in for B.
std::vector<MarginRow> margin_report(const std::function<bool(Complex)>& predicate, const DensityBudget& alpha,
                                     const std::vector<double>& radii, const SamplePlan& plan);

}  // namespace crg
