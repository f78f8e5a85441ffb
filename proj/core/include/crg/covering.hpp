#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "crg/models.hpp"

namespace crg {

struct Disk {
  Complex center;
  double radius;
};

/// Finite collection of closed disks.
class DiskSet {
 public:
  DiskSet() = default;
  explicit DiskSet(std::vector<Disk> disks);

  const std::vector<Disk>& disks() const noexcept { return disks_; }
  std::size_t size() const noexcept { return disks_.size(); }
  bool empty() const noexcept { return disks_.empty(); }
  void add(Disk d);

  double radius_sum() const noexcept;
  double radius_square_sum() const noexcept;
  bool contains(Complex z) const noexcept;
  std::size_t multiplicity(Complex z) const noexcept;

 private:
  std::vector<Disk> disks_;
};

/// "re im radius" per line, 17 significant digits, LF endings.
void write_disk_set(std::ostream& out, const DiskSet& set);
/// Throws InvalidArgument with the offending line number.
DiskSet read_disk_set(std::istream& in);

/// Every radius increased by q.
DiskSet inflate(const DiskSet& set, double q);

struct BudgetRatios {
  double c0_ratio;    // sum_{|a_k| <= r} s_k / r
  double area_ratio;  // sum_{|a_k| <= r} s_k^2 / r^2
};

BudgetRatios budget_checks(const DiskSet& set, double r);

/// Deterministic Halton points (bases 2, 3) in a box and in a disk.
std::vector<Complex> halton_box(std::size_t count, double x0, double x1, double y0, double y1);
std::vector<Complex> halton_disk(std::size_t count, Complex center, double radius);

struct BesicovitchCover {
  DiskSet disks;
  std::vector<std::size_t> selected;  // indices into the input points
};

/// Greedy selection by descending radius; a disk is admitted when its centre
/// is not in any already selected disk.
BesicovitchCover besicovitch_cover(const std::vector<Complex>& points, const std::vector<double>& radii);

struct BesicovitchAudit {
  bool covers_all = false;
  std::size_t max_multiplicity = 0;
  std::size_t probes = 0;
  static constexpr std::size_t kMultiplicityBound = 256;
  bool passed() const noexcept { return covers_all && max_multiplicity <= kMultiplicityBound; }
};

BesicovitchAudit audit_besicovitch(const BesicovitchCover& cover, const std::vector<Complex>& points,
                                   const std::vector<Complex>& probes);

struct FuchsMacintyreResult {
  DiskSet disks;
  double H = 0.0;
  double radius_square_sum = 0.0;  // sum (2 t)^2
  double area_bound = 0.0;         // 4 H^2
  std::size_t probes_used = 0;     // probes outside the disks
  double max_harmonic_ratio = 0.0; // max sum_k 1/|z - z_k| / (2 n / H)
};

/// Exceptional disks with sum of squared radii <= 4 H^2 outside which
/// sum_k 1/|z - z_k| <= 2 n / H. Both statements are audited (the second on
/// `probe_count` Halton probes); a failed audit throws CertificateFailure.
FuchsMacintyreResult fuchs_macintyre_disks(const std::vector<Complex>& points, double H,
                                           std::size_t probe_count = 10000);

struct CartanLevinResult {
  DiskSet disks;
  double radius_sum = 0.0;
  double radius_bound = 0.0;       // 4 eta R
  double log_M = 0.0;              // log M(2 e R, g), sampled on the circle
  double lower_bound = 0.0;        // -(2 + log(3e / 2 eta)) log M
  std::size_t probes_used = 0;
  double min_log_abs = 0.0;        // min of log|g| over probes outside the disks
};

/// g(z) = prod (1 - z / z_k) over zeros in D(0, 2R). Builds Cartan disks with
/// sum of radii <= 4 eta R and audits log|g| > -(2 + log(3e / 2 eta)) log M(2eR, g)
/// on probes of D(0, R) outside the disks. Throws CertificateFailure.
CartanLevinResult cartan_levin_disks(const std::vector<Complex>& zeros, double R, double eta,
                                     std::size_t probe_count = 10000);

struct KoebeConstants {
  double rho;
  double growth_lower;      // rho / (1 + rho)^2
  double growth_upper;      // rho / (1 - rho)^2
  double derivative_lower;  // (1 - rho) / (1 + rho)^3
  double derivative_upper;  // (1 + rho) / (1 - rho)^3
  double squared_ratio;     // (1 + rho)^2 / (1 - rho)^2
  double fourth_power_ratio;  // (1 + rho)^4 / (1 - rho)^4
};

KoebeConstants koebe_constants(double rho);

}  // namespace crg
