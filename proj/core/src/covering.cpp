#include "crg/covering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "crg/error.hpp"
#include "crg/parallel.hpp"

namespace crg {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double radical_inverse(std::size_t i, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= base;
  }
  return result;
}

struct BestDisk {
  std::size_t count = 0;
  Complex center;
};

// Maximal number of points in a closed disk of radius t, by an angular sweep
// around every point (an optimal disk can be moved until a point is on its rim).
BestDisk max_count_disk(const std::vector<Complex>& pts, double t) {
  BestDisk best;
  std::vector<std::pair<double, int>> events;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    events.clear();
    std::size_t always = 1;  // the pivot itself
    int initial = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      const Complex d = pts[j] - pts[i];
      const double dist = std::abs(d);
      if (dist > 2.0 * t) continue;
      if (dist <= 1e-15 * t) {
        ++always;
        continue;
      }
      const double half = std::acos(std::min(1.0, dist / (2.0 * t)));
      double start = std::arg(d) - half;
      start = std::fmod(start, kTwoPi);
      if (start < 0.0) start += kTwoPi;
      double end = start + 2.0 * half;
      if (end >= kTwoPi) {
        ++initial;
        end -= kTwoPi;
      }
      events.push_back({start, +1});
      events.push_back({end, -1});
    }
    // entries before exits at equal angles so touching intervals overlap
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
      return a.first < b.first || (a.first == b.first && a.second > b.second);
    });
    int current = initial;
    int best_here = initial;
    double best_angle = 0.0;
    for (const auto& [angle, delta] : events) {
      current += delta;
      if (current > best_here) {
        best_here = current;
        best_angle = angle;
      }
    }
    const std::size_t total = always + static_cast<std::size_t>(best_here);
    if (total > best.count) {
      best.count = total;
      // an isolated pivot is its own centre
      best.center = best_here == 0 ? pts[i] : pts[i] + std::polar(t, best_angle);
    }
  }
  return best;
}

struct GreedyDisk {
  Complex center;
  double t;
  std::size_t lambda;
  std::size_t removed;
};

// Repeatedly picks the largest lambda with c(t_lambda) >= lambda, where c(t)
// is the maximal point count of a radius-t disk, and removes that disk's points.
std::vector<GreedyDisk> greedy_concentration(std::vector<Complex> alive,
                                             const std::function<double(std::size_t)>& radius_of) {
  std::vector<GreedyDisk> out;
  while (!alive.empty()) {
    std::size_t lambda = alive.size();
    BestDisk found;
    for (;;) {
      // a hair smaller so that the exact recount below cannot lose rim points
      found = max_count_disk(alive, radius_of(lambda) * (1.0 - 1e-9));
      if (found.count >= lambda) break;
      lambda = found.count;
    }
    const double t = radius_of(lambda);
    std::vector<Complex> rest;
    rest.reserve(alive.size());
    std::size_t removed = 0;
    for (const Complex& p : alive) {
      if (std::abs(p - found.center) <= t)
        ++removed;
      else
        rest.push_back(p);
    }
    if (removed < lambda) fail(ErrorCode::CertificateFailure, "greedy disk lost points in the exact recount");
    out.push_back({found.center, t, lambda, removed});
    alive = std::move(rest);
  }
  return out;
}

// Exclusion disks have radius 2t shrunk by this relative amount: they still
// contain every removed point (those lie within t of the centre), and the
// floating-point radius sums stay below the exact budget.
constexpr double kBudgetShrink = 1.0 - 1e-10;

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// DiskSet

DiskSet::DiskSet(std::vector<Disk> disks) {
  for (const Disk& d : disks) add(d);
}

void DiskSet::add(Disk d) {
  require(d.radius > 0.0 && std::isfinite(d.radius), "disk radius must be positive");
  require(std::isfinite(d.center.real()) && std::isfinite(d.center.imag()), "disk centre must be finite");
  disks_.push_back(d);
}

double DiskSet::radius_sum() const noexcept {
  double s = 0.0;
  for (const Disk& d : disks_) s += d.radius;
  return s;
}

double DiskSet::radius_square_sum() const noexcept {
  double s = 0.0;
  for (const Disk& d : disks_) s += d.radius * d.radius;
  return s;
}

bool DiskSet::contains(Complex z) const noexcept {
  return std::any_of(disks_.begin(), disks_.end(), [&](const Disk& d) { return std::abs(z - d.center) <= d.radius; });
}

std::size_t DiskSet::multiplicity(Complex z) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      disks_.begin(), disks_.end(), [&](const Disk& d) { return std::abs(z - d.center) <= d.radius; }));
}

void write_disk_set(std::ostream& out, const DiskSet& set) {
  for (const Disk& d : set.disks())
    out << format_g(d.center.real()) << ' ' << format_g(d.center.imag()) << ' ' << format_g(d.radius) << '\n';
}

DiskSet read_disk_set(std::istream& in) {
  DiskSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double re, im, radius;
    std::string extra;
    if (!(fields >> re >> im >> radius) || (fields >> extra))
      fail(ErrorCode::InvalidArgument, "disk file line " + std::to_string(line_no) + ": expected 're im radius'");
    if (!(radius > 0.0))
      fail(ErrorCode::InvalidArgument, "disk file line " + std::to_string(line_no) + ": radius must be positive");
    set.add({{re, im}, radius});
  }
  return set;
}

DiskSet inflate(const DiskSet& set, double q) {
  require(q >= 0.0 && std::isfinite(q), "inflation must be nonnegative");
  DiskSet out;
  for (const Disk& d : set.disks()) out.add({d.center, d.radius + q});
  return out;
}

BudgetRatios budget_checks(const DiskSet& set, double r) {
  require(r > 0.0, "budget radius must be positive");
  double s1 = 0.0, s2 = 0.0;
  for (const Disk& d : set.disks()) {
    if (std::abs(d.center) > r) continue;
    s1 += d.radius;
    s2 += d.radius * d.radius;
  }
  return {s1 / r, s2 / (r * r)};
}

std::vector<Complex> halton_box(std::size_t count, double x0, double x1, double y0, double y1) {
  std::vector<Complex> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = {x0 + (x1 - x0) * radical_inverse(i + 1, 2), y0 + (y1 - y0) * radical_inverse(i + 1, 3)};
  return out;
}

std::vector<Complex> halton_disk(std::size_t count, Complex center, double radius) {
  std::vector<Complex> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = center + std::polar(radius * std::sqrt(radical_inverse(i + 1, 2)), kTwoPi * radical_inverse(i + 1, 3));
  return out;
}

// ---------------------------------------------------------------------------
// Besicovitch

BesicovitchCover besicovitch_cover(const std::vector<Complex>& points, const std::vector<double>& radii) {
  require(points.size() == radii.size(), "one radius per point");
  for (double r : radii) require(r > 0.0 && std::isfinite(r), "radii must be positive");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radii[a] > radii[b]; });

  BesicovitchCover cover;
  for (std::size_t i : order) {
    if (cover.disks.contains(points[i])) continue;
    cover.disks.add({points[i], radii[i]});
    cover.selected.push_back(i);
  }
  return cover;
}

BesicovitchAudit audit_besicovitch(const BesicovitchCover& cover, const std::vector<Complex>& points,
                                   const std::vector<Complex>& probes) {
  BesicovitchAudit audit;
  audit.covers_all = std::all_of(points.begin(), points.end(), [&](Complex p) { return cover.disks.contains(p); });
  std::vector<std::size_t> mult(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) { mult[i] = cover.disks.multiplicity(probes[i]); });
  for (std::size_t m : mult) audit.max_multiplicity = std::max(audit.max_multiplicity, m);
  audit.probes = probes.size();
  return audit;
}

// ---------------------------------------------------------------------------
// Fuchs-Macintyre

FuchsMacintyreResult fuchs_macintyre_disks(const std::vector<Complex>& points, double H, std::size_t probe_count) {
  require(!points.empty(), "need at least one point");
  require(H > 0.0 && std::isfinite(H), "H must be positive");
  const std::size_t n = points.size();
  const auto greedy = greedy_concentration(points, [&](std::size_t lambda) {
    return H * std::sqrt(static_cast<double>(lambda) / static_cast<double>(n));
  });

  FuchsMacintyreResult out;
  out.H = H;
  out.area_bound = 4.0 * H * H;
  std::size_t lambda_total = 0;
  for (const GreedyDisk& g : greedy) {
    out.disks.add({g.center, 2.0 * g.t * kBudgetShrink});
    lambda_total += g.lambda;
  }
  out.radius_square_sum = out.disks.radius_square_sum();
  // sum (2 t_i)^2 = 4 H^2 sum lambda_i / n, so the exact form is sum lambda_i <= n
  if (lambda_total > n || out.radius_square_sum > out.area_bound)
    fail(ErrorCode::CertificateFailure, "sum of squared radii exceeds 4 H^2");

  double x0 = points[0].real(), x1 = x0, y0 = points[0].imag(), y1 = y0;
  for (const Complex& p : points) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  const double pad = 2.0 * H;
  const auto probes = halton_box(probe_count, x0 - pad, x1 + pad, y0 - pad, y1 + pad);
  const double limit = 2.0 * static_cast<double>(n) / H;
  std::vector<double> ratio(probes.size(), -1.0);
  parallel_for(probes.size(), [&](std::size_t i) {
    if (out.disks.contains(probes[i])) return;
    double s = 0.0;
    for (const Complex& p : points) s += 1.0 / std::abs(probes[i] - p);
    ratio[i] = s / limit;
  });
  for (double r : ratio) {
    if (r < 0.0) continue;
    ++out.probes_used;
    out.max_harmonic_ratio = std::max(out.max_harmonic_ratio, r);
  }
  if (out.max_harmonic_ratio > 1.0 + 1e-9)
    fail(ErrorCode::CertificateFailure, "harmonic sum exceeds 2n/H at a probe (ratio " +
                                            format_g(out.max_harmonic_ratio) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// Cartan / Levin

CartanLevinResult cartan_levin_disks(const std::vector<Complex>& zeros, double R, double eta,
                                     std::size_t probe_count) {
  require(R > 0.0 && std::isfinite(R), "R must be positive");
  require(eta > 0.0 && eta < 1.5 * std::numbers::e, "need 0 < eta < 3e/2");
  for (const Complex& z : zeros) {
    require(z != Complex{}, "g(0) = 1 excludes a zero at the origin");
    require(std::abs(z) <= 2.0 * R, "zeros must lie in D(0, 2R)");
  }

  CartanLevinResult out;
  out.radius_bound = 4.0 * eta * R;
  if (zeros.empty()) return out;  // log|g| = 0 everywhere, nothing to exclude

  const std::size_t n = zeros.size();
  const double H = 2.0 * eta * R;
  const auto greedy = greedy_concentration(
      zeros, [&](std::size_t lambda) { return H * static_cast<double>(lambda) / static_cast<double>(n); });
  std::size_t lambda_total = 0;
  for (const GreedyDisk& g : greedy) {
    out.disks.add({g.center, 2.0 * g.t * kBudgetShrink});
    lambda_total += g.lambda;
  }
  out.radius_sum = out.disks.radius_sum();
  if (lambda_total > n || out.radius_sum > out.radius_bound)
    fail(ErrorCode::CertificateFailure, "sum of radii exceeds 4 eta R");

  auto log_abs_g = [&](Complex z) {
    double s = 0.0;
    for (const Complex& zk : zeros) s += std::log(std::abs(1.0 - z / zk));
    return s;
  };
  // sampled maximum is below the true M, which only makes the audit stricter
  const double big = 2.0 * std::numbers::e * R;
  double log_m = 0.0;
  for (int k = 0; k < 4096; ++k) log_m = std::max(log_m, log_abs_g(std::polar(big, kTwoPi * k / 4096)));
  out.log_M = log_m;
  out.lower_bound = -(2.0 + std::log(1.5 * std::numbers::e / eta)) * log_m;

  const auto probes = halton_disk(probe_count, {}, R);
  std::vector<double> value(probes.size(), std::numeric_limits<double>::infinity());
  std::vector<unsigned char> used(probes.size(), 0);
  parallel_for(probes.size(), [&](std::size_t i) {
    if (out.disks.contains(probes[i])) return;
    used[i] = 1;
    value[i] = log_abs_g(probes[i]);
  });
  out.min_log_abs = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!used[i]) continue;
    ++out.probes_used;
    out.min_log_abs = std::min(out.min_log_abs, value[i]);
  }
  if (out.probes_used > 0 && !(out.min_log_abs > out.lower_bound))
    fail(ErrorCode::CertificateFailure, "minimum-modulus bound fails at a probe: log|g| = " +
                                            format_g(out.min_log_abs) + " <= " + format_g(out.lower_bound));
  return out;
}

KoebeConstants koebe_constants(double rho) {
  require(rho > 0.0 && rho < 1.0, "need 0 < rho < 1");
  const double p = 1.0 + rho, m = 1.0 - rho;
  const double sq = (p * p) / (m * m);
  return {rho, rho / (p * p), rho / (m * m), m / (p * p * p), p / (m * m * m), sq, sq * sq};
}

}  // namespace crg
