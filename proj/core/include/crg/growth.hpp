#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crg/models.hpp"

namespace crg {

/// Functions of the growth scale are parametrised by log r so that radii far
/// beyond the double range (iterated minorants) stay representable.
using LogRadiusFn = std::function<double(double log_r)>;

/// rho(r) with rho(r) -> rho and rho'(r) r log r -> 0.
class ProximateOrder {
 public:
  ProximateOrder(double limit, LogRadiusFn rho_of_log_r, LogRadiusFn derivative_bound_of_log_r);

  static ProximateOrder constant(double rho);
  /// rho + a / log r for r > e, continued by the constant rho + a below.
  static ProximateOrder log_corrected(double rho, double a);

  double limit() const noexcept { return limit_; }
  double rho(double r) const;
  double rho_at_log(double log_r) const { return rho_(log_r); }
  /// log V(r) = rho(r) log r.
  double log_scale_at_log(double log_r) const { return rho_(log_r) * log_r; }
  /// Declared bound on |rho'(r) r log r|.
  double derivative_bound(double r) const;

 private:
  double limit_;
  LogRadiusFn rho_;
  LogRadiusFn derivative_bound_;
};

/// V(r) = r^{rho(r)}.
double scale_V(const ProximateOrder& po, double r);

/// eps1 = 1 / log^N r (N-fold iterated logarithm), eps2 = sqrt(eps1),
/// eps3 = sqrt(eps2); all equal 1 below exp^N(1).
class EpsilonCascade {
 public:
  explicit EpsilonCascade(int depth);

  int depth() const noexcept { return depth_; }
  double eps1(double r) const;
  double eps2(double r) const;
  double eps3(double r) const;
  double eps1_at_log(double log_r) const;
  /// exp^N(1); infinite once it leaves the double range.
  double floor_radius() const;

 private:
  int depth_;
};

struct IndicatorArc {
  double start;  // theta_j
  double end;    // theta_{j+1}
  double amplitude;  // A_j
  double phase;      // phi_j
};

/// h(theta) = A_j cos(rho theta + phi_j) on [theta_j, theta_{j+1}].
/// An indicator without breakpoints is a single sinusoid on the whole circle.
struct ExactIndicator {
  double rho = 1.0;
  std::vector<IndicatorArc> arcs;
  bool has_breakpoints = true;

  double operator()(double theta) const;
  std::vector<double> breakpoints() const;
  /// Distance on the circle to the nearest breakpoint; +inf without breakpoints.
  double breakpoint_distance(double theta) const;
  /// Largest jump |h(theta_j-) - h(theta_j+)| over all breakpoints.
  double max_breakpoint_jump() const;
};

/// Finite-radius proxy: max over a radius ladder (at least two radii) of log|f(re^{i theta})| / V(r).
struct EmpiricalIndicator {
  std::vector<double> thetas;
  std::vector<double> values;
  std::vector<double> radii;
};

using Indicator = std::variant<ExactIndicator, EmpiricalIndicator>;

/// h(theta) = max_k |b_k| cos(theta + arg b_k), breakpoints at the crossing angles.
ExactIndicator indicator_exact_expsum(const ExponentialSum& f);

/// Indicator of a product with zeros on one ray, counting constant c and
/// non-integer order rho = 1/power: c pi cos((theta - angle - pi) rho) / sin(pi rho).
ExactIndicator indicator_exact_product(const CanonicalProduct& f, double counting_constant);

EmpiricalIndicator indicator_empirical(const FunctionModel& model, const ProximateOrder& po,
                                       const std::vector<double>& thetas, const std::vector<double>& radii);

/// Largest c with h(theta) >= c min(theta - a, b - theta) on a grid of
/// `grid` interior points of (a, b). Throws NonpositiveInterior if h <= 0 inside.
double wedge_constant(const std::function<double(double)>& h, double a, double b, int grid = 10000);

/// wedge_constant for every arc of an exact indicator.
std::vector<double> indicator_lower_bound_check(const ExactIndicator& ind);

/// beta(x) > x for x > threshold; continuous and increasing.
class GrowthMinorant {
 public:
  enum class Kind { ExpPower, PaperDefault, Linear, Table };

  /// beta(r) = exp(c r^mu)
  static GrowthMinorant exp_power(double c, double mu, std::optional<double> threshold = {});
  /// beta(r) = exp(r^{rho(r)} eps1(r)) with eps1 = 1 / log^N r
  static GrowthMinorant paper_default(ProximateOrder po, int depth, std::optional<double> threshold = {});
  /// beta(r) = factor * r
  static GrowthMinorant linear(double factor, std::optional<double> threshold = {});
  /// Piecewise-linear log beta against r through (r_i, log beta(r_i)).
  static GrowthMinorant table(std::vector<std::pair<double, double>> r_log_beta,
                              std::optional<double> threshold = {});

  Kind kind() const noexcept { return kind_; }
  double log_beta(double r) const;
  double log_beta_at_log(double log_r) const { return log_beta_(log_r); }
  double threshold() const noexcept { return threshold_; }
  /// True when beta(r) >= exp(r^mu) for some mu > 0 and all large r.
  bool dominates_exp_power() const noexcept { return kind_ == Kind::ExpPower || kind_ == Kind::PaperDefault; }
  const std::string& description() const noexcept { return description_; }

 private:
  GrowthMinorant(Kind kind, LogRadiusFn log_beta, std::string description, std::optional<double> threshold);

  Kind kind_;
  LogRadiusFn log_beta_;
  std::string description_;
  double threshold_ = 0.0;
};

/// log beta^n(r0), composed in log space; +inf once the logarithm passes 1e300.
/// Throws BelowThreshold if r0 <= threshold.
double beta_iterate(const GrowthMinorant& beta, double r0, int n);

/// Decreasing alpha(r) -> 0, evaluated from log r.
class DensityBudget {
 public:
  DensityBudget(LogRadiusFn alpha_of_log_r, std::string description);

  /// 6 m eps3(r/2)
  static DensityBudget paper(int sectors, int depth);
  /// factor * eps3(r/2)
  static DensityBudget scaled_eps3(double factor, int depth);
  /// 1 / log^k r for r > e, 1 below.
  static DensityBudget inverse_log_power(double k);
  static DensityBudget constant(double value);
  static DensityBudget zero();

  double operator()(double r) const;
  double at_log(double log_r) const { return alpha_(log_r); }
  const std::string& description() const noexcept { return description_; }

 private:
  LogRadiusFn alpha_;
  std::string description_;
};

struct SeriesCheck {
  bool converges = false;
  double partial_sum = 0.0;
  int terms_used = 0;
};

/// Sums alpha(beta^n(r0)) until a term is below tail_tol while decaying at
/// ratio <= 1/2 (the convergence certificate), or 10^4 terms.
SeriesCheck series_condition_check(const DensityBudget& alpha, const GrowthMinorant& beta, double r0,
                                   double tail_tol);

/// log M(r, f) from the maximum of log|f| over `samples` equally spaced angles.
double log_max_modulus(const FunctionModel& model, double r, int samples = 2048);

struct ZhengReport {
  std::vector<double> radii;
  std::vector<double> ratios;  // log M(2r) / log M(r)
  double min_ratio = 0.0;
  /// At the last radius the local slope d log M / d log r is within 10% of
  /// log M / log r, i.e. log M grows like a multiple of log r.
  bool suspect_polynomial = false;
};

ZhengReport zheng_ratio(const FunctionModel& model, const std::vector<double>& radii, int samples = 2048);

struct ProxOrderReport {
  double max_doubling_ratio = 0.0;    // V(2r) / V(r)
  double max_near_ratio_deviation = 0.0;  // |V(s)/V(r) - 1|
  double max_first_order_residual = 0.0;  // |V(s)/V(r) - 1 - rho (s/r - 1)|
  double max_first_order_relative = 0.0;  // residual / |s/r - 1|
  double max_derivative_measured = 0.0;   // finite-difference |rho'(r) r log r|
  bool derivative_bound_holds = true;
};

ProxOrderReport prox_order_properties(const ProximateOrder& po, const std::vector<double>& radii,
                                      const std::vector<double>& s_over_r);

}  // namespace crg
