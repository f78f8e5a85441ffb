#include "crg/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "crg/error.hpp"
#include "crg/parallel.hpp"

namespace crg {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogCap = 1e300;

double wrap_from(double theta, double start) {
  double t = std::fmod(theta - start, kTwoPi);
  if (t < 0) t += kTwoPi;
  return start + t;
}

struct Point2 {
  double x, y;
  std::size_t index;
};

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; strict hull (collinear points dropped), CCW order.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  if (pts.size() <= 1) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

double default_threshold(const LogRadiusFn& log_beta) {
  // Largest point of a logarithmic scan on which beta(x) <= x fails to be excluded.
  double last_failure = 0.0;
  for (int i = 0; i <= 2200; ++i) {
    const double log_x = std::log(1e-3) + i * (std::log(1e8) - std::log(1e-3)) / 2200.0;
    if (!(log_beta(log_x) > log_x)) last_failure = std::exp(log_x);
  }
  return last_failure;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProximateOrder

ProximateOrder::ProximateOrder(double limit, LogRadiusFn rho_of_log_r, LogRadiusFn derivative_bound_of_log_r)
    : limit_(limit), rho_(std::move(rho_of_log_r)), derivative_bound_(std::move(derivative_bound_of_log_r)) {
  require(limit_ > 0.0 && std::isfinite(limit_), "proximate order limit must be positive");
  require(static_cast<bool>(rho_) && static_cast<bool>(derivative_bound_), "proximate order callables required");
}

ProximateOrder ProximateOrder::constant(double rho) {
  return ProximateOrder(rho, [rho](double) { return rho; }, [](double) { return 0.0; });
}

ProximateOrder ProximateOrder::log_corrected(double rho, double a) {
  return ProximateOrder(
      rho, [rho, a](double log_r) { return log_r > 1.0 ? rho + a / log_r : rho + a; },
      [a](double log_r) { return log_r > 1.0 ? std::abs(a) / log_r : 0.0; });
}

double ProximateOrder::rho(double r) const {
  require(r > 0.0, "proximate order needs r > 0");
  return rho_(std::log(r));
}

double ProximateOrder::derivative_bound(double r) const {
  require(r > 0.0, "proximate order needs r > 0");
  return derivative_bound_(std::log(r));
}

double scale_V(const ProximateOrder& po, double r) {
  require(r > 0.0, "scale_V needs r > 0");
  const double log_r = std::log(r);
  return std::exp(po.log_scale_at_log(log_r));
}

// ---------------------------------------------------------------------------
// EpsilonCascade

EpsilonCascade::EpsilonCascade(int depth) : depth_(depth) { require(depth >= 1, "cascade depth N must be >= 1"); }

double EpsilonCascade::eps1_at_log(double log_r) const {
  if (log_r == kInf) return 0.0;
  double y = log_r;
  for (int i = 1; i < depth_; ++i) {
    if (y <= 1.0) return 1.0;
    y = std::log(y);
  }
  return y < 1.0 ? 1.0 : 1.0 / y;
}

double EpsilonCascade::eps1(double r) const {
  require(r > 0.0, "epsilon cascade needs r > 0");
  return eps1_at_log(std::log(r));
}

double EpsilonCascade::eps2(double r) const { return std::sqrt(eps1(r)); }
double EpsilonCascade::eps3(double r) const { return std::sqrt(eps2(r)); }

double EpsilonCascade::floor_radius() const {
  double v = 1.0;
  for (int i = 0; i < depth_; ++i) v = std::exp(v);
  return v;
}

// ---------------------------------------------------------------------------
// Indicators

double ExactIndicator::operator()(double theta) const {
  if (arcs.empty()) return 0.0;
  const double t = wrap_from(theta, arcs.front().start);
  for (const IndicatorArc& arc : arcs)
    if (t <= arc.end) return arc.amplitude * std::cos(rho * t + arc.phase);
  const IndicatorArc& last = arcs.back();
  return last.amplitude * std::cos(rho * t + last.phase);
}

std::vector<double> ExactIndicator::breakpoints() const {
  std::vector<double> out;
  if (!has_breakpoints) return out;
  for (const IndicatorArc& arc : arcs) out.push_back(arc.start);
  return out;
}

double ExactIndicator::breakpoint_distance(double theta) const {
  if (!has_breakpoints) return kInf;
  double best = kInf;
  for (const IndicatorArc& arc : arcs) {
    const double d = std::abs(std::remainder(theta - arc.start, kTwoPi));
    best = std::min(best, d);
  }
  return best;
}

double ExactIndicator::max_breakpoint_jump() const {
  if (!has_breakpoints || arcs.empty()) return 0.0;
  double jump = 0.0;
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    const IndicatorArc& left = arcs[j];
    const IndicatorArc& right = arcs[(j + 1) % arcs.size()];
    const double at_end = left.amplitude * std::cos(rho * left.end + left.phase);
    // the successor of the last arc starts one period earlier
    const double right_theta = (j + 1 == arcs.size()) ? right.start : left.end;
    const double at_start = right.amplitude * std::cos(rho * right_theta + right.phase);
    jump = std::max(jump, std::abs(at_end - at_start));
  }
  return jump;
}

ExactIndicator indicator_exact_expsum(const ExponentialSum& f) {
  // h(theta) = max_k <w_k, (cos theta, sin theta)> with w_k = conj(b_k): the
  // support function of the hull of the w_k.
  std::vector<Point2> pts;
  for (std::size_t k = 0; k < f.terms().size(); ++k) {
    const ExpTerm& t = f.terms()[k];
    const bool nonzero = std::any_of(t.poly.begin(), t.poly.end(), [](Complex c) { return c != Complex{}; });
    if (nonzero) pts.push_back({t.exponent.real(), -t.exponent.imag(), k});
  }
  require(!pts.empty(), "indicator needs a nonzero term");

  const std::vector<Point2> hull = convex_hull(pts);
  ExactIndicator ind;
  ind.rho = 1.0;
  auto arc_for = [&](const Point2& v, double start, double end) {
    const Complex b = f.terms()[v.index].exponent;
    return IndicatorArc{start, end, std::abs(b), b == Complex{} ? 0.0 : std::arg(b)};
  };
  if (hull.size() == 1) {
    ind.has_breakpoints = false;
    ind.arcs.push_back(arc_for(hull.front(), 0.0, kTwoPi));
    return ind;
  }

  // Edge i joins hull[i] -> hull[i+1]; its outward normal angle is where the
  // maximiser switches from hull[i] to hull[i+1].
  const std::size_t m = hull.size();
  std::vector<double> normal(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % m];
    double ang = std::atan2(-(b.x - a.x), b.y - a.y);
    if (ang < 0) ang += kTwoPi;
    normal[i] = ang;
  }
  // Vertex hull[i+1] is the maximiser on [normal[i], normal[i+1]].
  std::vector<IndicatorArc> arcs;
  for (std::size_t i = 0; i < m; ++i) {
    const double start = normal[i];
    double end = normal[(i + 1) % m];
    while (end <= start) end += kTwoPi;
    arcs.push_back(arc_for(hull[(i + 1) % m], start, end));
  }
  std::sort(arcs.begin(), arcs.end(), [](const IndicatorArc& a, const IndicatorArc& b) { return a.start < b.start; });
  // Keep consecutive arcs contiguous with the last ending one period after the first start.
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i) arcs[i].end = arcs[i + 1].start;
  arcs.back().end = arcs.front().start + kTwoPi;
  ind.arcs = std::move(arcs);
  return ind;
}

ExactIndicator indicator_exact_product(const CanonicalProduct& f, double counting_constant) {
  const double rho = f.convergence_exponent();
  require(std::abs(rho - std::round(rho)) > 1e-12, "product indicator needs a non-integer order");
  require(counting_constant > 0.0, "counting constant must be positive");
  const double theta0 = f.rule().angle;
  ExactIndicator ind;
  ind.rho = rho;
  ind.has_breakpoints = true;
  ind.arcs.push_back({theta0, theta0 + kTwoPi, counting_constant * kPi / std::sin(kPi * rho), -(theta0 + kPi) * rho});
  return ind;
}

EmpiricalIndicator indicator_empirical(const FunctionModel& model, const ProximateOrder& po,
                                       const std::vector<double>& thetas, const std::vector<double>& radii) {
  require(radii.size() >= 2, "empirical indicator needs at least 2 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0, "radii must be positive");
    if (i > 0) require(radii[i] > radii[i - 1], "radii must be increasing");
  }
  EmpiricalIndicator out{thetas, std::vector<double>(thetas.size()), radii};
  std::vector<double> scale(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) scale[i] = scale_V(po, radii[i]);
  parallel_for(thetas.size(), [&](std::size_t t) {
    double best = -kInf;
    bool any = false;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const LogEval e = model.eval_log(std::polar(radii[i], thetas[t]));
      if (!e.valid) continue;
      best = any ? std::max(best, e.log_abs / scale[i]) : e.log_abs / scale[i];
      any = true;
    }
    if (!any) fail(ErrorCode::ZeroHit, "every radius hit a zero at theta = " + format_double(thetas[t]));
    out.values[t] = best;
  });
  return out;
}

double wedge_constant(const std::function<double(double)>& h, double a, double b, int grid) {
  require(b > a, "arc must have positive width");
  require(grid >= 2, "wedge grid needs at least 2 points");
  double best = kInf;
  for (int i = 1; i < grid; ++i) {
    const double theta = a + (b - a) * i / grid;
    const double value = h(theta);
    if (!(value > 0.0))
      fail(ErrorCode::NonpositiveInterior, "h <= 0 inside the arc at theta = " + format_double(theta));
    best = std::min(best, value / std::min(theta - a, b - theta));
  }
  return best;
}

std::vector<double> indicator_lower_bound_check(const ExactIndicator& ind) {
  require(!ind.arcs.empty(), "indicator has no arcs");
  std::vector<double> out;
  for (const IndicatorArc& arc : ind.arcs) {
    require(arc.end > arc.start, "degenerate indicator arc");
    out.push_back(wedge_constant(
        [&](double theta) { return arc.amplitude * std::cos(ind.rho * theta + arc.phase); }, arc.start, arc.end));
  }
  return out;
}

// ---------------------------------------------------------------------------
// GrowthMinorant

GrowthMinorant::GrowthMinorant(Kind kind, LogRadiusFn log_beta, std::string description,
                               std::optional<double> threshold)
    : kind_(kind), log_beta_(std::move(log_beta)), description_(std::move(description)) {
  threshold_ = threshold ? *threshold : default_threshold(log_beta_);
  require(threshold_ >= 0.0, "threshold must be nonnegative");
}

GrowthMinorant GrowthMinorant::exp_power(double c, double mu, std::optional<double> threshold) {
  require(c > 0.0 && mu > 0.0, "exp-power minorant needs c > 0 and mu > 0");
  return GrowthMinorant(
      Kind::ExpPower, [c, mu](double log_r) { return c * std::exp(mu * log_r); },
      "exp(" + format_double(c) + "*r^" + format_double(mu) + ")", threshold);
}

GrowthMinorant GrowthMinorant::paper_default(ProximateOrder po, int depth, std::optional<double> threshold) {
  EpsilonCascade cascade(depth);
  return GrowthMinorant(
      Kind::PaperDefault,
      [po = std::move(po), cascade](double log_r) {
        if (log_r == kInf) return kInf;
        return std::exp(po.log_scale_at_log(log_r)) * cascade.eps1_at_log(log_r);
      },
      "exp(r^rho(r)*eps1(r)), N=" + std::to_string(depth), threshold);
}

GrowthMinorant GrowthMinorant::linear(double factor, std::optional<double> threshold) {
  require(factor > 1.0, "linear minorant needs factor > 1");
  return GrowthMinorant(
      Kind::Linear, [lf = std::log(factor)](double log_r) { return lf + log_r; },
      format_double(factor) + "*r", threshold);
}

GrowthMinorant GrowthMinorant::table(std::vector<std::pair<double, double>> pts, std::optional<double> threshold) {
  require(pts.size() >= 2, "table minorant needs at least two points");
  for (std::size_t i = 1; i < pts.size(); ++i)
    require(pts[i].first > pts[i - 1].first && pts[i].second > pts[i - 1].second,
            "table minorant must be increasing in r and log beta");
  return GrowthMinorant(
      Kind::Table,
      [pts = std::move(pts)](double log_r) {
        const double r = std::exp(log_r);
        if (r == kInf) return kInf;
        std::size_t hi = 1;
        while (hi + 1 < pts.size() && r > pts[hi].first) ++hi;
        const auto& [x0, y0] = pts[hi - 1];
        const auto& [x1, y1] = pts[hi];
        return y0 + (y1 - y0) * (r - x0) / (x1 - x0);
      },
      "table", threshold);
}

double GrowthMinorant::log_beta(double r) const {
  require(r > 0.0, "minorant needs r > 0");
  return log_beta_(std::log(r));
}

double beta_iterate(const GrowthMinorant& beta, double r0, int n) {
  require(n >= 0, "iteration count must be nonnegative");
  if (!(r0 > beta.threshold()))
    fail(ErrorCode::BelowThreshold, "r0 = " + format_double(r0) + " is not above x0 = " + format_double(beta.threshold()));
  double log_value = std::log(r0);
  for (int i = 0; i < n; ++i) {
    log_value = beta.log_beta_at_log(log_value);
    if (!(log_value <= kLogCap)) return kInf;
  }
  return log_value;
}

// ---------------------------------------------------------------------------
// DensityBudget

DensityBudget::DensityBudget(LogRadiusFn alpha_of_log_r, std::string description)
    : alpha_(std::move(alpha_of_log_r)), description_(std::move(description)) {
  require(static_cast<bool>(alpha_), "density budget callable required");
}

DensityBudget DensityBudget::scaled_eps3(double factor, int depth) {
  EpsilonCascade cascade(depth);
  return DensityBudget(
      [factor, cascade](double log_r) {
        if (log_r == kInf) return 0.0;
        return factor * std::sqrt(std::sqrt(cascade.eps1_at_log(log_r - std::numbers::ln2)));
      },
      format_double(factor) + "*eps3(r/2), N=" + std::to_string(depth));
}

DensityBudget DensityBudget::paper(int sectors, int depth) {
  require(sectors >= 1, "sector count m must be >= 1");
  return scaled_eps3(6.0 * sectors, depth);
}

DensityBudget DensityBudget::inverse_log_power(double k) {
  require(k > 0.0, "exponent must be positive");
  return DensityBudget(
      [k](double log_r) {
        if (log_r == kInf) return 0.0;
        return log_r > 1.0 ? std::pow(log_r, -k) : 1.0;
      },
      "1/log^" + format_double(k) + "(r)");
}

DensityBudget DensityBudget::constant(double value) {
  return DensityBudget([value](double) { return value; }, "constant " + format_double(value));
}

DensityBudget DensityBudget::zero() { return constant(0.0); }

double DensityBudget::operator()(double r) const {
  require(r > 0.0, "density budget needs r > 0");
  return alpha_(std::log(r));
}

SeriesCheck series_condition_check(const DensityBudget& alpha, const GrowthMinorant& beta, double r0,
                                   double tail_tol) {
  if (!(r0 > beta.threshold()))
    fail(ErrorCode::BelowThreshold, "r0 = " + format_double(r0) + " is not above x0 = " + format_double(beta.threshold()));
  SeriesCheck out;
  double log_iterate = std::log(r0);
  double previous = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double term = alpha.at_log(log_iterate);
    out.partial_sum += term;
    out.terms_used = n + 1;
    const bool decaying = term == 0.0 || (n > 0 && previous > 0.0 && term / previous <= 0.5);
    if (term < tail_tol && decaying) {
      out.converges = true;
      return out;
    }
    previous = term;
    if (log_iterate != kInf) {
      log_iterate = beta.log_beta_at_log(log_iterate);
      if (!(log_iterate <= kLogCap)) log_iterate = kInf;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics

double log_max_modulus(const FunctionModel& model, double r, int samples) {
  require(r > 0.0 && samples >= 8, "log_max_modulus needs r > 0 and >= 8 samples");
  double best = -kInf;
  for (int i = 0; i < samples; ++i) {
    const LogEval e = model.eval_log(std::polar(r, kTwoPi * i / samples));
    if (e.valid) best = std::max(best, e.log_abs);
  }
  return best;
}

ZhengReport zheng_ratio(const FunctionModel& model, const std::vector<double>& radii, int samples) {
  require(!radii.empty(), "zheng_ratio needs radii");
  ZhengReport report;
  report.radii = radii;
  report.min_ratio = kInf;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0) require(radii[i] > radii[i - 1], "radii must be increasing");
    const double base = log_max_modulus(model, radii[i], samples);
    require(base > 0.0, "log M(r) must be positive on the tested radii");
    const double ratio = log_max_modulus(model, 2.0 * radii[i], samples) / base;
    report.ratios.push_back(ratio);
    report.min_ratio = std::min(report.min_ratio, ratio);
  }
  // Polynomial-like growth: log M(2r) - log M(r) stays comparable to log M(r) / log r.
  const double r_last = radii.back();
  if (r_last > 1.0) {
    const double log_m = log_max_modulus(model, r_last, samples);
    const double slope = (log_m * report.ratios.back() - log_m) / std::numbers::ln2;
    report.suspect_polynomial = slope <= 1.1 * log_m / std::log(r_last);
  }
  return report;
}

ProxOrderReport prox_order_properties(const ProximateOrder& po, const std::vector<double>& radii,
                                      const std::vector<double>& s_over_r) {
  ProxOrderReport report;
  for (const double r : radii) {
    require(r > 1.0, "prox_order_properties needs r > 1");
    const double log_r = std::log(r);
    const double log_v = po.log_scale_at_log(log_r);
    report.max_doubling_ratio =
        std::max(report.max_doubling_ratio, std::exp(po.log_scale_at_log(log_r + std::numbers::ln2) - log_v));
    for (const double q : s_over_r) {
      require(q > 0.0, "s/r must be positive");
      const double ratio = std::exp(po.log_scale_at_log(log_r + std::log(q)) - log_v);
      const double deviation = std::abs(ratio - 1.0);
      const double residual = std::abs(ratio - 1.0 - po.limit() * (q - 1.0));
      report.max_near_ratio_deviation = std::max(report.max_near_ratio_deviation, deviation);
      report.max_first_order_residual = std::max(report.max_first_order_residual, residual);
      if (q != 1.0)
        report.max_first_order_relative = std::max(report.max_first_order_relative, residual / std::abs(q - 1.0));
    }
    // rho'(r) r log r = d rho / d log r * log r
    const double h = 1e-4;
    const double slope = (po.rho_at_log(log_r + h) - po.rho_at_log(log_r - h)) / (2.0 * h);
    const double measured = std::abs(slope * log_r);
    report.max_derivative_measured = std::max(report.max_derivative_measured, measured);
    if (measured > po.derivative_bound(r) * (1.0 + 1e-6) + 1e-9) report.derivative_bound_holds = false;
  }
  return report;
}

}  // namespace crg
