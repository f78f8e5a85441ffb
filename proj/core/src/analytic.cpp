#include "crg/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "crg/error.hpp"
#include "crg/quadrature.hpp"

namespace crg {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

std::string describe_point(double r, double theta) {
  std::ostringstream out;
  out.precision(17);
  out << "(r=" << r << ", theta=" << theta << ")";
  return out.str();
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

struct TrapezoidSum {
  Complex value;
  double max_log_abs;
};

TrapezoidSum schwarz_trapezoid(const FunctionModel& model, Complex z, double t, int nodes) {
  Complex acc{};
  double largest = 0.0;
  for (int m = 0; m < nodes; ++m) {
    const double phi = kTwoPi * m / nodes;
    const LogEval e = model.eval_log(z + std::polar(t, phi));
    if (!e.valid) fail(ErrorCode::ZeroInDisk, "zero on the quadrature circle");
    acc += e.log_abs * std::polar(1.0, -phi);
    largest = std::max(largest, std::abs(e.log_abs));
  }
  // (1 / pi t) * (2 pi / M) * sum
  return {acc * (2.0 / (t * nodes)), largest};
}

}  // namespace

Complex schwarz_log_derivative(const FunctionModel& model, Complex z, double radius, int nodes) {
  require(radius > 0.0, "Schwarz radius must be positive");
  require(nodes >= 16 && is_power_of_two(nodes), "node count must be a power of two >= 16");

  int inside = 0;
  try {
    inside = count_zeros_on_circle(model, z, radius, std::max(nodes, 64));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ContourTooClose) fail(ErrorCode::ZeroInDisk, "zero on or near the disk boundary");
    throw;
  }
  if (inside != 0) fail(ErrorCode::ZeroInDisk, std::to_string(inside) + " zero(s) inside the Schwarz disk");

  const TrapezoidSum coarse = schwarz_trapezoid(model, z, radius, nodes);
  const TrapezoidSum fine = schwarz_trapezoid(model, z, radius, 2 * nodes);
  // rounding of the log|f| samples limits what agreement can be asked for
  const double noise = 1e-13 * (1.0 + fine.max_log_abs) / radius;
  const double change = std::abs(coarse.value - fine.value);
  if (change > 1e-6 * std::abs(fine.value) + noise) {
    std::ostringstream out;
    out << "doubling M changed L by " << change;
    fail(ErrorCode::NonConvergent, out.str());
  }
  return coarse.value;
}

std::vector<SectorResidual> check_8l(const FunctionModel& model, const ExactIndicator& ind,
                                     const ProximateOrder& po, int depth,
                                     const std::vector<std::pair<double, double>>& r_theta) {
  const EpsilonCascade cascade(depth);
  std::vector<SectorResidual> out;
  out.reserve(r_theta.size());
  for (const auto& [r, theta] : r_theta) {
    require(r > 0.0, "sample radius must be positive");
    const double eps2 = cascade.eps2(r);
    if (ind.breakpoint_distance(theta) < 3.0 * eps2)
      fail(ErrorCode::SectorViolation, "sample " + describe_point(r, theta) + " is within 3 eps2 of a breakpoint");
    const Complex z = std::polar(r, theta);
    const double re_zL = (z * model.log_derivative(z)).real();
    const double v = scale_V(po, r);
    const double predicted = po.limit() * ind(theta) * v;
    out.push_back({r, theta, re_zL, predicted, (re_zL - predicted) / (v * eps2)});
  }
  return out;
}

LogDerivativeBound log_derivative_upper_bound(const FunctionModel& g, Complex z, double s) {
  require(s > std::abs(z), "need s > |z|");
  const auto zeros = g.zeros_within(s);
  if (!zeros) fail(ErrorCode::IncompleteZeroList, "model cannot enumerate its zeros in |z| <= s");

  LogDerivativeBound out{};
  out.log_plus_M = std::max(0.0, log_max_modulus(g, s));
  const double gap = s - std::abs(z);
  out.growth_term = 4.0 * s / (gap * gap) * out.log_plus_M;
  for (const Complex& zj : *zeros) {
    const double d = std::abs(z - zj);
    if (d == 0.0) fail(ErrorCode::NearZero, "z is a zero of g");
    out.zero_term += 2.0 / d;
  }
  out.zeros_used = zeros->size();
  out.bound = out.growth_term + out.zero_term;
  return out;
}

KernelIntegral kernel_integral_I(double rho, int p, Complex z) {
  require(p >= 0, "genus must be nonnegative");
  const double a = rho - p;
  require(a > 0.0 && a < 1.0, "need p < rho < p + 1");
  const double modulus = std::abs(z);
  double theta = std::atan2(z.imag(), z.real());
  if (theta < 0.0) theta += kTwoPi;
  if (modulus == 0.0 || theta == 0.0 || !std::isfinite(modulus))
    fail(ErrorCode::BranchViolation, "arg z must lie in (0, 2 pi)");

  // t = |z| e^u turns the integrand into |z|^{a-1} e^{a u} / (e^u - e^{i theta}).
  const Complex e_theta = std::polar(1.0, theta);
  const quad::ComplexIntegrand h = [&](double u) { return std::exp(a * u) / (std::exp(u) - e_theta); };

  constexpr double kTailTol = 1e-14;
  const double left = std::max(1.0, std::log(2.0 / (kTailTol * a)) / a);
  const double right = std::max(1.0, std::log(2.0 / (kTailTol * (1.0 - a))) / (1.0 - a));
  if (left > 700.0 || right > 700.0) fail(ErrorCode::NonConvergent, "rho - p too close to an integer");

  const quad::AdaptiveResult lower = quad::gauss_kronrod(h, -left, 0.0, 1e-13, 20000);
  const quad::AdaptiveResult upper = quad::gauss_kronrod(h, 0.0, right, 1e-13, 20000);
  if (!lower.converged || !upper.converged) fail(ErrorCode::NonConvergent, "kernel quadrature did not converge");

  const double scale = std::pow(modulus, a - 1.0);
  KernelIntegral out;
  out.quadrature = scale * (lower.value + upper.value);
  out.closed_form = -kPi * std::polar(1.0, -kPi * a) / std::sin(kPi * a) * scale * std::polar(1.0, (a - 1.0) * theta);
  out.relative_difference = std::abs(out.quadrature - out.closed_form) / std::abs(out.closed_form);
  out.intervals = lower.intervals + upper.intervals;
  return out;
}

std::vector<CRGComparison> verify_crg_theorem15(const CanonicalProduct& f, double c, const ProximateOrder& po,
                                                int depth, const std::vector<std::pair<double, double>>& r_theta,
                                                double hypothesis_constant) {
  require(c > 0.0, "counting constant must be positive");
  require(hypothesis_constant > 0.0, "hypothesis constant must be positive");
  const EpsilonCascade cascade(depth);
  const double ray = f.rule().angle;
  std::vector<CRGComparison> out;
  out.reserve(r_theta.size());
  for (const auto& [r, theta] : r_theta) {
    require(r > 0.0, "sample radius must be positive");
    const double eps = cascade.eps1(r);
    double rel = std::fmod(theta - ray, kTwoPi);
    if (rel < 0.0) rel += kTwoPi;
    const double band = std::sqrt(eps);
    if (rel < band || rel > kTwoPi - band)
      fail(ErrorCode::BandViolation, "sample " + describe_point(r, theta) + " lies outside the admissible band");

    const double rho_r = po.rho(r);
    const double v = scale_V(po, r);
    const double counted = static_cast<double>(f.counting_function(r));
    if (std::abs(counted - c * v) > hypothesis_constant * eps * v) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "n(r) = " << counted << " deviates from c r^rho(r) = " << c * v << " at r = " << r;
      fail(ErrorCode::HypothesisFailure, msg.str());
    }

    const LogEval e = f.eval_log(std::polar(r, theta));
    if (!e.valid) fail(ErrorCode::ZeroHit, "sample " + describe_point(r, theta) + " is a zero");
    const double predicted = c * kPi * std::cos((rel - kPi) * rho_r) / std::sin(kPi * rho_r) * v;
    const double diff = e.log_abs - predicted;
    out.push_back({r, theta, e.log_abs, predicted, diff / (std::sqrt(std::sqrt(eps)) * v), diff / v});
  }
  return out;
}

}  // namespace crg
