#pragma once

#include <vector>

#include "crg/growth.hpp"
#include "crg/models.hpp"

namespace crg {

/// Nodes gamma(phi) = center + radius e^{i phi} of a periodic trapezoid rule.
struct CircleQuadrature {
  Complex center;
  double radius;
  int nodes;  // power of two, >= 16
};

/// L(z) = (1 / pi t) * integral of log|f(z + t e^{i phi})| e^{-i phi} d phi.
/// The disk must be zero-free (certified by an argument-principle count);
/// the result at M nodes is compared against 2M nodes.
/// Throws ZeroInDisk or NonConvergent.
Complex schwarz_log_derivative(const FunctionModel& model, Complex z, double radius, int nodes);

struct SectorResidual {
  double r;
  double theta;
  double re_zL;      // Re(z f'(z)/f(z))
  double predicted;  // rho h(theta) V(r)
  double residual;   // (re_zL - predicted) / (V(r) eps2(r))
};

/// Compares Re(zL) against rho h(theta) V(r) inside the sectors that keep
/// 3 eps2(r) away from every breakpoint of h. Throws SectorViolation.
std::vector<SectorResidual> check_8l(const FunctionModel& model, const ExactIndicator& ind,
                                     const ProximateOrder& po, int depth,
                                     const std::vector<std::pair<double, double>>& r_theta);

struct LogDerivativeBound {
  double bound;
  double log_plus_M;   // upper estimate used for T(s, g)
  double growth_term;  // 4 s / (s - |z|)^2 * log_plus_M
  double zero_term;    // sum 2 / |z - z_j| over zeros with |z_j| <= s
  std::size_t zeros_used;
};

/// |g'/g(z)| <= 4s/(s-|z|)^2 T(s,g) + sum 2/|z - z_j| with T replaced by log+ M(s,g).
/// Throws IncompleteZeroList when the model cannot enumerate its zeros.
LogDerivativeBound log_derivative_upper_bound(const FunctionModel& g, Complex z, double s);

struct KernelIntegral {
  Complex quadrature;
  Complex closed_form;
  double relative_difference;
  int intervals;
};

/// I(z) = integral_0^inf t^rho dt / (t^{p+1} (t - z)) for p < rho < p + 1 and
/// 0 < arg z < 2 pi, by quadrature and in closed form
/// -pi e^{-i pi (rho - p)} / sin(pi (rho - p)) z^{rho - p - 1}.
/// Throws BranchViolation for z on the positive real axis.
KernelIntegral kernel_integral_I(double rho, int p, Complex z);

struct CRGComparison {
  double r;
  double theta;
  double measured;           // log|f(r e^{i theta})|
  double predicted;          // c pi cos((theta - pi) rho(r)) / sin(pi rho(r)) V(r)
  double residual;           // (measured - predicted) / (eps^{1/4} V)
  double residual_over_V;    // (measured - predicted) / V
};

/// log|f| of a ray product against the completely regular growth asymptotic.
/// theta is measured from the zero ray and must satisfy sqrt(eps) <= theta <= 2 pi - sqrt(eps)
/// (eps = eps1 of the cascade with the given depth). The counting hypothesis
/// |n(r) - c r^rho(r)| <= C eps(r) r^rho(r) is checked at every sample radius.
/// Throws BandViolation or HypothesisFailure.
std::vector<CRGComparison> verify_crg_theorem15(const CanonicalProduct& f, double c, const ProximateOrder& po,
                                                int depth, const std::vector<std::pair<double, double>>& r_theta,
                                                double hypothesis_constant = 1.0);

}  // namespace crg
