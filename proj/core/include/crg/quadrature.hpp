#pragma once

#include <complex>
#include <functional>

namespace crg::quad {

using Complex = std::complex<double>;
using ComplexIntegrand = std::function<Complex(double)>;

struct AdaptiveResult {
  Complex value;
  double error_estimate = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7/15) bisection on [a, b] until the summed error
/// estimate is below abs_tol, or max_intervals panels have been used.
AdaptiveResult gauss_kronrod(const ComplexIntegrand& f, double a, double b, double abs_tol,
                             int max_intervals = 4000);

/// Composite 8-point Gauss-Legendre over [a, b] split into `panels` equal pieces.
Complex gauss_legendre(const ComplexIntegrand& f, double a, double b, int panels);

}  // namespace crg::quad
