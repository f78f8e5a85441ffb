#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace crg {

using Complex = std::complex<double>;

/// log|f(z)| and arg f(z). The phase is reduced to (-pi, pi]; no branch
/// continuity between neighbouring points is implied.
struct LogEval {
  double log_abs = 0.0;
  double phase = 0.0;
  bool valid = true;

  /// exp(log_abs) * e^{i phase}; zero for an invalid (zero-hit) result and
  /// infinite components once |f| exceeds the double range.
  Complex value() const;
};

/// log_abs below this value is reported as a zero hit.
double zero_hit_log_threshold() noexcept;

/// An entire function with overflow-safe evaluation.
class FunctionModel {
 public:
  virtual ~FunctionModel() = default;

  /// Returns an invalid LogEval (log_abs = -inf) when z is a zero within
  /// tolerance. Throws Error(OverflowUnrepresentable) when even log|f|
  /// leaves the double range.
  virtual LogEval eval_log(Complex z) const = 0;

  /// f'(z)/f(z). Throws Error(NearZero) close to a zero of f.
  virtual Complex log_derivative(Complex z) const = 0;

  /// All zeros (with multiplicity) in the closed disk |z| <= radius, when the
  /// model can enumerate them.
  virtual std::optional<std::vector<Complex>> zeros_within(double radius) const;

  /// Order of growth used for default proximate orders.
  virtual double order() const = 0;

  virtual std::string describe() const = 0;

  /// Plain complex value, derived from eval_log.
  Complex eval(Complex z) const { return eval_log(z).value(); }
};

struct ExpTerm {
  std::vector<Complex> poly;  // ascending degree
  Complex exponent;
};

/// f(z) = sum_k p_k(z) exp(b_k z) with polynomial coefficients p_k.
class ExponentialSum final : public FunctionModel {
 public:
  /// Throws InvalidArgument on duplicate exponents or when every polynomial
  /// is identically zero.
  explicit ExponentialSum(std::vector<ExpTerm> terms);

  static ExponentialSum exponential();
  static ExponentialSum sine();
  static ExponentialSum hyperbolic_cosine();  // e^z + e^{-z}
  static ExponentialSum polynomial(std::vector<Complex> coefficients);

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }

  LogEval eval_log(Complex z) const override;
  Complex log_derivative(Complex z) const override;
  /// Only single-term sums (a polynomial times an exponential) enumerate zeros.
  std::optional<std::vector<Complex>> zeros_within(double radius) const override;
  double order() const override;
  std::string describe() const override;

 private:
  std::vector<ExpTerm> terms_;
};

/// Zeros a_k = scale * k^power * e^{i angle}, k = 1, 2, ...
struct PowerZeroRule {
  double power = 1.0;
  double scale = 1.0;
  double angle = 0.0;

  Complex zero(std::size_t k) const;
  double modulus(std::size_t k) const;
  /// Number of k >= 1 with |a_k| <= r.
  std::size_t count_up_to(double r) const;
};

/// Weierstrass product prod_k E(z/a_k, p).
///
/// The first K factors are multiplied out; the remaining factors are replaced
/// by the leading terms of their power series, whose coefficients are
/// Hurwitz-type sums computed once at construction. tail_bound() is a
/// rigorous bound on the remaining error of log f for |z| <= certified_radius().
/// Queries beyond that radius rebuild a larger expansion on the fly.
class CanonicalProduct final : public FunctionModel {
 public:
  static constexpr int kTailTerms = 24;

  CanonicalProduct(PowerZeroRule rule, int genus, double tolerance, double certified_radius);

  const PowerZeroRule& rule() const noexcept { return rule_; }
  int genus() const noexcept { return genus_; }
  double tolerance() const noexcept { return tolerance_; }
  std::size_t cutoff() const noexcept { return tail_.cutoff; }
  double tail_bound() const noexcept { return tail_.bound; }
  double certified_radius() const noexcept { return certified_radius_; }

  /// Convergence exponent 1/power of the zero sequence.
  double convergence_exponent() const noexcept { return 1.0 / rule_.power; }

  /// n(r, 0): exact count of zeros with |a_k| <= r.
  std::size_t counting_function(double r) const;

  LogEval eval_log(Complex z) const override;
  Complex log_derivative(Complex z) const override;
  std::optional<std::vector<Complex>> zeros_within(double radius) const override;
  double order() const override { return convergence_exponent(); }
  std::string describe() const override;

  struct Tail {
    std::size_t cutoff = 0;
    double anchor = 0.0;           // |a_{K+1}|
    std::vector<Complex> weights;  // T_j, j = p+1 .. p+kTailTerms
    double bound = 0.0;            // error bound for log f at the design radius
    double radius = 0.0;           // design radius
  };

 private:
  const Tail& tail_for(double modulus, Tail& scratch) const;

  PowerZeroRule rule_;
  int genus_;
  double tolerance_;
  double certified_radius_;
  Tail tail_;
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rectangle {
  double x0, x1, y0, y1;
};

/// (1/2 pi i) times the contour integral of f'/f over the rectangle boundary,
/// rounded to the nearest integer. nodes_per_side Gauss-Legendre nodes are
/// used on every side. Throws ContourTooClose or NonIntegerResidue.
int count_zeros_argument_principle(const FunctionModel& model, const Rectangle& rect,
                                   int nodes_per_side);

/// Same quantity on the circle |z - center| = radius.
int count_zeros_on_circle(const FunctionModel& model, Complex center, double radius, int nodes);

}  // namespace crg
