#include <cmath>

#include "crg/analytic.hpp"
#include "test_support.hpp"

using namespace crg;
using crg::test::kPi;

namespace {

// log|sin(pi w) / (pi w)| for w = sqrt(z), Im w > 0, without overflow:
// sin(u) = e^{-iu} (e^{2iu} - 1) / 2i and |e^{-iu}| = e^{Im u}
double sinc_product_oracle(double r, double theta) {
  const Complex w = std::polar(std::sqrt(r), theta / 2);
  const Complex u = kPi * w;
  return u.imag() - std::log(2.0) + std::log(std::abs(1.0 - std::exp(Complex(0, 2) * u))) - std::log(std::abs(u));
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("schwarz reconstruction examples") {
  const Complex e = schwarz_log_derivative(ExponentialSum::exponential(), Complex(5, 2), 1.0, 256);
  CHECK(std::abs(e - 1.0) < 1e-12);
  const Complex s = schwarz_log_derivative(ExponentialSum::sine(), Complex(0, 20), 1.0, 256);
  CHECK(std::abs(s - Complex(0, -1.0 / std::tanh(20.0))) < 1e-9);
  CHECK(std::abs(s - ExponentialSum::sine().log_derivative(Complex(0, 20))) < 1e-9);
  const Complex c = schwarz_log_derivative(ExponentialSum::polynomial({2.0}), Complex(1, 1), 0.5, 64);
  CHECK(std::abs(c) < 1e-14);
}

TEST_CASE("schwarz reconstruction agrees with the analytic log derivative") {
  test::Rng rng(101);
  const auto ez = ExponentialSum::exponential();
  const auto sine = ExponentialSum::sine();
  const auto cosh = ExponentialSum::hyperbolic_cosine();
  for (int i = 0; i < 100; ++i) {
    const FunctionModel* f = nullptr;
    Complex z;
    switch (i % 3) {
      case 0:
        f = &ez;
        z = rng.in_box(-20, 20, -20, 20);
        break;
      case 1:  // zeros on the real axis
        f = &sine;
        z = Complex(rng.uniform(-20, 20), (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(1.5, 10));
        break;
      default:  // zeros on the imaginary axis
        f = &cosh;
        z = Complex((rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(1.5, 10), rng.uniform(-20, 20));
        break;
    }
    const Complex L = f->log_derivative(z);
    const Complex S = schwarz_log_derivative(*f, z, 1.0, 512);
    CHECK(std::abs(S - L) <= 1e-6 * std::abs(L));
  }
}

TEST_CASE("schwarz reconstruction refuses disks with zeros") {
  CHECK_ERROR_CODE(schwarz_log_derivative(ExponentialSum::sine(), 0.1, 1.0, 256), ErrorCode::ZeroInDisk);
  CHECK_ERROR_CODE(schwarz_log_derivative(ExponentialSum::sine(), Complex(3, 0.5), 1.0, 256), ErrorCode::ZeroInDisk);
  CHECK_ERROR_CODE(schwarz_log_derivative(ExponentialSum::exponential(), 0.0, 1.0, 100), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(schwarz_log_derivative(ExponentialSum::exponential(), 0.0, 1.0, 8), ErrorCode::InvalidArgument);
}

TEST_CASE("sector asymptotic for sin and e^z") {
  const auto sine = ExponentialSum::sine();
  const auto po = ProximateOrder::constant(1.0);
  const auto s = check_8l(sine, indicator_exact_expsum(sine), po, 1, {{50, kPi / 2}, {100, kPi / 2}});
  for (const auto& row : s) {
    const double oracle = row.r / std::tanh(row.r);
    CHECK(std::abs(row.re_zL - oracle) < 1e-12 * oracle);
    CHECK(std::abs(row.re_zL - row.r) < 1e-8);
    CHECK(std::abs(row.residual) < 1e-12);
  }
  const auto ez = ExponentialSum::exponential();
  const auto e = check_8l(ez, indicator_exact_expsum(ez), po, 1, {{100, 0.0}, {100, 2.0}});
  CHECK(e[0].re_zL == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(e[0].residual == doctest::Approx(0.0));
  CHECK(std::abs(e[1].residual) < 1e-12);
}

TEST_CASE("sector rule is enforced") {
  const auto sine = ExponentialSum::sine();
  const auto po = ProximateOrder::constant(1.0);
  const auto h = indicator_exact_expsum(sine);
  // 3 eps2(30) = 1.62 > pi/2
  CHECK_ERROR_CODE(check_8l(sine, h, po, 1, {{30, kPi / 2}}), ErrorCode::SectorViolation);
  CHECK_ERROR_CODE(check_8l(sine, h, po, 1, {{1e4, 0.1}}), ErrorCode::SectorViolation);
  const auto cosh = ExponentialSum::hyperbolic_cosine();
  CHECK_ERROR_CODE(check_8l(cosh, indicator_exact_expsum(cosh), po, 1, {{50, kPi / 4}}), ErrorCode::SectorViolation);
}

TEST_CASE("cosh off its sector still obeys the asymptotic at r = 50, pi/4") {
  // z tanh z oracle, residual in eps2 units
  const Complex z = std::polar(50.0, kPi / 4);
  const Complex oracle = z * std::tanh(z);
  const Complex zL = z * ExponentialSum::hyperbolic_cosine().log_derivative(z);
  CHECK(std::abs(zL - oracle) < 1e-10 * std::abs(oracle));
  const double eps2 = EpsilonCascade(1).eps2(50.0);
  CHECK(std::fabs(zL.real() - 50.0 * std::cos(kPi / 4)) / (50.0 * eps2) <= 1.0);
}

TEST_CASE("sector residuals for sin stay bounded and do not grow with r") {
  const auto sine = ExponentialSum::sine();
  const auto h = indicator_exact_expsum(sine);
  const auto po = ProximateOrder::constant(1.0);
  double previous = 1e300;
  for (double r : {1e2, 1e3, 1e4}) {
    const double margin = 3.0 * EpsilonCascade(1).eps2(r) * (1.0 + 1e-9);
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i <= 10; ++i) {
      const double t = margin + (kPi - 2 * margin) * i / 10;
      samples.push_back({r, t});
      samples.push_back({r, t + kPi});
    }
    double worst = 0.0;
    for (const auto& row : check_8l(sine, h, po, 1, samples)) worst = std::max(worst, std::fabs(row.residual));
    CHECK(worst <= 5.0);
    CHECK(worst <= previous + 1e-12);
    previous = worst;
  }
}

TEST_CASE("log derivative upper bound examples") {
  const auto g = ExponentialSum::polynomial({1.0, -1.0});
  const auto b = log_derivative_upper_bound(g, 3.0, 10.0);
  CHECK(b.bound == doctest::Approx(40.0 / 49.0 * std::log(11.0) + 1.0).epsilon(1e-9));
  CHECK(b.bound == doctest::Approx(2.9575).epsilon(1e-4));
  CHECK(b.zeros_used == 1);
  CHECK(b.bound >= std::abs(g.log_derivative(3.0)));

  const auto e = log_derivative_upper_bound(ExponentialSum::exponential(), 1.0, 4.0);
  CHECK(e.bound == doctest::Approx(64.0 / 9.0).epsilon(1e-9));
  CHECK(e.zeros_used == 0);

  const auto q = ExponentialSum::polynomial(test::poly_from_roots({2.0, 3.0}));
  const auto o = log_derivative_upper_bound(q, 0.0, 5.0);
  CHECK(o.bound >= 0.0);
  CHECK(o.bound >= std::abs(q.log_derivative(0.0)));

  CHECK_ERROR_CODE(log_derivative_upper_bound(ExponentialSum::sine(), 1.0, 4.0), ErrorCode::IncompleteZeroList);
  CHECK_ERROR_CODE(log_derivative_upper_bound(g, 3.0, 2.0), ErrorCode::InvalidArgument);
}

TEST_CASE("log derivative upper bound dominates |g'/g| for random polynomials") {
  test::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> roots(static_cast<std::size_t>(rng.integer(1, 12)));
    for (auto& a : roots) a = rng.in_disk(6.0);
    const auto g = ExponentialSum::polynomial(test::poly_from_roots(roots));
    for (int j = 0; j < 10; ++j) {
      const Complex z = rng.in_disk(4.0);
      double nearest = 1e300;
      for (const auto& a : roots) nearest = std::min(nearest, std::abs(z - a));
      if (nearest < 1e-3) continue;
      const auto b = log_derivative_upper_bound(g, z, 5.0);
      CHECK(b.bound >= std::abs(g.log_derivative(z)) - 1e-9);
    }
  }
}

TEST_CASE("kernel integral examples") {
  const auto a = kernel_integral_I(0.5, 0, -1.0);
  CHECK(std::abs(a.quadrature - kPi) < 1e-9);
  CHECK(std::abs(a.closed_form - kPi) < 1e-12);
  CHECK(((-1.0) * a.closed_form).real() == doctest::Approx(-kPi));

  const auto b = kernel_integral_I(0.5, 0, Complex(0, 1));
  const Complex expected = kPi * std::polar(1.0, kPi / 4);
  CHECK(std::abs(b.closed_form - expected) < 1e-12);
  CHECK(std::abs(b.quadrature - expected) < 1e-9);
  CHECK(std::abs(expected - Complex(2.2214, 2.2214)) < 1e-4);

  // -pi e^{-i pi/2} (-1)^{-1/2} / sin(pi/2) = -pi (-i)(-i) = +pi
  const auto c = kernel_integral_I(1.5, 1, -1.0);
  CHECK(std::abs(c.closed_form - kPi) < 1e-12);
  CHECK(std::abs(c.quadrature - kPi) < 1e-9);
}

TEST_CASE("kernel integral sweep") {
  const std::pair<double, int> orders[] = {{0.25, 0}, {0.5, 0}, {0.75, 0}, {1.3, 1}, {1.5, 1}, {2.6, 2}};
  const Complex points[] = {-1.0, Complex(0, 1), Complex(3, 1), std::polar(0.1, 3.0), std::polar(100.0, 5.0)};
  int n = 0;
  for (const auto& [rho, p] : orders) {
    for (const Complex& z : points) {
      if (n == 20) break;
      const auto k = kernel_integral_I(rho, p, z);
      CHECK(k.relative_difference <= 1e-7);
      CHECK(std::abs(k.quadrature - k.closed_form) <= 1e-7 * std::abs(k.closed_form));
      ++n;
    }
  }
  CHECK(n == 20);
}

TEST_CASE("kernel integral preconditions") {
  CHECK_ERROR_CODE(kernel_integral_I(0.5, 0, 2.0), ErrorCode::BranchViolation);
  CHECK_ERROR_CODE(kernel_integral_I(1.0, 0, -1.0), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(kernel_integral_I(1.5, 0, -1.0), ErrorCode::InvalidArgument);
}

TEST_CASE("ray product against its asymptotic") {
  CanonicalProduct f({2.0, 1.0, 0.0}, 0, 1e-6, 1e5);
  const auto po = ProximateOrder::constant(0.5);
  const auto rows = verify_crg_theorem15(f, 1.0, po, 1, {{1e4, kPi}, {1e4, kPi / 2}, {1e4, 3 * kPi / 2}});
  CHECK(rows[0].predicted == doctest::Approx(100 * kPi).epsilon(1e-14));
  CHECK(rows[0].measured == doctest::Approx(100 * kPi - std::log(200 * kPi)).epsilon(1e-9));
  CHECK(rows[0].measured == doctest::Approx(307.71).epsilon(1e-4));
  CHECK(rows[1].predicted == doctest::Approx(100 * kPi * std::cos(kPi / 4)).epsilon(1e-14));
  for (const auto& row : rows) {
    CHECK(std::abs(row.measured - sinc_product_oracle(row.r, row.theta)) < 1e-6);
    CHECK(std::fabs(row.residual_over_V) <= 0.1);
    CHECK(std::fabs(row.residual) < 1.0);
    CHECK(row.predicted == doctest::Approx(kPi * std::sin(row.theta / 2) * 100).epsilon(1e-12));
  }
}

TEST_CASE("ray product residual shrinks with r") {
  CanonicalProduct f({2.0, 1.0, 0.0}, 0, 1e-6, 1e5);
  const auto po = ProximateOrder::constant(0.5);
  const auto rows = verify_crg_theorem15(f, 1.0, po, 1, {{1e3, kPi}, {1e4, kPi}, {1e5, kPi}});
  CHECK(std::fabs(rows[1].residual_over_V) < std::fabs(rows[0].residual_over_V));
  CHECK(std::fabs(rows[2].residual_over_V) < std::fabs(rows[1].residual_over_V));
  CHECK(std::fabs(rows[2].residual) < std::fabs(rows[0].residual));
  for (const auto& row : rows) CHECK(std::abs(row.measured - sinc_product_oracle(row.r, row.theta)) < 1e-6);
}

TEST_CASE("ray product preconditions") {
  CanonicalProduct f({2.0, 1.0, 0.0}, 0, 1e-6, 1e4);
  const auto po = ProximateOrder::constant(0.5);
  const double eps = EpsilonCascade(1).eps1(1e4);
  CHECK_ERROR_CODE(verify_crg_theorem15(f, 1.0, po, 1, {{1e4, eps * eps}}), ErrorCode::BandViolation);
  CHECK_ERROR_CODE(verify_crg_theorem15(f, 1.0, po, 1, {{1e4, 2 * kPi - eps * eps}}), ErrorCode::BandViolation);
  CHECK_ERROR_CODE(verify_crg_theorem15(f, 2.0, po, 1, {{1e4, kPi}}), ErrorCode::HypothesisFailure);
}

}  // TEST_SUITE
