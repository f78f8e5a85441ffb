#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "crg/error.hpp"
#include "crg/models.hpp"

// Runs expr and checks that it throws crg::Error with the given code.
#define CHECK_ERROR_CODE(expr, ecode)                                                  \
  do {                                                                                 \
    bool crg_thrown_ = false;                                                          \
    try {                                                                              \
      (void)(expr);                                                                    \
    } catch (const ::crg::Error& crg_err_) {                                           \
      crg_thrown_ = true;                                                              \
      CHECK(std::string(::crg::to_string(crg_err_.code())) ==                          \
            std::string(::crg::to_string(ecode)));                                     \
    }                                                                                  \
    CHECK_MESSAGE(crg_thrown_, #expr " did not throw");                                \
  } while (0)

namespace crg::test {

inline constexpr double kPi = 3.14159265358979323846;

// f == 0 everywhere
class ZeroModel final : public FunctionModel {
 public:
  LogEval eval_log(Complex) const override {
    return {-std::numeric_limits<double>::infinity(), 0.0, false};
  }
  Complex log_derivative(Complex) const override { fail(ErrorCode::NearZero, "identically zero"); }
  double order() const override { return 0.0; }
  std::string describe() const override { return "0"; }
};

// z / 2
inline ExponentialSum half_map() { return ExponentialSum::polynomial({0.0, 0.5}); }

// Portable uniform draws (the std distributions differ between libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  Complex in_box(double x0, double x1, double y0, double y1) { return {uniform(x0, x1), uniform(y0, y1)}; }
  Complex in_disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, 2.0 * kPi * uniform());
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::mt19937_64 gen_;
};

// Ascending coefficients of prod (1 - z / z_k).
inline std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& a : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j] += c[j];
      next[j + 1] -= c[j] / a;
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace crg::test
