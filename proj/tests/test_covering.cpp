#include <cmath>
#include <sstream>

#include "crg/covering.hpp"
#include "crg/sampling.hpp"
#include "test_support.hpp"

using namespace crg;

namespace {

double harmonic_sum(const std::vector<Complex>& points, Complex z) {
  double s = 0.0;
  for (const auto& p : points) s += 1.0 / std::abs(z - p);
  return s;
}

double log_abs_poly(const std::vector<Complex>& zeros, Complex z) {
  double s = 0.0;
  for (const auto& a : zeros) s += std::log(std::abs(1.0 - z / a));
  return s;
}

}  // namespace

TEST_SUITE("covering") {

TEST_CASE("disk sets") {
  DiskSet s({{0.0, 1.0}, {Complex(3, 0), 2.0}});
  CHECK(s.radius_sum() == 3.0);
  CHECK(s.radius_square_sum() == 5.0);
  CHECK(s.contains(1.0));  // closed disks
  CHECK(s.contains(Complex(1.5, 0)));
  CHECK_FALSE(s.contains(Complex(0, 1.5)));
  CHECK(s.multiplicity(Complex(1, 0)) == 2);
  CHECK_ERROR_CODE(s.add({0.0, -1.0}), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(s.add({Complex(NAN, 0), 1.0}), ErrorCode::InvalidArgument);
}

TEST_CASE("disk set text round trip") {
  test::Rng rng(2);
  DiskSet s;
  for (int i = 0; i < 50; ++i) s.add({rng.in_box(-1e3, 1e3, -1, 1), rng.uniform(1e-9, 10)});
  std::ostringstream out;
  write_disk_set(out, s);
  const std::string text = out.str();
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream in(text);
  const DiskSet back = read_disk_set(in);
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.disks()[i].center == s.disks()[i].center);
    CHECK(back.disks()[i].radius == s.disks()[i].radius);
  }
  std::ostringstream again;
  write_disk_set(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("malformed disk files name the line") {
  for (const char* bad : {"0 0 1\n1 2\n", "0 0 1\n\n1 2 x\n", "0 0 -1\n", "0 0 1 4\n"}) {
    std::istringstream in(bad);
    bool thrown = false;
    try {
      read_disk_set(in);
    } catch (const Error& e) {
      thrown = true;
      CHECK(e.code() == ErrorCode::InvalidArgument);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK(thrown);
  }
}

TEST_CASE("besicovitch examples") {
  const auto one = besicovitch_cover({Complex(1, 1)}, {1.0});
  CHECK(one.disks.size() == 1);
  const auto two = besicovitch_cover({0.0, 3.0}, {1.0, 1.0});
  CHECK(two.disks.size() == 2);
  const auto nested = besicovitch_cover({0.0, 0.5}, {0.2, 1.0});
  CHECK(nested.disks.size() == 1);
  CHECK(nested.selected[0] == 1);
}

TEST_CASE("besicovitch cover of 1e3 random points") {
  test::Rng rng(9);
  std::vector<Complex> pts;
  std::vector<double> radii;
  for (int i = 0; i < 1000; ++i) {
    pts.push_back(rng.in_box(0, 1, 0, 1));
    radii.push_back(rng.uniform(0.01, 0.05));
  }
  const auto cover = besicovitch_cover(pts, radii);
  std::vector<Complex> probes;
  for (int i = 0; i < 10000; ++i) probes.push_back(rng.in_box(-0.05, 1.05, -0.05, 1.05));
  const auto audit = audit_besicovitch(cover, pts, probes);
  CHECK(audit.covers_all);
  CHECK(audit.max_multiplicity <= 256);
  CHECK(audit.passed());
  // independent check of the cover
  for (const auto& p : pts) CHECK(cover.disks.contains(p));
}

TEST_CASE("besicovitch audit on many small random instances") {
  test::Rng rng(10);
  std::size_t worst = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = rng.integer(1, 30);
    std::vector<Complex> pts;
    std::vector<double> radii;
    for (int i = 0; i < n; ++i) {
      pts.push_back(rng.in_box(0, 1, 0, 1));
      radii.push_back(rng.uniform(0.01, 0.5));
    }
    const auto cover = besicovitch_cover(pts, radii);
    const auto audit = audit_besicovitch(cover, pts, halton_box(64, 0, 1, 0, 1));
    CHECK(audit.passed());
    worst = std::max(worst, audit.max_multiplicity);
  }
  CHECK(worst <= 256);
}

TEST_CASE("fuchs-macintyre examples") {
  const auto one = fuchs_macintyre_disks({Complex(0.5, 0.5)}, 0.1);
  REQUIRE(one.disks.size() == 1);
  CHECK(one.disks.disks()[0].center == Complex(0.5, 0.5));
  CHECK(one.disks.disks()[0].radius >= 0.05);
  CHECK(one.disks.disks()[0].radius <= 0.2);
  CHECK(one.radius_square_sum <= one.area_bound);
  CHECK(one.area_bound == doctest::Approx(0.04));

  const auto two = fuchs_macintyre_disks({0.0, 0.0}, 1.0);
  CHECK(two.disks.size() == 1);
  CHECK(two.max_harmonic_ratio <= 1.0);
}

TEST_CASE("fuchs-macintyre certificates on random instances") {
  test::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(rng.in_box(0, 1, 0, 1));
    const double H = 0.1;
    const auto res = fuchs_macintyre_disks(pts, H, 2000);
    double sq = 0.0;
    for (const auto& d : res.disks.disks()) sq += d.radius * d.radius;
    CHECK(sq <= 4 * H * H);
    CHECK(res.radius_square_sum <= res.area_bound);
    // independent probes
    for (int j = 0; j < 200; ++j) {
      const Complex z = rng.in_box(-0.2, 1.2, -0.2, 1.2);
      if (res.disks.contains(z)) continue;
      CHECK(harmonic_sum(pts, z) <= 2.0 * pts.size() / H * (1 + 1e-12));
    }
  }
}

TEST_CASE("cartan-levin examples") {
  const auto a = cartan_levin_disks({1.0}, 1.0, 0.1);
  CHECK(a.radius_sum <= 0.4);
  CHECK(a.radius_bound == doctest::Approx(0.4));
  CHECK(a.log_M == doctest::Approx(std::log(1 + 2 * std::exp(1.0))).epsilon(1e-12));
  CHECK(std::exp(a.log_M) == doctest::Approx(6.4366).epsilon(1e-4));
  CHECK(a.lower_bound == doctest::Approx(-(2 + std::log(15 * std::exp(1.0))) * a.log_M).epsilon(1e-12));

  const auto none = cartan_levin_disks({}, 1.0, 0.1);
  CHECK(none.disks.empty());
  CHECK(none.radius_sum == 0.0);

  const auto b = cartan_levin_disks({1.0, -1.0}, 1.0, 0.2);
  CHECK(b.radius_sum <= 0.8);
  CHECK(b.min_log_abs > b.lower_bound);

  CHECK_ERROR_CODE(cartan_levin_disks({1.0}, 1.0, 5.0), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(cartan_levin_disks({3.0}, 1.0, 0.1), ErrorCode::InvalidArgument);
}

TEST_CASE("cartan-levin certificates on random polynomials") {
  test::Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const double R = rng.uniform(0.5, 3.0);
    const double eta = rng.uniform(0.05, 1.0);
    std::vector<Complex> zeros(static_cast<std::size_t>(rng.integer(1, 50)));
    for (auto& a : zeros) {
      do a = rng.in_disk(2 * R);
      while (std::abs(a) < 1e-3);
    }
    const auto res = cartan_levin_disks(zeros, R, eta, 2000);
    CHECK(res.radius_sum <= 4 * eta * R);
    double s = 0.0;
    for (const auto& d : res.disks.disks()) s += d.radius;
    CHECK(s <= 4 * eta * R);
    for (int j = 0; j < 200; ++j) {
      const Complex z = rng.in_disk(R);
      if (res.disks.contains(z)) continue;
      CHECK(log_abs_poly(zeros, z) > res.lower_bound);
    }
  }
}

TEST_CASE("inflate") {
  CHECK(inflate(DiskSet{}, 0.5).empty());
  const auto one = inflate(DiskSet({{Complex(1, 2), 1.0}}), 0.5);
  CHECK(one.disks()[0].radius == 1.5);
  CHECK(one.disks()[0].center == Complex(1, 2));
  CHECK_ERROR_CODE(inflate(DiskSet{}, -1.0), ErrorCode::InvalidArgument);

  test::Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    DiskSet s;
    const int m = rng.integer(1, 40);
    for (int i = 0; i < m; ++i) s.add({rng.in_box(-5, 5, -5, 5), rng.uniform(0.001, 2)});
    const double q = rng.uniform(0, 3);
    const DiskSet t = inflate(s, q);
    REQUIRE(t.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(t.disks()[i].center == s.disks()[i].center);
    CHECK(t.radius_square_sum() <= 2 * s.radius_square_sum() + 2 * m * q * q);
  }
}

TEST_CASE("budget ratios") {
  const auto a = budget_checks(DiskSet({{0.0, 1.0}}), 10.0);
  CHECK(a.c0_ratio == doctest::Approx(0.1));
  CHECK(a.area_ratio == doctest::Approx(0.01));
  const auto b = budget_checks(DiskSet({{50.0, 1.0}}), 10.0);
  CHECK(b.c0_ratio == 0.0);
  CHECK(b.area_ratio == 0.0);
  DiskSet h;
  for (int k = 1; k <= 200; ++k) h.add({static_cast<double>(k), 1.0 / k});
  double harmonic = 0.0;
  for (int k = 1; k <= 100; ++k) harmonic += 1.0 / k;
  const auto c = budget_checks(h, 100.0);
  CHECK(c.c0_ratio == doctest::Approx(harmonic / 100.0).epsilon(1e-14));
  CHECK(c.c0_ratio == doctest::Approx(0.05187).epsilon(1e-4));
}

TEST_CASE("koebe constants") {
  const auto half = koebe_constants(0.5);
  CHECK(half.fourth_power_ratio == doctest::Approx(81.0).epsilon(1e-14));
  CHECK(half.squared_ratio == doctest::Approx(9.0).epsilon(1e-14));
  const auto small = koebe_constants(std::ldexp(1.0, -8));
  CHECK(small.squared_ratio == doctest::Approx(1.01575).epsilon(1e-5));
  CHECK(small.squared_ratio <= 2.0);
  const auto tiny = koebe_constants(1e-12);
  CHECK(tiny.squared_ratio == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tiny.fourth_power_ratio == doctest::Approx(1.0).epsilon(1e-10));
  for (double rho : {1e-6, 0.1, 0.5, 0.9}) {
    const auto k = koebe_constants(rho);
    CHECK(k.growth_lower > 0.0);
    CHECK(k.growth_lower < k.growth_upper);
    CHECK(k.derivative_lower < k.derivative_upper);
  }
  CHECK_ERROR_CODE(koebe_constants(1.0), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(koebe_constants(0.0), ErrorCode::InvalidArgument);
}

TEST_CASE("densities transfer exactly under affine maps") {
  const Complex a = 2.0, b(3, 1), c(0.3, 0.4);
  const auto P = [c](Complex z) { return std::abs(z - c) < 0.25; };
  const auto fP = [=](Complex w) { return P((w - b) / a); };
  for (const SamplePlan& plan : {SamplePlan{GridPlan{200, 200}}, SamplePlan{MonteCarloPlan{40000, 3}}}) {
    const auto q = estimate_density(Window{0, 1, 0, 1}, plan, P);
    const auto fq = estimate_density(Window{3, 5, 1, 3}, plan, fP);
    CHECK(std::fabs(q.density - fq.density) <= 1.0 / plan_size(plan));
  }
}

}  // TEST_SUITE
