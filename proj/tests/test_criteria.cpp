#include <cmath>

#include "crg/criteria.hpp"
#include "test_support.hpp"

using namespace crg;
using crg::test::kPi;

namespace {

auto sector(double half_angle) {
  return [half_angle](Complex z) { return std::fabs(std::arg(z)) < half_angle; };
}

}  // namespace

TEST_SUITE("criteria") {

TEST_CASE("membership in A") {
  const auto ez = ExponentialSum::exponential();
  const auto beta = GrowthMinorant::exp_power(0.5, 1.0);
  const auto a = membership_A(ez, beta, 100.0);
  CHECK(a.in_A);
  CHECK(a.re_zL == doctest::Approx(100.0));
  CHECK(a.log_margin == doctest::Approx(50.0));
  CHECK(std::isnan(a.min_disk_re));

  CHECK_FALSE(membership_A(ez, beta, Complex(0, 100)).in_A);
  CHECK(std::fabs(membership_A(ez, beta, Complex(0, 100)).re_zL) < 1e-12);

  const auto s = membership_A(ExponentialSum::sine(), beta, Complex(0, 100));
  CHECK(s.in_A);
  CHECK(s.re_zL == doctest::Approx(100.0 / std::tanh(100.0)));
  CHECK(s.log_margin == doctest::Approx(100.0 - std::log(2.0) - 50.0));

  CHECK_ERROR_CODE(membership_A(ExponentialSum::sine(), beta, 0.0), ErrorCode::NearZero);
}

TEST_CASE("membership in B") {
  const auto ez = ExponentialSum::exponential();
  const auto b = membership_B(ez, GrowthMinorant::exp_power(0.5, 1.0), 100.0, 16);
  CHECK(b.in_B);
  CHECK(b.sampling_certificate);
  CHECK(b.disk_radius == doctest::Approx(32.0));
  CHECK(b.min_disk_re == doctest::Approx(68.0).epsilon(1e-12));

  const auto quarter = GrowthMinorant::exp_power(0.25, 1.0);
  const auto c = membership_B(ez, quarter, Complex(65, 70), 16);
  CHECK(c.in_A);
  CHECK(c.in_B);
  CHECK(c.min_disk_re == doctest::Approx(33.0).epsilon(1e-12));

  const auto d = membership_B(ez, quarter, 70.0, 16);
  CHECK(d.in_B);
  CHECK(d.min_disk_re == doctest::Approx(38.0).epsilon(1e-12));

  const auto e = membership_B(ez, quarter, Complex(20, 5), 16);
  CHECK_FALSE(e.in_A);
  CHECK_FALSE(e.in_B);
}

TEST_CASE("B implies A and disk sampling is stable under doubling") {
  test::Rng rng(44);
  const auto beta = GrowthMinorant::exp_power(0.5, 1.0);
  const auto ez = ExponentialSum::exponential();
  const auto sine = ExponentialSum::sine();
  const auto cosh = ExponentialSum::hyperbolic_cosine();
  int in_b = 0;
  for (int i = 0; i < 300; ++i) {
    const FunctionModel& f = i % 3 == 0 ? static_cast<const FunctionModel&>(ez)
                             : i % 3 == 1 ? static_cast<const FunctionModel&>(sine)
                                          : static_cast<const FunctionModel&>(cosh);
    const Complex z = rng.in_box(-300, 300, -300, 300);
    const auto v = membership_B(f, beta, z, 16);
    if (v.in_B) {
      CHECK(v.in_A);
      ++in_b;
    }
    CHECK(membership_B(f, beta, z, 32).in_B == v.in_B);
  }
  CHECK(in_b > 0);
}

TEST_CASE("annulus densities") {
  const AnnulusSpec ann{10.0};
  const SamplePlan mc = MonteCarloPlan{100000, 7};
  CHECK(annulus_density([](Complex) { return true; }, ann, mc).density == 1.0);
  const auto third = annulus_density(sector(kPi / 3), ann, mc);
  CHECK(std::fabs(third.density - 1.0 / 3.0) < 0.01);
  CHECK(third.confidence_halfwidth > 0.0);
  CHECK(third.total == 100000);
}

TEST_CASE("density of A for e^z on ann(200)") {
  const auto ez = ExponentialSum::exponential();
  const auto beta = GrowthMinorant::exp_power(0.5, 1.0);
  const auto rep = annulus_density([&](Complex z) { return membership_A(ez, beta, z).in_A; }, AnnulusSpec{200.0},
                                   MonteCarloPlan{100000, 42});
  CHECK(std::fabs(rep.density - 1.0 / 3.0) < 0.02);
}

TEST_CASE("density is monotone under implication and Monte Carlo agrees with the grid") {
  const AnnulusSpec ann{3.0};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SamplePlan mc = MonteCarloPlan{20000, seed};
    const auto narrow = annulus_density(sector(kPi / 6), ann, mc);
    const auto wide = annulus_density(sector(kPi / 3), ann, mc);
    CHECK(narrow.density <= wide.density);
    CHECK(narrow.hits <= wide.hits);
    const auto grid = annulus_density(sector(kPi / 3), ann, GridPlan{360, 40});
    CHECK(grid.density == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::fabs(wide.density - grid.density) <= 3 * wide.confidence_halfwidth);
  }
}

TEST_CASE("density with exclusion disks") {
  const AnnulusSpec ann{8.0};
  const SamplePlan plan = MonteCarloPlan{200000, 5};
  const auto base = annulus_density(sector(kPi / 3), ann, plan);
  const auto none = density_with_exclusions(sector(kPi / 3), ann, DiskSet{}, plan);
  CHECK(none.report.hits == base.hits);
  CHECK(none.excluded_fraction == 0.0);

  const auto all = density_with_exclusions([](Complex) { return true; }, ann, DiskSet({{0.0, 17.0}}), plan);
  CHECK(all.report.density == 0.0);
  CHECK(all.excluded_fraction == 1.0);

  const auto one = density_with_exclusions([](Complex) { return true; }, ann, DiskSet({{1.25 * 8.0, 2.0}}), plan);
  CHECK(one.disk_area_fraction == doctest::Approx(1.0 / 60.0).epsilon(1e-14));
  CHECK(std::fabs(one.report.density - (1.0 - 1.0 / 60.0)) < 0.002);
  CHECK(one.report.density + one.excluded_fraction == doctest::Approx(1.0));
}

TEST_CASE("hypothesis margins") {
  const auto ez = ExponentialSum::exponential();
  const auto rows = hypothesis_check_14b(ez, GrowthMinorant::exp_power(0.5, 1.0), DensityBudget::constant(0.5), {200.0},
                                         MonteCarloPlan{20000, 42});
  REQUIRE(rows.size() == 1);
  CHECK(std::fabs(rows[0].margin - (1.0 / 3.0 - 0.5)) < 0.02);
  CHECK(rows[0].negative);

  const auto alpha = DensityBudget::inverse_log_power(1.0);
  const auto stub = margin_report([](Complex) { return true; }, alpha, {10.0, 100.0}, MonteCarloPlan{1000, 1});
  for (const auto& row : stub) {
    CHECK(row.margin == doctest::Approx(alpha(row.r)).epsilon(1e-15));
    CHECK_FALSE(row.negative);
  }
}

TEST_CASE("hypothesis margin for sin at r = 1e3 (pinned)") {
  const auto sine = ExponentialSum::sine();
  const auto beta = GrowthMinorant::paper_default(ProximateOrder::constant(1.0), 1);
  const auto rows = hypothesis_check_14b(sine, beta, DensityBudget::paper(2, 1), {1e3}, GridPlan{256, 64});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].margin > 0.0);
  CHECK_FALSE(rows[0].negative);
  // regression baseline for this grid
  CHECK(rows[0].density.hits == 14916);
  CHECK(rows[0].margin == doctest::Approx(7.51065).epsilon(1e-5));
}

}  // TEST_SUITE
