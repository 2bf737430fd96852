#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "weinstein/corpus.hpp"
#include "weinstein/maximal.hpp"

using namespace weinstein;

namespace {

struct Fixture {
  WeinsteinParams p{1.0, 2};
  GridPtr grid = HalfSpaceGrid::cube(p, 2.0, 16);
  RadiusSchedule sched = RadiusSchedule::log_spaced(0.25, 1.0, 4, 8);

  RealField random_field(std::uint64_t seed, double lo, double hi) const {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(grid->size());
    for (double& x : v) x = u(g);
    return RealField(grid, v);
  }
};

}  // namespace

TEST_CASE("radius schedules") {
  const auto s = RadiusSchedule::log_spaced(0.125, 2.0, 5, 16);
  REQUIRE(s.radii.size() == 5);
  CHECK(s.radii.front() == doctest::Approx(2.0));
  CHECK(s.radii.back() == doctest::Approx(0.125));
  CHECK(s.radii[2] == doctest::Approx(0.5));
  CHECK(s.largest() == s.radii.front());
  CHECK_NOTHROW(s.validate());
  CHECK_THROWS_AS((RadiusSchedule{{1.0, 1.0}, 4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RadiusSchedule{{1.0, -0.5}, 4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RadiusSchedule{{1.0}, 0}.validate()), std::invalid_argument);
}

TEST_CASE("center offsets are nested and inside the ball") {
  const auto grid = HalfSpaceGrid::cube(WeinsteinParams(1.0, 2), 2.0, 16);
  const double eps = 0.8;
  const auto all = center_offsets(*grid, eps, 1000);
  REQUIRE(!all.empty());
  CHECK(all.front()[0] == 0);
  CHECK(all.front()[1] == 0);
  for (const auto& o : all) {
    const double dx = o[0] * grid->spacing(0);
    const double dy = o[1] * grid->spacing(1);
    CHECK(dx * dx + dy * dy <= eps * eps * (1 + 1e-12));
  }
  const auto some = center_offsets(*grid, eps, 10);
  REQUIRE(some.size() == 10);
  CHECK(std::equal(some.begin(), some.end(), all.begin()));
  CHECK_THROWS_AS(center_offsets(*grid, eps, 0), std::invalid_argument);
}

TEST_CASE("maximal function basic inequalities") {
  const Fixture fx;
  const RealField f = fx.random_field(1, -1.0, 1.0);
  const RealField g = fx.random_field(2, 0.0, 2.0);
  const RealField sum = f + g;
  const RealField doubled = f.scaled(2.0);
  const double fmax = lp_norm(*fx.grid, f, kInfinityNorm);
  const std::vector<RealField> fs{f, g, sum, doubled};
  const auto fields = maximal_fields(std::span<const RealField>(fs), fx.sched);
  for (std::size_t k = 0; k < fx.grid->size(); ++k) {
    const double mf = fields[0].uncentered[k];
    CHECK(mf <= fmax);
    CHECK(fields[2].uncentered[k] <= mf + fields[1].uncentered[k] + 1e-12);
    CHECK(fields[3].uncentered[k] == 2.0 * mf);
    CHECK((*fields[0].ball_average)[k] <= fmax);
  }
}

TEST_CASE("maximal_fields matches the pointwise definitions") {
  const Fixture fx;
  const RealField f = fx.random_field(3, -0.5, 1.0);
  const std::vector<RealField> fs{f};
  const auto fields = maximal_fields(std::span<const RealField>(fs), fx.sched);
  for (std::size_t k = 0; k < fx.grid->size(); k += 5) {
    const Point x = fx.grid->node(k);
    CHECK(fields[0].uncentered[k] == doctest::Approx(maximal_uncentered(f, x, fx.sched)).epsilon(1e-12));
    CHECK((*fields[0].ball_average)[k] == doctest::Approx(maximal_ball_average(f, x, fx.sched)).epsilon(1e-12));
  }
  const auto without = maximal_fields(std::span<const RealField>(fs), fx.sched, false);
  CHECK_FALSE(without[0].ball_average.has_value());
  CHECK_THROWS_AS(maximal_uncentered(f, Point{0.01, 0.02}, fx.sched), std::domain_error);
}

TEST_CASE("maximal function of a constant is the constant") {
  const Fixture fx;
  const RealField c = RealField::sample(fx.grid, [](const Point&) { return 0.75; });
  const std::vector<RealField> fs{c};
  const auto fields = maximal_fields(std::span<const RealField>(fs), fx.sched);
  for (std::size_t k = 0; k < fx.grid->size(); ++k) CHECK(fields[0].uncentered[k] == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("distribution and weak-type helpers") {
  const Fixture fx;
  const RealField f = fx.random_field(4, 0.0, 1.0);
  const auto mask = interior_mask(*fx.grid, 0.5);
  CHECK(std::count(mask.begin(), mask.end(), 1) > 0);
  CHECK(std::count(mask.begin(), mask.end(), 0) > 0);
  const double total = integrate(*fx.grid, RealField::sample(fx.grid, [](const Point&) { return 1.0; }));
  CHECK(distribution_function(f, 1e-300) <= total);
  CHECK(distribution_function(f, 2.0) == 0.0);
  CHECK(distribution_function(f, 0.5, mask) <= distribution_function(f, 0.5));
  CHECK_THROWS_AS(distribution_function(f, 0.0), std::domain_error);

  const std::vector<double> levels{0.1, 0.5};
  CHECK(weak_type_constant(f, f, levels) > 0.0);
  CHECK_THROWS_AS(weak_type_constant(RealField::zeros(fx.grid), f, levels), std::domain_error);
  const std::vector<double> bad_levels{0.1, -0.5};
  CHECK_THROWS_AS(weak_type_constant(f, f, bad_levels), std::domain_error);
  CHECK(lp_operator_ratio(f, f, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lp_operator_ratio(f, f, 1.0), std::domain_error);
  CHECK_THROWS_AS(lp_operator_ratio(RealField::zeros(fx.grid), f, 2.0), std::domain_error);
}

TEST_CASE("Vitali selection on a hand-built family") {
  const std::vector<BallSpec> family{
      BallSpec(Point{1.0, 1.0}, 1.0),
      BallSpec(Point{0.0, 1.0}, 2.0),
      BallSpec(Point{10.0, 1.0}, 0.5),
      BallSpec(Point{2.2, 0.0}, 0.5),
  };
  auto selected = vitali_select(std::span<const BallSpec>(family));
  std::sort(selected.begin(), selected.end());
  CHECK(selected == std::vector<std::size_t>{1, 2});
  const VitaliCheck check = vitali_verify(std::span<const BallSpec>(family), std::span<const std::size_t>(selected));
  CHECK(check.disjoint);
  CHECK(check.covered);
  // Ball 3 is covered by ball 1 with (|(2.2,0) - (0,1)| + 0.5) / 2.
  CHECK(check.worst_dilation == doctest::Approx((std::hypot(2.2, 1.0) + 0.5) / 2.0));

  const std::vector<std::size_t> overlapping{0, 1};
  CHECK_FALSE(vitali_verify(std::span<const BallSpec>(family), std::span<const std::size_t>(overlapping)).disjoint);
}
