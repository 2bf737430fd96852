#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "weinstein/halfspace.hpp"
#include "weinstein/quadrature.hpp"

using namespace weinstein;

TEST_CASE("params constants and regime") {
  const WeinsteinParams p(1.0, 2);
  CHECK(p.density_constant() == doctest::Approx(1.0 / (std::sqrt(2.0 * M_PI) * 2.0)).epsilon(1e-15));
  CHECK(p.radial_constant() == doctest::Approx(1.0 / (std::pow(2.0, 1.5) * std::tgamma(2.5))).epsilon(1e-15));
  CHECK(p.strong_regime());
  CHECK_FALSE(WeinsteinParams(-0.4, 2).strong_regime());
  CHECK_FALSE(WeinsteinParams(0.5, 3).strong_regime());
  CHECK_THROWS_AS(WeinsteinParams(-0.5, 2), std::domain_error);
  CHECK_THROWS_AS(WeinsteinParams(1.0, 1), std::domain_error);
}

TEST_CASE("ball_measure against nested quadrature") {
  // Reference: 30-digit quadrature of the density over the half ball.
  CHECK(ball_measure(WeinsteinParams(1.0, 2), 1.0) == doctest::Approx(0.053192304053524357059).epsilon(1e-14));
  CHECK(ball_measure(WeinsteinParams(0.3, 3), 0.7) == doctest::Approx(0.014668662912830948704).epsilon(1e-13));
  CHECK(ball_measure(WeinsteinParams(-0.4, 2), 2.0) == doctest::Approx(2.0483286338917324464).epsilon(1e-13));
  CHECK_THROWS_AS(ball_measure(WeinsteinParams(1.0, 2), 0.0), std::domain_error);
}

TEST_CASE("ball_measure homogeneity") {
  for (auto [a, d] : {std::pair{1.0, 2}, {0.3, 3}, {-0.4, 2}, {2.5, 4}}) {
    const WeinsteinParams p(a, d);
    const double base = ball_measure(p, 1.3);
    for (double s : {0.01, 0.5, 3.0, 40.0}) {
      CHECK(ball_measure(p, s * 1.3) == doctest::Approx(std::pow(s, 2 * a + d + 1) * base).epsilon(1e-13));
    }
  }
}

TEST_CASE("box_measure against quadrature") {
  CHECK(box_measure(WeinsteinParams(1.0, 2), Point{0.2, 0.5}, 1.0) ==
        doctest::Approx(0.50491132363306323302).epsilon(1e-14));
  CHECK(box_measure(WeinsteinParams(1.0, 2), Point{0.0, 3.0}, 1.0) ==
        doctest::Approx(23.936536824085960676).epsilon(1e-14));
  CHECK(box_measure(WeinsteinParams(0.3, 3), Point{0.0, 0.0, 0.4}, 0.7) ==
        doctest::Approx(0.10926584833962655517).epsilon(1e-13));
}

TEST_CASE("box_measure dominates the grid measure of the ball it contains") {
  const WeinsteinParams p(1.0, 2);
  const auto grid = HalfSpaceGrid::cube(p, 4.0, 256);
  for (const Point& z : {Point{0.0, 0.3}, Point{1.0, 1.5}, Point{-0.5, 0.05}}) {
    const double eps = 0.8;
    const RealField chi = RealField::sample(grid, [&](const Point& y) { return distance2(y, z) <= eps * eps ? 1.0 : 0.0; });
    CHECK(integrate(*grid, chi) <= box_measure(p, z, eps));
  }
}

TEST_CASE("grid weights integrate x_d powers exactly per cell") {
  const WeinsteinParams p(1.0, 2);
  const auto grid = HalfSpaceGrid::cube(p, 2.0, 16);
  // f = 1: total measure of the box
  const RealField one = RealField::sample(grid, [](const Point&) { return 1.0; });
  const double exact = p.density_constant() * 4.0 * std::pow(2.0, 4) / 4.0;
  CHECK(integrate(*grid, one) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("integration of radial functions converges to radial_integrate") {
  const WeinsteinParams p(1.0, 2);
  const double sigma = 0.5;
  auto gauss = [&](double r) { return std::exp(-r * r / (2 * sigma * sigma)); };
  const RadialProfile profile(gauss, 12 * sigma, {}, true);
  // Closed form: the Gaussian has mass sigma^(2alpha+d+1).
  const double exact = std::pow(sigma, 5);
  CHECK(radial_integrate(p, profile) == doctest::Approx(exact).epsilon(1e-12));
  double previous = 1.0;
  for (int n : {32, 64, 128}) {
    const auto grid = HalfSpaceGrid::cube(p, 4.0, n);
    const RealField f = RealField::sample(grid, [&](const Point& x) { return gauss(x.norm()); });
    const double err = std::fabs(integrate(*grid, f) - exact);
    CHECK(err < previous / 2.0);
    previous = err;
  }
}

TEST_CASE("truncated profiles with heavy tails are rejected") {
  const WeinsteinParams p(1.0, 2);
  const RadialProfile slow([](double r) { return 1.0 / (1.0 + r * r); }, 10.0, {}, true);
  CHECK_THROWS_AS(radial_integrate(p, slow), std::runtime_error);
}

TEST_CASE("integrate is monotone for nonnegative integrands") {
  const WeinsteinParams p(0.5, 2);
  const auto grid = HalfSpaceGrid::cube(p, 2.0, 32);
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(grid->size());
    std::vector<double> b(grid->size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = u(g);
      b[i] = a[i] + u(g);
    }
    CHECK(integrate(*grid, RealField(grid, a)) <= integrate(*grid, RealField(grid, b)));
  }
}

TEST_CASE("lp norms") {
  const WeinsteinParams p(1.0, 2);
  const auto grid = HalfSpaceGrid::cube(p, 1.0, 8);
  const RealField f = RealField::sample(grid, [](const Point& x) { return x[0] - 0.1; });
  CHECK(lp_norm(*grid, f, kInfinityNorm) == doctest::Approx(0.875 + 0.1));
  CHECK_THROWS_AS(lp_norm(*grid, f, 0.5), std::domain_error);
  std::vector<unsigned char> none(grid->size(), 0);
  CHECK(lp_norm(*grid, f, 2.0, none) == 0.0);
}

TEST_CASE("grid layout") {
  const WeinsteinParams p(1.0, 3);
  const HalfSpaceGrid grid(p, {1.0, 2.0}, 3.0, {4, 6, 5});
  CHECK(grid.size() == 120);
  CHECK(grid.lateral_size() == 24);
  const std::size_t k = grid.flat(grid.lateral_flat(std::array<int, 2>{2, 3}), 4);
  const Point x = grid.node(k);
  CHECK(x[0] == doctest::Approx(0.25));
  CHECK(x[1] == doctest::Approx(grid.coordinate(1, 3)));
  CHECK(x.last() == doctest::Approx(2.7));
  CHECK(grid.depth_of(k) == 4);
  CHECK(grid.lateral_flat(std::array<int, 2>{4, 0}) == HalfSpaceGrid::npos);
  CHECK(grid.contains(Point{0.9, -1.9, 0.01}));
  CHECK_FALSE(grid.contains(Point{0.0, 0.0, 3.5}));
  CHECK_THROWS_AS(HalfSpaceGrid(p, {1.0}, 1.0, {4, 4}), std::invalid_argument);
}

TEST_CASE("grid functions reject bad values") {
  const auto grid = HalfSpaceGrid::cube(WeinsteinParams(1.0, 2), 1.0, 4);
  CHECK_THROWS_AS(RealField(grid, std::vector<double>(3)), std::invalid_argument);
  std::vector<double> v(grid->size(), 0.0);
  v[5] = std::nan("");
  CHECK_THROWS_AS(RealField(grid, v), std::invalid_argument);
  const auto other = HalfSpaceGrid::cube(WeinsteinParams(1.0, 2), 1.0, 5);
  CHECK_THROWS_AS(RealField::zeros(grid) + RealField::zeros(other), std::invalid_argument);
}

TEST_CASE("Gauss-Jacobi rules integrate polynomials exactly") {
  // int_{-1}^{1} s^4 (1-s)^a (1+s)^a ds with a = 0.6, via the Beta function.
  const auto rule = gauss_jacobi(20, 0.6, 0.6);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * std::pow(rule.nodes[k], 4);
  CHECK(s == doctest::Approx(0.174350769908927).epsilon(1e-13));
  for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.8, 0.5}, {2.0, -0.3}}) {
    const auto r = gauss_jacobi(12, a, b);
    double total = 0.0;
    for (double w : r.weights) total += w;
    const double mu0 = std::exp((a + b + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
    CHECK(total == doctest::Approx(mu0).epsilon(1e-13));
    CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
  }
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), std::domain_error);
}

TEST_CASE("theta rules are probability weights with the right moments") {
  for (double alpha : {-0.4, 0.0, 0.3, 1.0, 2.5}) {
    const auto rule = theta_rule(alpha, 32);
    double total = 0.0;
    double cos2 = 0.0;
    for (std::size_t k = 0; k < rule->weights.size(); ++k) {
      total += rule->weights[k];
      cos2 += rule->weights[k] * rule->cos_theta[k] * rule->cos_theta[k];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    // E[cos^2 theta] under sin^(2alpha) theta is 1 / (2alpha + 2).
    CHECK(cos2 == doctest::Approx(1.0 / (2 * alpha + 2)).epsilon(1e-12));
  }
  CHECK(theta_rule(1.0, 32) == theta_rule(1.0, 32));
}
