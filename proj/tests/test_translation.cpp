#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "weinstein/corpus.hpp"
#include "weinstein/transform.hpp"
#include "weinstein/translation.hpp"

using namespace weinstein;

TEST_CASE("theta constant") {
  CHECK(theta_constant(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(theta_constant(0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
  CHECK(theta_constant(1.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-15));
}

TEST_CASE("translation kernel has unit mass") {
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> u(std::log(1e-2), std::log(10.0));
  for (double a : {-0.4, 0.0, 0.3, 1.0, 2.5}) {
    const WeinsteinParams p(a, 2);
    for (int i = 0; i < 25; ++i) {
      const double xd = std::exp(u(g));
      const double yd = std::exp(u(g));
      CAPTURE(a);
      CAPTURE(xd);
      CAPTURE(yd);
      CHECK(kernel_normalization_theta(p, xd, yd) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(kernel_normalization_direct(p, xd, yd) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("translation weight support") {
  const WeinsteinParams p(1.0, 2);
  CHECK(translation_weight(p, 1.0, 0.5, 0.5) == 0.0);
  CHECK(translation_weight(p, 1.0, 0.5, 1.5) == 0.0);
  CHECK(translation_weight(p, 1.0, 0.5, 0.2) == 0.0);
  CHECK(translation_weight(p, 1.0, 0.5, 1.0) > 0.0);
  CHECK_THROWS_AS(translation_weight(p, 0.0, 0.5, 0.3), std::domain_error);
  CHECK_THROWS_AS(translation_weight(p, 1.0, -0.5, 0.3), std::domain_error);
}

TEST_CASE("product formula for the kernel") {
  std::mt19937_64 g(33);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (auto [a, d] : {std::pair{1.0, 2}, {0.3, 3}, {-0.4, 2}}) {
    const WeinsteinParams p(a, d);
    for (int i = 0; i < 20; ++i) {
      Point lambda(d);
      Point x(d);
      Point y(d);
      for (int k = 0; k < d; ++k) {
        lambda[k] = 2.0 * u(g);
        x[k] = u(g);
        y[k] = u(g);
      }
      x.last() = std::fabs(x.last());
      y.last() = std::fabs(y.last());
      auto psi = [&](const Point& z) { return weinstein_kernel(p, lambda, z); };
      const auto lhs = translate_point(p, psi, x, y);
      const auto rhs = psi(x) * psi(y);
      CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
  }
}

TEST_CASE("translate_point at the boundary and against the rho route") {
  const WeinsteinParams p(1.0, 2);
  const CorpusFunction gauss = gaussian_member(p, 0.6);
  const Point x{0.3, 0.8};
  const Point y{-0.2, 0.0};
  CHECK(translate_point(p, gauss.eval, x, y) == gauss.eval(Point{0.1, 0.8}));
  CHECK(translate_point(p, gauss.eval, Point{0.0, 0.0}, Point{0.4, 0.7}) == gauss.eval(Point{0.4, 0.7}));
  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(0.05, 1.5);
  for (int i = 0; i < 20; ++i) {
    const Point a{u(g) - 0.7, u(g)};
    const Point b{u(g) - 0.7, u(g)};
    CHECK(translate_point(p, gauss.eval, a, b) == doctest::Approx(translate_point_direct(p, gauss.eval, a, b)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(translate_point(p, gauss.eval, Point{0.0, -0.1}, y), std::domain_error);
  TranslationQuadrature bad;
  bad.theta_nodes = 4;
  CHECK_THROWS_AS(translate_point(p, gauss.eval, x, Point{0.0, 0.5}, bad), std::invalid_argument);
  bad = {};
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.max_nodes = 8;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("ball_translate against high-precision values") {
  // Reference: 30-digit quadrature of the translated indicator, endpoint
  // singularity removed by substitution.
  struct Case {
    double alpha, lateral2, eps, xd, yd, value;
  };
  constexpr Case cases[] = {
      {1.0, 0.0, 0.5, 2.0, 2.0, 0.0033001418742538570839},   {1.0, 0.01, 0.5, 2.0, 2.2, 0.0020494566670252985451},
      {0.3, 0.04, 1.0, 0.6, 0.9, 0.41521663308885097807},    {1.5, 0.0, 1.0, 0.3, 0.2, 1.0},
      {-0.4, 0.1, 0.8, 1.0, 0.7, 0.42854304430461960340},
  };
  for (const Case& c : cases) {
    const WeinsteinParams p(c.alpha, 2);
    CHECK(ball_translate_profile(p, c.lateral2, c.eps, c.xd, c.yd) == doctest::Approx(c.value).epsilon(1e-12));
  }
}

TEST_CASE("ball_translate agrees with translating the indicator numerically") {
  const WeinsteinParams p(1.0, 2);
  const double eps = 0.7;
  auto chi = [&](const Point& z) { return z.norm2() <= eps * eps ? 1.0 : 0.0; };
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int i = 0; i < 30; ++i) {
    const Point x{u(g) - 0.5, u(g)};
    const Point y{u(g) - 0.5, u(g)};
    const Point reflected{-y[0], y[1]};
    TranslationQuadrature fine;
    fine.theta_nodes = 1 << 14;
    fine.max_nodes = 1 << 14;
    CHECK(ball_translate(p, x, eps, y) == doctest::Approx(translate_point(p, chi, x, reflected, fine)).epsilon(2e-3));
  }
}

TEST_CASE("ball_translate support and range") {
  std::mt19937_64 g(44);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (auto [a, d] : {std::pair{1.0, 2}, {0.3, 3}}) {
    const WeinsteinParams p(a, d);
    for (int i = 0; i < 2000; ++i) {
      Point x(d);
      Point y(d);
      for (int k = 0; k < d; ++k) {
        x[k] = u(g);
        y[k] = u(g);
      }
      const double eps = 0.1 + u(g);
      const double t = ball_translate(p, x, eps, y);
      if (distance2(x, y) >= eps * eps) {
        CHECK(t == 0.0);
      } else {
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
      }
    }
  }
  const WeinsteinParams p(1.0, 2);
  CHECK_THROWS_AS(ball_translate(p, Point{0.0, 1.0}, 0.0, Point{0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(ball_translate(p, Point{0.0, -1.0}, 1.0, Point{0.0, 1.0}), std::domain_error);
}

TEST_CASE("translate_grid") {
  const WeinsteinParams p(1.0, 2);
  const auto grid = HalfSpaceGrid::cube(p, 3.0, 48);
  const CorpusFunction gauss = gaussian_member(p, 0.5);
  const RealField f = RealField::sample(grid, gauss.eval);
  const RealField t0 = translate_grid(f, Point(2));
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(t0[k] == f[k]);
  const Point x{0.4, 0.6};
  const RealField tf = translate_grid(f, x);
  for (std::size_t k = 0; k < f.size(); k += 97) {
    CHECK(std::fabs(tf[k] - translate_point(p, gauss.eval, x, grid->node(k))) <= 2e-3);
  }
  CHECK_THROWS_AS(translate_grid(f, Point{5.0, 0.5}), std::domain_error);
}

TEST_CASE("convolution is symmetric and preserves mass") {
  const WeinsteinParams p(1.0, 2);
  const auto grid = HalfSpaceGrid::cube(p, 3.0, 24);
  const CorpusFunction a = gaussian_member(p, 0.6);
  const CorpusFunction b = gaussian_member(p, 0.5);
  const RealField fa = RealField::sample(grid, a.eval);
  const RealField fb = RealField::sample(grid, b.eval);
  const RealField ab = convolve(fa, fb);
  const RealField ba = convolve(fb, fa);
  const RealField closed = convolve(a.eval, fb);
  double scale = 0.0;
  double asym = 0.0;
  double route = 0.0;
  for (std::size_t k = 0; k < ab.size(); ++k) {
    scale = std::max(scale, std::fabs(ab[k]));
    asym = std::max(asym, std::fabs(ab[k] - ba[k]));
    route = std::max(route, std::fabs(ab[k] - closed[k]));
  }
  CHECK(asym <= 2e-2 * scale);
  CHECK(route <= 2e-2 * scale);
  const double mass = integrate(*grid, ab);
  CHECK(mass == doctest::Approx(integrate(*grid, fa) * integrate(*grid, fb)).epsilon(2e-2));
}
