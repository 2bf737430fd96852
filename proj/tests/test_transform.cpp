#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "weinstein/corpus.hpp"
#include "weinstein/transform.hpp"

using namespace weinstein;

namespace {

Point random_point(std::mt19937_64& g, int d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point p(d);
  for (int i = 0; i < d; ++i) p[i] = u(g);
  p.last() = std::fabs(p.last());
  return p;
}

}  // namespace

TEST_CASE("kernel symmetry, reflection and modulus") {
  std::mt19937_64 g(5);
  for (auto [a, d] : {std::pair{1.0, 2}, {0.3, 3}, {-0.4, 2}}) {
    const WeinsteinParams p(a, d);
    for (int i = 0; i < 200; ++i) {
      const Point lambda = random_point(g, d, 8.0);
      const Point x = random_point(g, d, 8.0);
      const auto v = weinstein_kernel(p, lambda, x);
      CHECK(std::abs(v - weinstein_kernel(p, x, lambda)) <= 1e-15);
      CHECK(std::abs(v) <= 1.0 + 1e-12);
      Point reflected = x;
      for (int k = 0; k + 1 < d; ++k) reflected[k] = -x[k];
      CHECK(std::abs(weinstein_kernel(p, lambda, reflected) - std::conj(v)) <= 1e-15);
    }
    CHECK(weinstein_kernel(p, Point(d), random_point(g, d, 3.0)) == std::complex<double>(1.0, 0.0));
  }
}

TEST_CASE("Gaussian transform on a grid approaches the closed form") {
  const WeinsteinParams p(1.0, 2);
  const CorpusFunction gauss = gaussian_member(p, 0.5);
  // 30-digit quadrature of the transform integral.
  CHECK(gauss.transform(Point{0.7, 1.3}) == doctest::Approx(0.023796044661725164869).epsilon(1e-14));
  const auto grid = HalfSpaceGrid::cube(p, 4.0, 128);
  const RealField f = RealField::sample(grid, gauss.eval);
  const std::vector<Point> lambdas{Point{0.0, 0.0}, Point{0.7, 1.3}, Point{-2.0, 0.5}, Point{1.5, 3.0}};
  const auto values = forward_transform_at(f, std::span<const Point>(lambdas));
  const double scale = gauss.transform(Point{0.0, 0.0});
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    CHECK(std::abs(values[k] - gauss.transform(lambdas[k])) <= 1e-3 * scale);
    CHECK(std::abs(values[k] - forward_transform_direct(f, lambdas[k])) <= 1e-12 * scale);
  }
}

TEST_CASE("spectral-grid transform agrees with pointwise transform") {
  const WeinsteinParams p(0.5, 2);
  const auto grid = HalfSpaceGrid::cube(p, 3.0, 32);
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(grid->size());
  for (double& x : v) x = u(g);
  const RealField f(grid, v);
  const auto spectral = HalfSpaceGrid::cube(p, 6.0, 12);
  const ComplexField F = forward_transform(f, spectral);
  for (std::size_t k = 0; k < spectral->size(); k += 7) {
    CHECK(std::abs(F[k] - forward_transform_direct(f, spectral->node(k))) <= 1e-11);
  }
  CHECK_THROWS_AS(forward_transform(f, HalfSpaceGrid::cube(WeinsteinParams(0.5, 3), 6.0, 8)), std::invalid_argument);
}

TEST_CASE("radial transform of the Gaussian") {
  for (auto [a, d] : {std::pair{1.0, 2}, {0.3, 3}, {-0.4, 2}}) {
    const WeinsteinParams p(a, d);
    const CorpusFunction gauss = gaussian_member(p, 0.7);
    for (double r : {0.0, 0.5, 2.0, 5.5}) {
      Point lambda(d);
      lambda.last() = r;
      CHECK(radial_transform(p, *gauss.profile, r) == doctest::Approx(gauss.transform(lambda)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(radial_transform(WeinsteinParams(1.0, 2), RadialProfile(bump_profile, 1.0), -1.0), std::domain_error);
}

TEST_CASE("ball indicator transform") {
  const WeinsteinParams p(1.0, 2);
  CHECK(ball_indicator_transform(p, 1.0, Point{0.0, 0.0}) == doctest::Approx(ball_measure(p, 1.0)).epsilon(1e-14));
  // 30-digit quadrature of the indicator against the kernel.
  CHECK(ball_indicator_transform(p, 1.0, Point{1.8, 2.4}) == doctest::Approx(0.026475360910393183777).epsilon(1e-12));
  const RadialProfile chi([](double) { return 1.0; }, 0.8);
  for (double r : {0.3, 4.0, 11.0}) {
    CHECK(ball_indicator_transform(p, 0.8, Point{0.0, r}) == doctest::Approx(radial_transform(p, chi, r)).epsilon(1e-10));
  }
}

TEST_CASE("Laplace-Bessel operator is exact on quadratics") {
  for (auto [a, d] : {std::pair{1.0, 2}, {0.3, 3}}) {
    const WeinsteinParams p(a, d);
    const auto grid = HalfSpaceGrid::cube(p, 1.0, 10);
    const RealField f = RealField::sample(grid, [](const Point& x) { return x.norm2(); });
    const auto lb = apply_laplace_bessel(f);
    const double expected = 2.0 * d + 4.0 * a + 2.0;
    int interior = 0;
    for (std::size_t k = 0; k < grid->size(); ++k) {
      if (lb.interior[k]) {
        ++interior;
        CHECK(lb.values[k] == doctest::Approx(expected).epsilon(1e-10));
      } else {
        CHECK(lb.values[k] == 0.0);
      }
    }
    CHECK(interior > 0);
  }
  const auto thin = std::make_shared<const HalfSpaceGrid>(WeinsteinParams(1.0, 2), std::vector<double>{1.0}, 1.0,
                                                          std::vector<int>{2, 8});
  CHECK_THROWS_AS(apply_laplace_bessel(RealField::zeros(thin)), std::invalid_argument);
}

TEST_CASE("Plancherel on a Gaussian") {
  const WeinsteinParams p(1.0, 2);
  const CorpusFunction gauss = gaussian_member(p, 0.5);
  // ||f||_2^2 = ||F f||_2^2 = (sigma / sqrt(2))^(2alpha+d+1) for this Gaussian.
  const double exact = std::pow(0.5 / std::sqrt(2.0), 5);
  double previous = 1.0;
  for (int n : {32, 64, 128}) {
    const auto grid = HalfSpaceGrid::cube(p, 4.0, n);
    const auto spectral = HalfSpaceGrid::cube(p, 12.0, n);
    const PlancherelResult r = plancherel_check(RealField::sample(grid, gauss.eval), spectral);
    CHECK(r.spatial_norm2 == doctest::Approx(exact).epsilon(0.05));
    CHECK(r.gap < previous / 2.0);
    previous = r.gap;
  }
  const auto grid = HalfSpaceGrid::cube(p, 4.0, 32);
  CHECK(plancherel_check(RealField::zeros(grid), HalfSpaceGrid::cube(p, 12.0, 32)).gap == 0.0);
}

TEST_CASE("inverse transform recovers a Gaussian") {
  const WeinsteinParams p(1.0, 2);
  const CorpusFunction gauss = gaussian_member(p, 0.5);
  const auto grid = HalfSpaceGrid::cube(p, 2.0, 16);
  const auto spectral = HalfSpaceGrid::cube(p, 12.0, 128);
  const ComplexField F = ComplexField::sample(spectral, [&](const Point& l) { return gauss.transform(l); });
  const ComplexField back = inverse_transform(F, grid);
  for (std::size_t k = 0; k < grid->size(); ++k) {
    CHECK(std::abs(back[k] - gauss.eval(grid->node(k))) <= 1e-3);
  }
}
