#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "weinstein/special_fn.hpp"

using namespace weinstein;

namespace {

// 30-digit reference values of J_nu(z).
struct BesselCase {
  double nu;
  double z;
  double value;
};

constexpr BesselCase kBessel[] = {
    {0.0, 0.5, 0.93846980724081290423},    {0.5, 3.0, 0.065008182877375778114},
    {1.0, 1.0, 0.44005058574493351596},    {1.0, 19.5, -0.02087707014809752225},
    {1.0, 20.5, 0.13625468819339573661},   {1.5, 50.0, -0.10947687298831803539},
    {2.5, 7.25, -0.29961810568713080816},  {3.0, 150.0, 0.065142643342881793899},
    {-0.4, 2.0, -0.13978418644951944428},  {0.1, 1000.0, 0.025219249181648209649},
    {5.5, 30.0, -0.089606490265068614412},
};

double scale(double z, double value) { return std::max(std::fabs(value), std::sqrt(2.0 / (M_PI * std::max(z, 1.0)))); }

}  // namespace

TEST_CASE("bessel_j matches high-precision values") {
  for (const auto& c : kBessel) {
    CAPTURE(c.nu);
    CAPTURE(c.z);
    CHECK(std::fabs(bessel_j(BesselOrder(c.nu), c.z) - c.value) <= 1e-12 * scale(c.z, c.value));
  }
}

TEST_CASE("normalized_bessel values") {
  CHECK(normalized_bessel(BesselOrder(1.0), 2.0) == doctest::Approx(0.5767248077568733872).epsilon(1e-13));
  CHECK(normalized_bessel(BesselOrder(2.5), 10.0) == doctest::Approx(0.011691329044284367619).epsilon(1e-11));
  CHECK(normalized_bessel(BesselOrder(0.0), 0.0) == 1.0);
  CHECK(normalized_bessel(BesselOrder(3.7), 0.0) == 1.0);
}

TEST_CASE("normalized_bessel is even and bounded by one") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> order(-0.49, 6.0);
  std::uniform_real_distribution<double> arg(0.0, 1000.0);
  for (int i = 0; i < 2000; ++i) {
    const BesselOrder nu(order(g));
    const double z = arg(g);
    const double v = normalized_bessel(nu, z);
    CHECK(v == normalized_bessel(nu, -z));
    CHECK(std::fabs(v) <= 1.0 + 1e-12);
  }
}

TEST_CASE("series and asymptotic paths agree across the switchover") {
  for (double nu : {-0.4, 0.0, 0.5, 1.0, 1.5}) {
    for (double z = detail::kBesselSeriesLimit - 2.0; z <= detail::kBesselSeriesLimit + 2.0; z += 0.25) {
      const double a = detail::bessel_j_series(nu, z);
      const double b = detail::bessel_j_asymptotic(nu, z);
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(std::fabs(a - b) <= 1e-10 * scale(z, a));
    }
  }
}

TEST_CASE("decay envelope of j_nu is stable under refinement") {
  // sup over z in [1, 1000] of |j_nu(z)| z^(nu + 1/2)
  for (double nu : {0.0, 1.0, 2.5}) {
    auto sup = [&](int n) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double z = std::pow(1000.0, double(i) / (n - 1));
        s = std::max(s, std::fabs(normalized_bessel(BesselOrder(nu), z)) * std::pow(z, nu + 0.5));
      }
      return s;
    };
    const double coarse = sup(20000);
    const double fine = sup(40000);
    CHECK(std::isfinite(fine));
    CHECK(std::fabs(fine - coarse) / fine < 1e-3);
  }
}

TEST_CASE("log_gamma") {
  constexpr double cases[][2] = {{0.1, 2.252712651734205902},    {0.5, 0.57236494292470008707},
                                 {1.5, -0.12078223763524522235}, {2.6, 0.35741186354897983677},
                                 {10.0, 12.801827480081469611},  {123.4, 469.33609744219058579}};
  for (const auto& c : cases) CHECK(log_gamma(c[0]) == doctest::Approx(c[1]).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("invalid orders and arguments") {
  CHECK_THROWS(BesselOrder(-0.5));
  CHECK_THROWS(BesselOrder(-1.0));
  CHECK_THROWS(BesselOrder(std::nan("")));
  CHECK_THROWS(bessel_j(BesselOrder(1.0), -1.0));
}
