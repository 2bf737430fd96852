#include "weinstein/special_fn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weinstein {

namespace {

// lgamma writes the global signgam; the _r variants are reentrant.
long double log_gamma_ext(long double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgammal_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void require_finite_nonnegative(double z) {
  if (!std::isfinite(z)) throw std::domain_error("bessel: non-finite argument");
  if (z < 0.0) throw std::domain_error("bessel: negative argument");
}

// sum_k (-z^2/4)^k Gamma(nu+1) / (k! Gamma(nu+k+1)), i.e. j_nu(z).
long double normalized_series(long double nu, long double z) {
  const long double q = -0.25L * z * z;
  long double term = 1.0L;
  long double sum = 1.0L;
  long double largest = 1.0L;
  for (int k = 1; k < 1000; ++k) {
    const long double ratio = q / (static_cast<long double>(k) * (nu + k));
    term *= ratio;
    sum += term;
    const long double mag = std::fabs(term);
    if (mag > largest) largest = mag;
    if (std::fabs(ratio) < 0.5L && mag < 1e-22L * largest) break;
  }
  return sum;
}

struct HankelPQ {
  double p;
  double q;
};

// Hankel's P and Q series, truncated at the smallest term.
HankelPQ hankel_pq(double nu, double z) {
  const long double mu = 4.0L * nu * nu;
  const long double inv8z = 1.0L / (8.0L * z);
  long double p = 1.0L;
  long double q = 0.0L;
  long double term = 1.0L;
  long double previous = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    const long double next = term * (mu - odd * odd) * inv8z / k;
    if (std::fabs(next) > std::fabs(previous) && k > 2) break;
    term = next;
    previous = next;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (std::fabs(term) < 1e-20L) break;
  }
  return {static_cast<double>(p), static_cast<double>(q)};
}

// J_nu(z) ~ sqrt(2/(pi z)) (P cos chi - Q sin chi), chi = z - (nu/2 + 1/4) pi.
// cos(chi) is expanded so the large argument z is reduced by libm alone.
double hankel_asymptotic(double nu, double z, double cos_z, double sin_z) {
  const double phase = (0.5 * nu + 0.25) * std::numbers::pi;
  const double cos_phase = std::cos(phase);
  const double sin_phase = std::sin(phase);
  const double cos_chi = cos_z * cos_phase + sin_z * sin_phase;
  const double sin_chi = sin_z * cos_phase - cos_z * sin_phase;
  const HankelPQ pq = hankel_pq(nu, z);
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (pq.p * cos_chi - pq.q * sin_chi);
}

bool use_series(double nu, double z) {
  return z < detail::kBesselSeriesLimit || z <= nu;
}

}  // namespace

BesselOrder::BesselOrder(double value) : value_(value) {
  if (!std::isfinite(value) || value <= -0.5) {
    throw std::domain_error("Bessel order must be finite and > -1/2");
  }
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("log_gamma: argument must be finite and positive");
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

namespace detail {

double bessel_j_series(double nu, double z) {
  if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const long double lnu = nu;
  const long double lz = z;
  const long double log_prefix = lnu * std::log(0.5L * lz) - log_gamma_ext(lnu + 1.0L);
  return static_cast<double>(std::exp(log_prefix) * normalized_series(lnu, lz));
}

double bessel_j_asymptotic(double nu, double z) {
  const double cos_z = std::cos(z);
  const double sin_z = std::sin(z);
  if (nu < 2.0) return hankel_asymptotic(nu, z, cos_z, sin_z);
  // Expansion at the fractional order, then upward recurrence
  // J_{m+1} = (2m/z) J_m - J_{m-1}.
  const double whole = std::floor(nu);
  const double base = nu - whole;
  double previous = hankel_asymptotic(base, z, cos_z, sin_z);
  double current = hankel_asymptotic(base + 1.0, z, cos_z, sin_z);
  const int steps = static_cast<int>(whole) - 1;
  for (int m = 1; m <= steps; ++m) {
    const double order = base + m;
    const double next = (2.0 * order / z) * current - previous;
    previous = current;
    current = next;
  }
  return current;
}

}  // namespace detail

double bessel_j(BesselOrder order, double z) {
  require_finite_nonnegative(z);
  const double nu = order.value();
  if (z == 0.0) {
    if (nu < 0.0) throw std::domain_error("bessel_j: J_nu(0) is unbounded for nu < 0");
    return nu == 0.0 ? 1.0 : 0.0;
  }
  if (use_series(nu, z)) return detail::bessel_j_series(nu, z);
  return detail::bessel_j_asymptotic(nu, z);
}

double normalized_bessel(BesselOrder order, double z) {
  if (!std::isfinite(z)) throw std::domain_error("normalized_bessel: non-finite argument");
  const double x = std::fabs(z);
  const double nu = order.value();
  if (x == 0.0) return 1.0;
  if (use_series(nu, x)) {
    return static_cast<double>(normalized_series(nu, x));
  }
  const double log_scale = nu * std::numbers::ln2 + log_gamma(nu + 1.0) - nu * std::log(x);
  return std::exp(log_scale) * detail::bessel_j_asymptotic(nu, x);
}

}  // namespace weinstein
