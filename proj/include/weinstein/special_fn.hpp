#pragma once

// Bessel functions of the first kind, the normalized Bessel function
// j_nu(z) = 2^nu Gamma(nu+1) J_nu(z) / z^nu, and log-Gamma.
//
// Real, non-negative arguments only. Orders must exceed -1/2.

namespace weinstein {

/// Order of a Bessel function; always strictly greater than -1/2.
class BesselOrder {
 public:
  explicit BesselOrder(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// J_nu(z) for z >= 0.
///
/// Ascending series (extended precision) below the switchover, Hankel's
/// large-argument expansion above it. For orders >= 2 the expansion is
/// evaluated at the fractional order and carried up by forward recurrence,
/// which is stable while the order stays below z.
/// Accuracy target: 1e-12 relative to max(|J|, sqrt(2/(pi z))) for z <= 1e4
/// and orders up to ~20.
double bessel_j(BesselOrder order, double z);

/// j_nu(|z|). Equals 1 at z = 0 and is even in z.
double normalized_bessel(BesselOrder order, double z);

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

namespace detail {

// Argument at which bessel_j leaves the ascending series for orders below it.
inline constexpr double kBesselSeriesLimit = 20.0;

// Both evaluation paths, exposed so the switchover can be tested.
double bessel_j_series(double nu, double z);
double bessel_j_asymptotic(double nu, double z);

}  // namespace detail

}  // namespace weinstein
