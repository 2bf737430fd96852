#pragma once

#include <complex>
#include <span>
#include <vector>

#include "weinstein/halfspace.hpp"

namespace weinstein {

/// Frequency grid; same layout as HalfSpaceGrid, nodes read as lambda.
using SpectralGrid = HalfSpaceGrid;
using SpectralPtr = GridPtr;

/// Psi_lambda(x) = exp(-i <x', lambda'>) j_alpha(x_d lambda_d).
std::complex<double> weinstein_kernel(const WeinsteinParams& params, const Point& lambda, const Point& x);

/// Weighted quadrature of int f Psi_lambda dnu at every spectral node.
///
/// Separable: lateral exponential sums axis by axis, then a weighted Bessel
/// sum in x_d. Cost O(N_x * n_lambda_lat + n_lambda_lat * n_lambda_d * n_xd)
/// for d = 2.
template <class T>
ComplexField forward_transform(const GridFunction<T>& f, const SpectralPtr& spectral);

/// Inverse transform: int F(lambda) Psi_lambda(-x', x_d) dnu(lambda) at every node of grid.
ComplexField inverse_transform(const ComplexField& spectrum, const GridPtr& grid);

/// Forward transform at arbitrary frequencies, one separable sum per point.
template <class T>
std::vector<std::complex<double>> forward_transform_at(const GridFunction<T>& f, std::span<const Point> lambdas);

/// Reference double loop: sum_y f(y) Psi_lambda(y) w(y), kernel evaluated per node.
template <class T>
std::complex<double> forward_transform_direct(const GridFunction<T>& f, const Point& lambda);

/// Fourier-Bessel transform of order alpha + (d-1)/2 of a radial profile at |lambda|.
/// Oscillatory integrand is split into panels of length <= pi/|lambda|.
double radial_transform(const WeinsteinParams& params, const RadialProfile& profile, double lambda_mag,
                        double tolerance = 1e-12);

/// Closed-form transform of the ball indicator chi_{B+(0,eps)} at lambda.
double ball_indicator_transform(const WeinsteinParams& params, double eps, const Point& lambda);

template <class T>
struct LaplaceBesselResult {
  GridFunction<T> values;
  /// 1 on interior nodes where the stencil is valid, 0 on the boundary ring.
  std::vector<unsigned char> interior;
};

/// Central second differences on every axis plus the drift (2alpha+1)/x_d d/dx_d.
/// Requires at least 3 nodes per axis. Boundary ring values are zero.
template <class T>
LaplaceBesselResult<T> apply_laplace_bessel(const GridFunction<T>& f);

struct PlancherelResult {
  double spatial_norm2;   ///< ||f||_2^2
  double spectral_norm2;  ///< ||F_W f||_2^2 on the spectral grid
  double gap;             ///< |spectral - spatial| / spatial, 0 when both vanish
};

PlancherelResult plancherel_check(const RealField& f, const SpectralPtr& spectral);

}  // namespace weinstein
