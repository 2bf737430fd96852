#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

#include "weinstein/halfspace.hpp"
#include "weinstein/quadrature.hpp"

namespace weinstein {

/// Angular rule settings for the translation integral. Rules double from
/// theta_nodes until successive results differ by at most tolerance
/// (relative, floor 1) or max_nodes is reached.
struct TranslationQuadrature {
  int theta_nodes = 16;
  double tolerance = 1e-10;
  int max_nodes = 1024;

  /// Throws std::invalid_argument unless theta_nodes >= 8, tolerance > 0 and
  /// max_nodes >= theta_nodes.
  void validate() const;
};

/// W_alpha(x_d, y_d, rho); zero outside the open interval (|x_d - y_d|, x_d + y_d).
/// Throws std::domain_error unless x_d, y_d > 0.
double translation_weight(const WeinsteinParams& params, double xd, double yd, double rho);

/// int W rho^(2alpha+1) drho through rho(theta); tanh-sinh in theta on the
/// Jacobian-transformed integrand (the kernel itself is evaluated).
double kernel_normalization_theta(const WeinsteinParams& params, double xd, double yd, double tolerance = 1e-13);

/// Same integral by tanh-sinh quadrature directly in rho, which tolerates the
/// endpoint singularities of W.
double kernel_normalization_direct(const WeinsteinParams& params, double xd, double yd);

/// Gamma(alpha+1) / (sqrt(pi) Gamma(alpha+1/2)).
double theta_constant(double alpha);

/// tau_x f(y) for f even in x_d, evaluated at arbitrary points.
///
/// rho(theta)^2 = (x_d - y_d)^2 + 4 x_d y_d sin^2(theta/2) turns the kernel
/// measure into c_alpha sin^(2alpha) theta dtheta. If x_d or y_d is 0 the
/// kernel degenerates and the result is f(x' + y', max(x_d, y_d)).
template <class F>
auto translate_point(const WeinsteinParams& params, F&& f, const Point& x, const Point& y,
                     const TranslationQuadrature& quad = {}) {
  using R = std::decay_t<decltype(f(x))>;
  Point z(x.dim());
  for (int i = 0; i + 1 < x.dim(); ++i) z[i] = x[i] + y[i];
  const double xd = x.last();
  const double yd = y.last();
  if (xd < 0.0 || yd < 0.0) throw std::domain_error("translate_point: points must lie in the closed half-space");
  if (xd == 0.0 || yd == 0.0) {
    z.last() = std::max(xd, yd);
    return static_cast<R>(f(z));
  }
  quad.validate();
  const double diff2 = (xd - yd) * (xd - yd);
  const double cross = 4.0 * xd * yd;
  auto evaluate = [&](int n) {
    const auto rule = theta_rule(params.alpha(), n);
    R sum{};
    for (std::size_t k = 0; k < rule->weights.size(); ++k) {
      z.last() = std::sqrt(diff2 + cross * rule->sin2_half[k]);
      sum += rule->weights[k] * f(z);
    }
    return sum;
  };
  int n = quad.theta_nodes;
  R previous = evaluate(n);
  while (2 * n <= quad.max_nodes) {
    n *= 2;
    const R current = evaluate(n);
    const double scale = std::max(1.0, static_cast<double>(std::abs(current)));
    const bool done = std::abs(current - previous) <= quad.tolerance * scale;
    previous = current;
    if (done) break;
  }
  return previous;
}

/// tau_x f(y) by tanh-sinh quadrature of the defining rho integral; reference
/// route for translate_point.
double translate_point_direct(const WeinsteinParams& params, const std::function<double(const Point&)>& f,
                              const Point& x, const Point& y);

/// tau_x f at every node of f's grid.
///
/// Off-node values come from multilinear interpolation with even reflection
/// across x_d = 0 and zero outside the box. Interpolation positions within
/// 1e-9 of a node snap to it, so tau_0 f reproduces f exactly.
/// Throws std::domain_error if x lies outside the grid box.
RealField translate_grid(const RealField& f, const Point& x, const TranslationQuadrature& quad = {});

/// Weights K with sum_j K[j] f(node_j) = c_alpha int f(rho(theta)) sin^(2alpha) theta dtheta
/// for f interpolated linearly along the x_d nodes of grid. xd, yd > 0.
std::vector<double> depth_kernel(const HalfSpaceGrid& grid, double xd, double yd, const TranslationQuadrature& quad);

/// tau_x(chi_{B+(0,eps)})(-y', y_d), through the regularized incomplete beta
/// function: with s = eps^2 - |x' - y'|^2 the value is 0 for s <= (x_d-y_d)^2,
/// 1 for s >= (x_d+y_d)^2, and c_alpha int_0^theta* sin^(2alpha) otherwise.
double ball_translate(const WeinsteinParams& params, const Point& x, double eps, const Point& y);

/// ball_translate from |x' - y'|^2, eps, x_d and y_d.
double ball_translate_profile(const WeinsteinParams& params, double lateral_dist2, double eps, double xd, double yd);

/// (f *_alpha g)(x) = int tau_x f(-y', y_d) g(y) dnu(y) at every node of the grid.
/// f is interpolated off-node as in translate_grid. O(N^2).
RealField convolve(const RealField& f, const RealField& g, const TranslationQuadrature& quad = {});

/// Same, with f evaluated in closed form at the translation points.
RealField convolve(const std::function<double(const Point&)>& f, const RealField& g,
                   const TranslationQuadrature& quad = {});

}  // namespace weinstein
