#pragma once

#include <memory>
#include <vector>

namespace weinstein {

/// n-point Gauss-Jacobi rule for int_{-1}^{1} g(s) (1-s)^a (1+s)^b ds.
struct GaussJacobiRule {
  std::vector<double> nodes;    ///< ascending, in (-1, 1)
  std::vector<double> weights;  ///< positive, sum = 2^(a+b+1) B(a+1, b+1)
};

/// Nodes are eigenvalues of the Jacobi matrix, polished by Newton on the
/// three-term recurrence; weights from the derivative formula, scaled to the
/// exact zeroth moment. Requires a, b > -1 and n >= 1.
GaussJacobiRule gauss_jacobi(int n, double a, double b);

/// Rule for c_alpha int_0^pi g(theta) sin^(2alpha) theta dtheta, where
/// c_alpha = Gamma(alpha+1) / (sqrt(pi) Gamma(alpha+1/2)) makes the weights
/// sum to 1.
///
/// Built from Gauss-Jacobi with a = b = 2alpha in s, theta = pi (1+s)/2; the
/// remaining factor (sin theta / (theta (pi - theta)))^(2alpha) is smooth.
struct ThetaRule {
  std::vector<double> cos_theta;
  std::vector<double> sin2_half;  ///< sin^2(theta/2)
  std::vector<double> weights;
};

/// Cached per (alpha, n); safe to call concurrently.
std::shared_ptr<const ThetaRule> theta_rule(double alpha, int n);

}  // namespace weinstein
