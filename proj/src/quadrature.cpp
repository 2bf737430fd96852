#include "weinstein/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "weinstein/special_fn.hpp"

namespace weinstein {

namespace {

struct JacobiValue {
  double p;      // P_n(x)
  double dp;     // P_n'(x)
};

JacobiValue jacobi_eval(int n, double a, double b, double x) {
  double prev = 1.0;
  double cur = 0.5 * ((a + b + 2.0) * x + (a - b));
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double next = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * cur -
                         2.0 * (k + a - 1.0) * (k + b - 1.0) * s * prev) /
                        (2.0 * k * (k + a + b) * (s - 2.0));
    prev = cur;
    cur = next;
  }
  const double s = 2.0 * n + a + b;
  const double dp = (n * ((a - b) - s * x) * cur + 2.0 * (n + a) * (n + b) * prev) / (s * (1.0 - x * x));
  return {cur, dp};
}

}  // namespace

GaussJacobiRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be positive");
  if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("gauss_jacobi: exponents must exceed -1");

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double beta2 = k == 1 ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b))
                                : 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(beta2);
  }

  GaussJacobiRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  if (n == 1) {
    rule.nodes[0] = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigenvalue iteration failed");
    for (int k = 0; k < n; ++k) rule.nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
  }

  std::vector<double> raw(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double& x = rule.nodes[static_cast<std::size_t>(k)];
    for (int it = 0; it < 3; ++it) {
      const JacobiValue v = jacobi_eval(n, a, b, x);
      const double next = x - v.p / v.dp;
      if (next > -1.0 && next < 1.0) x = next;
    }
  }
  std::sort(rule.nodes.begin(), rule.nodes.end());
  for (int k = 0; k < n; ++k) {
    const double x = rule.nodes[static_cast<std::size_t>(k)];
    const JacobiValue v = jacobi_eval(n, a, b, x);
    raw[static_cast<std::size_t>(k)] = 1.0 / ((1.0 - x * x) * v.dp * v.dp);
  }

  const double log_mu0 = (a + b + 1.0) * std::numbers::ln2 + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
                         log_gamma(a + b + 2.0);
  double raw_sum = 0.0;
  for (double w : raw) raw_sum += w;
  const double scale = std::exp(log_mu0) / raw_sum;
  rule.weights.resize(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) rule.weights[k] = raw[k] * scale;
  return rule;
}

namespace {

std::shared_ptr<const ThetaRule> build_theta_rule(double alpha, int n) {
  const double two_alpha = 2.0 * alpha;
  const GaussJacobiRule gj = gauss_jacobi(n, two_alpha, two_alpha);
  const double pi = std::numbers::pi;
  const double log_c = log_gamma(alpha + 1.0) - 0.5 * std::log(pi) - log_gamma(alpha + 0.5);
  const double scale = std::exp(log_c + (2.0 * two_alpha + 1.0) * std::log(0.5 * pi));

  auto rule = std::make_shared<ThetaRule>();
  rule->cos_theta.resize(gj.nodes.size());
  rule->sin2_half.resize(gj.nodes.size());
  rule->weights.resize(gj.nodes.size());
  for (std::size_t k = 0; k < gj.nodes.size(); ++k) {
    const double s = gj.nodes[k];
    const double theta = 0.5 * pi * (1.0 + s);
    const double r = std::sin(theta) / (theta * (pi - theta));
    const double half = std::sin(0.5 * theta);
    rule->cos_theta[k] = -std::sin(0.5 * pi * s);
    rule->sin2_half[k] = half * half;
    rule->weights[k] = scale * gj.weights[k] * std::pow(r, two_alpha);
  }
  return rule;
}

}  // namespace

std::shared_ptr<const ThetaRule> theta_rule(double alpha, int n) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::shared_ptr<const ThetaRule>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{alpha, n}];
  if (!slot) slot = build_theta_rule(alpha, n);
  return slot;
}

}  // namespace weinstein
