#pragma once

#include <optional>
#include <span>
#include <vector>

#include "weinstein/halfspace.hpp"

namespace weinstein {

/// Radii for the discretized supremum, strictly decreasing, and the cap on
/// centers z sampled per ball.
struct RadiusSchedule {
  std::vector<double> radii;
  int z_samples_per_ball = 64;

  /// count radii log-spaced from r_max down to r_min.
  static RadiusSchedule log_spaced(double r_min, double r_max, int count, int z_samples_per_ball);

  /// Throws std::invalid_argument unless radii are positive, finite and
  /// strictly decreasing and z_samples_per_ball >= 1.
  void validate() const;
  double largest() const { return radii.front(); }
};

/// Lattice offsets (in node units, axis order as the grid) of the centers z
/// sampled in B+(x, eps): the zero offset first, then farthest-point order
/// over all lattice offsets within distance eps, truncated to `cap`.
/// Prefixes are nested: a larger cap extends a smaller one.
std::vector<std::array<int, kMaxDim>> center_offsets(const HalfSpaceGrid& grid, double eps, int cap);

/// M_alpha f at a grid node x:
/// max over eps and sampled z of |sum_y f(y) T(z, eps, y) w(y)| / sum_y T(z, eps, y) w(y),
/// T = ball_translate. The denominator is the discrete mass of the translated
/// indicator, so the value never exceeds max |f|. Direct O(N) per (eps, z);
/// reference for maximal_fields. Throws std::domain_error unless x is a node.
double maximal_uncentered(const RealField& f, const Point& x, const RadiusSchedule& sched);

/// M~_alpha f at a grid node x: max over the same (eps, z) of the average of
/// |f| over the grid nodes in B+(z, eps), weighted by nu_alpha.
double maximal_ball_average(const RealField& f, const Point& x, const RadiusSchedule& sched);

struct MaximalResult {
  RealField uncentered;
  std::optional<RealField> ball_average;
};

/// M_alpha f (and optionally M~_alpha f) at every node, for several functions
/// on one grid sharing the translated-indicator tables. Parallel over x_d rows.
std::vector<MaximalResult> maximal_fields(std::span<const RealField> fs, const RadiusSchedule& sched,
                                          bool with_ball_average = true);

/// 1 where the node is at least `margin` inside the lateral faces and the top
/// face, 0 elsewhere.
std::vector<unsigned char> interior_mask(const HalfSpaceGrid& grid, double margin);

/// Discrete nu_alpha measure of {g > level}, optionally restricted to mask.
/// Throws std::domain_error if level <= 0.
double distribution_function(const RealField& g, double level, std::span<const unsigned char> mask = {});

/// max over levels of level * nu({Mf > level}) / ||f||_1, Mf restricted to mask.
/// Throws std::domain_error if ||f||_1 = 0 or a level is not positive.
double weak_type_constant(const RealField& f, const RealField& mf, std::span<const double> levels,
                          std::span<const unsigned char> mask = {});

/// ||Mf||_p (over mask) / ||f||_p. Throws std::domain_error if p <= 1 or ||f||_p = 0.
double lp_operator_ratio(const RealField& f, const RealField& mf, double p, std::span<const unsigned char> mask = {});

/// Indices of the balls kept by greedy selection: radius descending, ties by
/// lexicographic center, a ball kept iff disjoint from every ball kept so far.
/// Closed half-balls with centers in the closed half-space meet iff the
/// center distance is at most the sum of the radii.
std::vector<std::size_t> vitali_select(std::span<const BallSpec> family);

struct VitaliCheck {
  bool disjoint;  ///< selected balls pairwise disjoint
  bool covered;   ///< every ball inside the 5-fold dilate of a selected ball
  double worst_dilation;  ///< max over inputs of the smallest (|c - c_s| + r) / r_s
};

/// Analytic verification from centers and radii.
VitaliCheck vitali_verify(std::span<const BallSpec> family, std::span<const std::size_t> selected);

}  // namespace weinstein
