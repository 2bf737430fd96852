#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weinstein/halfspace.hpp"

namespace weinstein {

/// Closed-form test function on the half-space, even in x_d by construction.
struct CorpusFunction {
  std::string name;
  std::function<double(const Point&)> eval;
  bool nonnegative = true;
  /// Radius of a ball around 0 outside which the function vanishes, or the
  /// truncation radius for rapidly decaying members.
  double support_radius = 0.0;
  /// Present for radial members.
  std::optional<RadialProfile> profile;
  /// Weinstein transform in closed form, when known.
  std::function<double(const Point&)> transform;
};

/// exp(-1 / (1 - r^2)) for r < 1, else 0.
double bump_profile(double r);

/// Standard deviation of the Gaussian member: min(1, extent / 8), so the box
/// holds at least 8 standard deviations.
double corpus_gaussian_sigma(double extent);

/// exp(-|x|^2 / (2 sigma^2)) with its closed-form transform.
CorpusFunction gaussian_member(const WeinsteinParams& params, double sigma);

/// Members, in order: indicator of B+(0,1); Gaussian; unit-mass bump on
/// B+(0,1); seeded superposition of shifted bumps; signed difference of two
/// bumps. Geometry of the last two scales with min(1, extent / 4).
std::vector<CorpusFunction> build_corpus(const WeinsteinParams& params, double extent, std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw; identical
/// on every platform for a given engine state.
double unit_uniform(std::uint64_t bits);

}  // namespace weinstein
