#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weinstein/halfspace.hpp"

namespace weinstein {

/// Invalid configuration: unreadable file, malformed value, unknown key or a
/// violated invariant. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Acceptance thresholds. Every value must be positive; slope_low < slope_high.
struct Tolerances {
  double ball_measure = 1e-3;            ///< relative quadrature error of nu(B+(0,1))
  double min_order = 1.0;                ///< least-squares convergence order
  double indicator_transform = 1e-3;     ///< error of F(chi) over F(chi)(0)
  double radial_transform = 1e-3;        ///< grid vs radial transform of the bump
  double separable_direct = 1e-10;       ///< separable vs direct transform sums
  double kernel_bound = 1e-12;           ///< slack in |Psi| <= 1 and ||Ff||_inf <= ||f||_1
  double transform_stability = 1e-2;     ///< sup change under sweep doubling, closed-form bounds
  double normalization_theta = 1e-10;
  double normalization_direct = 1e-6;
  double translation_routes = 1e-8;      ///< theta rule vs direct rho quadrature of tau_x f
  double contraction_slack = 1e-3;
  double product_identity = 1e-3;
  double young_slack = 1e-2;
  double convolution_transform = 1e-3;
  double mass_identity = 1e-3;
  double decay_stability = 0.05;
  double refinement_stability = 0.2;
  double domination_stability = 0.1;
  double plancherel = 1e-4;
  double slope_low = 1.8;
  double slope_high = 2.2;
  double eigen_residual = 1e-3;          ///< relative residual at the finest spacing
  double bump_mass = 1e-6;

  /// Name/value pairs in declaration order; names match the config keys.
  std::vector<std::pair<std::string, double*>> fields();
  std::vector<std::pair<std::string, double>> fields() const;
};

struct GridSpec {
  double extent = 4.0;  ///< box [-extent, extent]^(d-1) x (0, extent]
  int nodes = 512;      ///< finest nodes per axis; coarser levels are nodes/2, nodes/4
};

struct SpectralSpec {
  double extent = 12.0;
  int lateral_nodes = 0;  ///< 0: nodes / 2
  int depth_nodes = 0;    ///< 0: 2 * nodes
};

struct ScheduleSpec {
  double r_min = 0.125;
  double r_max = 2.0;
  int radii = 8;
  int z_samples = 64;
  int levels = 16;
  double level_low = 0.02;   ///< fractions of ||f||_inf
  double level_high = 0.9;
};

struct RunConfig {
  WeinsteinParams params{1.0, 2};
  GridSpec grid;
  SpectralSpec spectral;
  ScheduleSpec schedule;
  /// Corpus member names to include in grid checks; empty means all.
  std::vector<std::string> corpus;
  /// (d, alpha) cases for the translated-indicator decay sweeps.
  std::vector<std::pair<int, double>> decay_cases{{2, 1.0}, {2, 1.5}, {3, 1.5}};
  std::uint64_t seed = 20240917;
  std::filesystem::path out = "weinstein-report";
  Tolerances tolerances;

  /// Throws ConfigError on any violated invariant.
  void validate() const;

  int spectral_lateral() const { return spectral.lateral_nodes > 0 ? spectral.lateral_nodes : grid.nodes / 2; }
  int spectral_depth() const { return spectral.depth_nodes > 0 ? spectral.depth_nodes : 2 * grid.nodes; }
};

/// Reads an INI file with sections [params] (alpha, dim), [grid] (extent,
/// nodes), [spectral] (extent, lateral_nodes, depth_nodes), [maximal] (r_min,
/// r_max, radii, z_samples, levels, level_low, level_high), [corpus]
/// (members, comma separated), [run] (seed, out) and [tolerance] (any
/// Tolerances field). Unspecified keys keep their defaults. If [params] is
/// given, decay_cases becomes that single case. Throws ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Parses "a,b,c" into doubles. Throws ConfigError.
std::vector<double> parse_list(const std::string& text);

}  // namespace weinstein
