#include "weinstein/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace weinstein {

namespace pt = boost::property_tree;

#define WEINSTEIN_TOLERANCE_FIELDS(X)                                                                   \
  X(ball_measure) X(min_order) X(indicator_transform) X(radial_transform) X(separable_direct)           \
  X(kernel_bound) X(transform_stability) X(normalization_theta) X(normalization_direct)                 \
  X(translation_routes) X(contraction_slack) X(product_identity) X(young_slack) X(convolution_transform) \
  X(mass_identity) X(decay_stability) X(refinement_stability) X(domination_stability) X(plancherel)      \
  X(slope_low) X(slope_high) X(eigen_residual) X(bump_mass)

std::vector<std::pair<std::string, double*>> Tolerances::fields() {
  std::vector<std::pair<std::string, double*>> out;
#define X(name) out.emplace_back(#name, &name);
  WEINSTEIN_TOLERANCE_FIELDS(X)
#undef X
  return out;
}

std::vector<std::pair<std::string, double>> Tolerances::fields() const {
  std::vector<std::pair<std::string, double>> out;
#define X(name) out.emplace_back(#name, name);
  WEINSTEIN_TOLERANCE_FIELDS(X)
#undef X
  return out;
}

void RunConfig::validate() const {
  if (!(params.alpha() > -0.5)) throw ConfigError("alpha must exceed -1/2");
  if (!(grid.extent > 0.0) || !std::isfinite(grid.extent)) throw ConfigError("grid extent must be positive");
  if (grid.nodes < 32 || grid.nodes % 4 != 0) throw ConfigError("grid nodes must be a multiple of 4, at least 32");
  if (!(spectral.extent > 0.0) || !std::isfinite(spectral.extent)) {
    throw ConfigError("spectral extent must be positive");
  }
  if (spectral.lateral_nodes < 0 || spectral.depth_nodes < 0) throw ConfigError("spectral node counts must be >= 0");
  if (!(schedule.r_min > 0.0) || !(schedule.r_max > schedule.r_min)) {
    throw ConfigError("maximal radii need 0 < r_min < r_max");
  }
  if (schedule.radii < 2 || schedule.z_samples < 1 || schedule.levels < 1) {
    throw ConfigError("maximal needs radii >= 2, z_samples >= 1, levels >= 1");
  }
  if (!(schedule.level_low > 0.0) || !(schedule.level_high >= schedule.level_low) || !(schedule.level_high < 1.0)) {
    throw ConfigError("levels need 0 < level_low <= level_high < 1");
  }
  for (const auto& [d, alpha] : decay_cases) {
    if (d < 2 || d > kMaxDim || !(alpha > -0.5)) throw ConfigError("invalid decay case");
  }
  for (const auto& [name, value] : tolerances.fields()) {
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("tolerance '" + name + "' must be positive");
  }
  if (!(tolerances.slope_low < tolerances.slope_high)) throw ConfigError("slope_low must be below slope_high");
  static const std::set<std::string> known{"indicator", "gaussian", "bump", "random_bumps", "signed_bumps"};
  for (const std::string& m : corpus) {
    if (!known.contains(m)) throw ConfigError("unknown corpus member '" + m + "'");
  }
  if (out.empty()) throw ConfigError("output directory must be non-empty");
}

namespace {

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("'" + key + "': not a number: '" + text + "'");
  return v;
}

template <class Int>
Int to_integer(const std::string& key, const std::string& text) {
  Int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("'" + key + "': not an integer: '" + text + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    out.push_back(to_double("list", item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

RunConfig load_config(const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }

  RunConfig cfg;
  Tolerances& tol = cfg.tolerances;
  auto tol_fields = tol.fields();
  double alpha = cfg.params.alpha();
  int dim = cfg.params.d();
  bool params_given = false;

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError(path.string() + ": key '" + section + "' outside a section");
    for (const auto& [key, node] : body) {
      const std::string where = section + "." + key;
      const std::string value = trim(node.data());
      if (section == "params" && key == "alpha") {
        alpha = to_double(where, value);
        params_given = true;
      } else if (section == "params" && key == "dim") {
        dim = to_integer<int>(where, value);
        params_given = true;
      } else if (section == "grid" && key == "extent") {
        cfg.grid.extent = to_double(where, value);
      } else if (section == "grid" && key == "nodes") {
        cfg.grid.nodes = to_integer<int>(where, value);
      } else if (section == "spectral" && key == "extent") {
        cfg.spectral.extent = to_double(where, value);
      } else if (section == "spectral" && key == "lateral_nodes") {
        cfg.spectral.lateral_nodes = to_integer<int>(where, value);
      } else if (section == "spectral" && key == "depth_nodes") {
        cfg.spectral.depth_nodes = to_integer<int>(where, value);
      } else if (section == "maximal" && key == "r_min") {
        cfg.schedule.r_min = to_double(where, value);
      } else if (section == "maximal" && key == "r_max") {
        cfg.schedule.r_max = to_double(where, value);
      } else if (section == "maximal" && key == "radii") {
        cfg.schedule.radii = to_integer<int>(where, value);
      } else if (section == "maximal" && key == "z_samples") {
        cfg.schedule.z_samples = to_integer<int>(where, value);
      } else if (section == "maximal" && key == "levels") {
        cfg.schedule.levels = to_integer<int>(where, value);
      } else if (section == "maximal" && key == "level_low") {
        cfg.schedule.level_low = to_double(where, value);
      } else if (section == "maximal" && key == "level_high") {
        cfg.schedule.level_high = to_double(where, value);
      } else if (section == "corpus" && key == "members") {
        cfg.corpus.clear();
        std::size_t start = 0;
        while (start <= value.size()) {
          const std::size_t comma = value.find(',', start);
          const std::string item =
              trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
          if (!item.empty()) cfg.corpus.push_back(item);
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      } else if (section == "run" && key == "seed") {
        cfg.seed = to_integer<std::uint64_t>(where, value);
      } else if (section == "run" && key == "out") {
        cfg.out = value;
      } else if (section == "tolerance") {
        auto it = std::find_if(tol_fields.begin(), tol_fields.end(), [&](const auto& f) { return f.first == key; });
        if (it == tol_fields.end()) throw ConfigError(path.string() + ": unknown tolerance '" + key + "'");
        *it->second = to_double(where, value);
      } else {
        throw ConfigError(path.string() + ": unknown key '" + where + "'");
      }
    }
  }

  try {
    cfg.params = WeinsteinParams(alpha, dim);
  } catch (const std::domain_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (params_given) cfg.decay_cases = {{dim, alpha}};
  cfg.validate();
  return cfg;
}

}  // namespace weinstein
