// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 configuration or IO error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "weinstein/config.hpp"
#include "weinstein/corpus.hpp"
#include "weinstein/io.hpp"
#include "weinstein/maximal.hpp"
#include "weinstein/report.hpp"
#include "weinstein/transform.hpp"
#include "weinstein/translation.hpp"
#include "weinstein/verify.hpp"

namespace fs = std::filesystem;
using namespace weinstein;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  double alpha = 1.0;
  int dim = 2;
  int grid = 128;
  double extent = 4.0;
  std::uint64_t seed = RunConfig{}.seed;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--alpha", o.alpha, "weight exponent alpha > -1/2")->capture_default_str();
  cmd->add_option("--dim", o.dim, "dimension d >= 2")->capture_default_str();
  cmd->add_option("--grid", o.grid, "nodes per axis")->capture_default_str();
  cmd->add_option("--extent", o.extent, "box [-L,L]^(d-1) x (0,L]")->capture_default_str();
  cmd->add_option("--seed", o.seed, "corpus seed")->capture_default_str();
}

WeinsteinParams make_params(double alpha, int dim) {
  try {
    return WeinsteinParams(alpha, dim);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

GridPtr make_grid(const CommonOptions& o) {
  if (o.grid < 3 || !(o.extent > 0.0)) throw ConfigError("grid needs at least 3 nodes and a positive extent");
  return HalfSpaceGrid::cube(make_params(o.alpha, o.dim), o.extent, o.grid);
}

CorpusFunction find_member(const CommonOptions& o, const std::string& name) {
  for (CorpusFunction& c : build_corpus(make_params(o.alpha, o.dim), o.extent, o.seed)) {
    if (c.name == name) return std::move(c);
  }
  throw ConfigError("unknown corpus member '" + name + "'");
}

Point parse_point(const std::string& text, int dim) {
  const auto v = parse_list(text);
  if (static_cast<int>(v.size()) != dim) throw ConfigError("point needs " + std::to_string(dim) + " coordinates");
  return Point(std::span<const double>(v));
}

void write_json(const fs::path& path, const nlohmann::ordered_json& doc) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed: '" + path.string() + "'");
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

int run_verify_command(const std::optional<std::string>& config_path, const std::optional<double>& alpha,
                       const std::optional<int>& dim, const std::optional<int>& grid,
                       const std::optional<std::uint64_t>& seed, const std::optional<std::string>& out) {
  RunConfig cfg = config_path ? load_config(*config_path) : RunConfig{};
  if (alpha || dim) {
    cfg.params = make_params(alpha.value_or(cfg.params.alpha()), dim.value_or(cfg.params.d()));
    cfg.decay_cases = {{cfg.params.d(), cfg.params.alpha()}};
  }
  if (grid) cfg.grid.nodes = *grid;
  if (seed) cfg.seed = *seed;
  if (out) cfg.out = *out;
  cfg.validate();

  const VerifyOutcome outcome = run_verify(cfg);
  write_report(outcome.report, cfg.out);
  emit_plot_data(plot_fields(cfg, outcome.study), cfg.out / "plot");

  std::map<int, std::string> verdict;
  for (const ReportEntry& e : outcome.report.entries) {
    if (e.criterion == 0) continue;
    std::string& v = verdict[e.criterion];
    if (e.status == Status::fail) {
      v = "FAIL";
    } else if (e.status == Status::pass && v != "FAIL") {
      v = "PASS";
    } else if (e.status == Status::skipped && v.empty()) {
      v = "SKIPPED";
    }
  }
  for (const auto& [id, v] : verdict) std::printf("criterion %2d: %s\n", id, v.empty() ? "INFO" : v.c_str());
  for (const ReportEntry& e : outcome.report.entries) {
    if (e.status == Status::fail) {
      std::printf("failed: %s (observed %s, bounds [%s, %s])\n", e.name.c_str(), format_double(e.observed).c_str(),
                  format_double(e.lower).c_str(), format_double(e.upper).c_str());
    }
  }
  std::printf("report: %s\n", (cfg.out / "report.json").string().c_str());
  return outcome.report.passed() ? 0 : kExitFail;
}

int run_transform_command(const CommonOptions& o, const std::optional<std::string>& function,
                          const std::optional<std::string>& input, double spectral_extent, int spectral_lateral,
                          int spectral_depth, const std::string& out) {
  if (function.has_value() == input.has_value()) throw ConfigError("give exactly one of --function and --input");
  const WeinsteinParams params = make_params(o.alpha, o.dim);
  const RealField f =
      input ? read_grid_csv(*input, params) : RealField::sample(make_grid(o), find_member(o, *function).eval);
  if (!(spectral_extent > 0.0) || spectral_lateral < 1 || spectral_depth < 1) {
    throw ConfigError("spectral grid needs a positive extent and node counts");
  }
  std::vector<double> widths(static_cast<std::size_t>(o.dim - 1), spectral_extent);
  std::vector<int> counts(static_cast<std::size_t>(o.dim - 1), spectral_lateral);
  counts.push_back(spectral_depth);
  const auto spectral = std::make_shared<const HalfSpaceGrid>(params, widths, spectral_extent, counts);
  const ComplexField F = forward_transform(f, spectral);
  std::vector<double> re(F.size());
  std::vector<double> im(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    re[i] = F[i].real();
    im[i] = F[i].imag();
  }
  ensure_parent(out);
  write_node_csv(out, *spectral, {"re", "im"}, {re, im});
  return 0;
}

int run_translate_command(const CommonOptions& o, const std::string& function, const std::string& point,
                          const std::string& out, bool check_normalization) {
  const WeinsteinParams params = make_params(o.alpha, o.dim);
  const GridPtr grid = make_grid(o);
  const RealField f = RealField::sample(grid, find_member(o, function).eval);
  const Point x = parse_point(point, o.dim);
  if (!grid->contains(x)) throw ConfigError("translation point lies outside the grid box");
  const RealField tf = translate_grid(f, x);
  ensure_parent(out);
  write_node_csv(out, *grid, {"f", "tau_x_f"}, {f.values(), tf.values()});
  if (check_normalization) {
    std::mt19937_64 g(o.seed);
    double theta = 0.0;
    double direct = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double xd = 1e-2 * std::pow(1e3, unit_uniform(g()));
      const double yd = 1e-2 * std::pow(1e3, unit_uniform(g()));
      theta = std::max(theta, std::fabs(kernel_normalization_theta(params, xd, yd) - 1.0));
      direct = std::max(direct, std::fabs(kernel_normalization_direct(params, xd, yd) - 1.0));
    }
    nlohmann::ordered_json doc;
    doc["pairs"] = 100;
    doc["theta_residual"] = theta;
    doc["direct_residual"] = direct;
    std::cout << doc.dump(2) << '\n';
  }
  return 0;
}

int run_maximal_command(const CommonOptions& o, const std::string& function, const ScheduleSpec& s,
                        const std::string& out) {
  const GridPtr grid = make_grid(o);
  const CorpusFunction c = find_member(o, function);
  const RealField f = RealField::sample(grid, c.eval);
  RunConfig cfg;
  cfg.schedule = s;
  cfg.params = make_params(o.alpha, o.dim);
  cfg.grid.extent = o.extent;
  if (!(s.r_min > 0.0) || !(s.r_max > s.r_min) || s.radii < 2 || s.z_samples < 1 || s.levels < 1) {
    throw ConfigError("schedule needs 0 < r_min < r_max, radii >= 2, z_samples >= 1, levels >= 1");
  }
  const RadiusSchedule sched = RadiusSchedule::log_spaced(s.r_min, s.r_max, s.radii, s.z_samples);
  const std::vector<RealField> fs{f};
  const MaximalResult m = maximal_fields(fs, sched, true).front();
  const auto mask = interior_mask(*grid, s.r_max);
  const auto levels = weak_type_levels(cfg, f);

  const fs::path dir(out);
  emit_plot_data({PlotField{c.name, f, m.uncentered, m.ball_average, levels}}, dir);
  nlohmann::ordered_json doc;
  doc["member"] = c.name;
  doc["alpha"] = o.alpha;
  doc["dim"] = o.dim;
  doc["grid"] = grid_label(*grid);
  doc["strong_regime"] = cfg.params.strong_regime();
  doc["radii"] = sched.radii;
  doc["z_samples_per_ball"] = sched.z_samples_per_ball;
  doc["exclusion_margin"] = s.r_max;
  doc["levels"] = levels;
  doc["weak_type_constant"] = weak_type_constant(f, m.uncentered, levels, mask);
  nlohmann::ordered_json lp;
  for (double q : {1.5, 2.0, 4.0}) lp[format_double(q)] = lp_operator_ratio(f, m.uncentered, q, mask);
  doc["lp_ratios"] = lp;
  write_json(dir / "summary.json", doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weinstein harmonic analysis toolkit"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<double> v_alpha;
  std::optional<int> v_dim;
  std::optional<int> v_grid;
  std::optional<std::uint64_t> v_seed;
  std::optional<std::string> v_out;
  auto* verify = app.add_subcommand("verify", "run every check and write report.json, report.csv and plot data");
  verify->add_option("--config", config_path, "INI configuration file");
  verify->add_option("--alpha", v_alpha, "weight exponent alpha");
  verify->add_option("--dim", v_dim, "dimension d");
  verify->add_option("--grid", v_grid, "finest nodes per axis");
  verify->add_option("--seed", v_seed, "seed");
  verify->add_option("--out", v_out, "output directory");

  CommonOptions t_opts;
  std::optional<std::string> t_function;
  std::optional<std::string> t_input;
  double t_spectral_extent = 12.0;
  int t_spectral_lateral = 64;
  int t_spectral_depth = 256;
  std::string t_out = "transform.csv";
  auto* transform = app.add_subcommand("transform", "forward transform of a corpus member or a grid CSV");
  add_common(transform, t_opts);
  transform->add_option("--function", t_function, "corpus member");
  transform->add_option("--input", t_input, "grid function CSV (x1..xd,value)");
  transform->add_option("--spectral-extent", t_spectral_extent)->capture_default_str();
  transform->add_option("--spectral-lateral", t_spectral_lateral, "lateral spectral nodes per axis")->capture_default_str();
  transform->add_option("--spectral-depth", t_spectral_depth, "spectral nodes along lambda_d")->capture_default_str();
  transform->add_option("--out", t_out, "output CSV")->capture_default_str();

  CommonOptions r_opts;
  std::string r_function = "gaussian";
  std::string r_point;
  std::string r_out = "translate.csv";
  bool r_check = false;
  auto* translate = app.add_subcommand("translate", "generalized translation of a corpus member");
  add_common(translate, r_opts);
  translate->add_option("--function", r_function, "corpus member")->capture_default_str();
  translate->add_option("--point", r_point, "translation point x1,...,xd")->required();
  translate->add_option("--out", r_out, "output CSV")->capture_default_str();
  translate->add_flag("--check-normalization", r_check, "print the kernel normalization residuals");

  CommonOptions m_opts;
  std::string m_function = "indicator";
  ScheduleSpec m_sched;
  std::string m_out = "maximal";
  auto* maximal = app.add_subcommand("maximal", "uncentered maximal function of a corpus member");
  add_common(maximal, m_opts);
  maximal->add_option("--function", m_function, "corpus member")->capture_default_str();
  maximal->add_option("--r-min", m_sched.r_min)->capture_default_str();
  maximal->add_option("--r-max", m_sched.r_max)->capture_default_str();
  maximal->add_option("--radii", m_sched.radii)->capture_default_str();
  maximal->add_option("--z-samples", m_sched.z_samples)->capture_default_str();
  maximal->add_option("--levels", m_sched.levels)->capture_default_str();
  maximal->add_option("--out", m_out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify) return run_verify_command(config_path, v_alpha, v_dim, v_grid, v_seed, v_out);
    if (*transform) {
      return run_transform_command(t_opts, t_function, t_input, t_spectral_extent, t_spectral_lateral, t_spectral_depth,
                                   t_out);
    }
    if (*translate) return run_translate_command(r_opts, r_function, r_point, r_out, r_check);
    if (*maximal) return run_maximal_command(m_opts, m_function, m_sched, m_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
