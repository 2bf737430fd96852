#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "weinstein/config.hpp"
#include "weinstein/corpus.hpp"
#include "weinstein/io.hpp"
#include "weinstein/report.hpp"
#include "weinstein/verify.hpp"

using namespace weinstein;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("weinstein_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path write_ini(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir(name) / "run.ini";
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("corpus is deterministic and well formed") {
  const WeinsteinParams p(1.0, 2);
  const auto a = build_corpus(p, 4.0, 7);
  const auto b = build_corpus(p, 4.0, 7);
  const auto c = build_corpus(p, 4.0, 8);
  REQUIRE(a.size() == 5);
  const char* names[] = {"indicator", "gaussian", "bump", "random_bumps", "signed_bumps"};
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].name == names[k]);
  CHECK_FALSE(a[4].nonnegative);
  const Point probes[] = {Point{0.1, 0.2}, Point{-0.7, 0.9}, Point{0.3, 0.05}, Point{1.1, 0.4}};
  bool seed_matters = false;
  for (const Point& x : probes) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].eval(x) == b[k].eval(x));
      Point mirrored = x;
      mirrored.last() = -x.last();
      CHECK(a[k].eval(x) == a[k].eval(mirrored));
    }
    seed_matters = seed_matters || a[3].eval(x) != c[3].eval(x);
  }
  CHECK(seed_matters);
  REQUIRE(a[2].profile.has_value());
  CHECK(radial_integrate(p, *a[2].profile) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(corpus_gaussian_sigma(4.0) == 0.5);
  CHECK(corpus_gaussian_sigma(16.0) == 1.0);
  CHECK(unit_uniform(0) == 0.0);
  CHECK(unit_uniform(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("config loading") {
  const RunConfig cfg = load_config(write_ini("ok", "[params]\nalpha = 1.5\ndim = 3\n[grid]\nnodes = 64\n"
                                                    "[tolerance]\nplancherel = 1e-5\n[corpus]\nmembers = gaussian,bump\n"));
  CHECK(cfg.params == WeinsteinParams(1.5, 3));
  CHECK(cfg.grid.nodes == 64);
  CHECK(cfg.tolerances.plancherel == 1e-5);
  CHECK(cfg.corpus == std::vector<std::string>{"gaussian", "bump"});
  CHECK(cfg.decay_cases == std::vector<std::pair<int, double>>{{3, 1.5}});

  CHECK_THROWS_AS(load_config(write_ini("zero", "[tolerance]\nplancherel = 0\n")), ConfigError);
  CHECK_THROWS_AS(load_config(write_ini("unknown", "[grid]\nspacing = 3\n")), ConfigError);
  CHECK_THROWS_AS(load_config(write_ini("odd", "[grid]\nnodes = 30\n")), ConfigError);
  CHECK_THROWS_AS(load_config(write_ini("member", "[corpus]\nmembers = sinc\n")), ConfigError);
  CHECK_THROWS_AS(load_config(write_ini("slope", "[tolerance]\nslope_low = 3\n")), ConfigError);
  CHECK_THROWS_AS(load_config(write_ini("alpha", "[params]\nalpha = -0.7\n")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.ini"), ConfigError);

  CHECK(parse_list("1, 2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
  CHECK_THROWS_AS(parse_list("1,x"), ConfigError);
}

TEST_CASE("tolerance fields cover every member") {
  Tolerances t;
  const auto fields = t.fields();
  CHECK(fields.size() == sizeof(Tolerances) / sizeof(double));
  for (const auto& [name, ptr] : fields) {
    CHECK(!name.empty());
    CHECK(*ptr > 0.0);
  }
}

TEST_CASE("report lint and serialization") {
  VerificationReport report;
  report.add(bounded(1, "a", refs::ball_measure, 0.5, 0.0, 1.0, "g"));
  report.add(logged(0, "b", refs::plumbing, std::nan(""), "g"));
  report.add(skipped(8, "c", refs::decay, "outside regime"));
  CHECK(report.passed());
  CHECK(lint_report(report).empty());
  report.add(bounded(2, "d", refs::indicator_transform, 2.0, 0.0, 1.0, "g"));
  CHECK_FALSE(report.passed());
  CHECK(lint_report(report).empty());

  VerificationReport broken = report;
  broken.add(bounded(3, "a", "made up", 0.5, 0.0, 1.0, "g"));
  broken.entries[0].status = Status::fail;
  CHECK(lint_report(broken).size() == 3);

  const fs::path d1 = scratch_dir("report1");
  const fs::path d2 = scratch_dir("report2");
  write_report(report, d1);
  write_report(report, d2);
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
  CHECK(slurp(d1 / "report.csv") == slurp(d2 / "report.csv"));
  CHECK(slurp(d1 / "report.json").find("null") != std::string::npos);

  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("grid csv round trip") {
  const WeinsteinParams p(1.0, 2);
  const auto grid = HalfSpaceGrid::cube(p, 2.0, 12);
  const RealField f = RealField::sample(grid, [](const Point& x) { return std::sin(x[0]) + x.last() / 3.0; });
  const fs::path path = scratch_dir("csv") / "f.csv";
  write_grid_csv(path, f);
  const RealField back = read_grid_csv(path, p);
  CHECK(back.grid().counts() == grid->counts());
  for (std::size_t k = 0; k < f.size(); ++k) {
    for (int a = 0; a < 2; ++a) CHECK(back.grid().node(k)[a] == doctest::Approx(grid->node(k)[a]).epsilon(1e-14));
  }
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(back[k] == f[k]);

  std::ofstream(path) << "x1,x2,value\n0,0.5,1\n0.3,0.5,1\n";
  CHECK_THROWS_AS(read_grid_csv(path, p), IoError);
  CHECK_THROWS_AS(read_grid_csv(path.parent_path() / "missing.csv", p), IoError);
}

TEST_CASE("plot data without fields is a bare index") {
  const fs::path dir = scratch_dir("plot");
  emit_plot_data({}, dir);
  CHECK(slurp(dir / "plot_index.csv") == "file,member,kind\n");
}

TEST_CASE("verification outside the strong regime skips the regime-gated criteria") {
  RunConfig cfg;
  cfg.params = WeinsteinParams(-0.4, 2);
  cfg.decay_cases = {{2, -0.4}};
  cfg.grid.nodes = 32;
  cfg.validate();
  const VerifyOutcome out = run_verify(cfg);
  CHECK(out.study.levels.empty());
  for (int id : {8, 9, 10, 11}) {
    bool seen = false;
    for (const ReportEntry& e : out.report.entries) {
      if (e.criterion != id) continue;
      seen = true;
      CHECK(e.status == Status::skipped);
    }
    CHECK(seen);
  }
  CHECK(lint_report(out.report).empty());
  CHECK(plot_fields(cfg, out.study).empty());
}
