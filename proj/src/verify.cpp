#include "weinstein/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "weinstein/io.hpp"
#include "weinstein/special_fn.hpp"
#include "weinstein/transform.hpp"
#include "weinstein/translation.hpp"

namespace weinstein {

namespace {

using cplx = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t id) { return std::mt19937_64(seed ^ (id * 0x9E3779B97F4A7C15ULL)); }

double draw(std::mt19937_64& g, double lo, double hi) { return lo + (hi - lo) * unit_uniform(g()); }

double draw_log(std::mt19937_64& g, double lo, double hi) { return lo * std::pow(hi / lo, unit_uniform(g())); }

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1));
  return v;
}

// Least-squares slope of log y against log x.
double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]);
    const double b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// (max - min) / min.
double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / *lo;
}

double relative_change(double coarse, double fine) { return std::fabs(fine - coarse) / std::fabs(fine); }

std::string fmt(double v) { return format_double(v); }

// Uniform direction on the unit sphere of R^d from Box-Muller pairs.
Point random_direction(std::mt19937_64& g, int d) {
  while (true) {
    Point u(d);
    for (int i = 0; i < d; ++i) {
      const double a = 1.0 - unit_uniform(g());
      const double b = unit_uniform(g());
      u[i] = std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * std::numbers::pi * b);
    }
    const double n = u.norm();
    if (n > 1e-12) {
      for (int i = 0; i < d; ++i) u[i] /= n;
      return u;
    }
  }
}

Point scaled(const Point& u, double s) {
  Point v(u.dim());
  for (int i = 0; i < u.dim(); ++i) v[i] = s * u[i];
  return v;
}

const CorpusFunction& member(const std::vector<CorpusFunction>& corpus, const std::string& name) {
  for (const CorpusFunction& c : corpus) {
    if (c.name == name) return c;
  }
  throw std::logic_error("corpus member missing: " + name);
}

RealField sample(const GridPtr& grid, const CorpusFunction& c) { return RealField::sample(grid, c.eval); }

GridPtr config_grid(const RunConfig& cfg, int n) { return HalfSpaceGrid::cube(cfg.params, cfg.grid.extent, n); }

// x' = (0.5, 0, ..., 0), x_d = 0.75.
Point translation_point(int d) {
  Point x(d);
  x[0] = 0.5;
  x.last() = 0.75;
  return x;
}

// 16 frequencies, |lambda| = 6k/15 at angle 0.3 + 1.2k/15 in the (x_1, x_d) plane.
std::vector<Point> product_frequencies(int d) {
  std::vector<Point> out;
  for (int k = 0; k < 16; ++k) {
    const double m = 6.0 * k / 15.0;
    const double th = 0.3 + 1.2 * k / 15.0;
    Point l(d);
    l[0] = m * std::cos(th);
    l.last() = m * std::sin(th);
    out.push_back(l);
  }
  return out;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

std::string n_label(const char* what, double p) {
  std::ostringstream s;
  s << what << " p=" << (std::isinf(p) ? std::string("inf") : fmt(p));
  return s.str();
}

}  // namespace

bool CriterionResult::passed() const {
  bool asserted = false;
  for (const ReportEntry& e : entries) {
    if (e.criterion != id) continue;
    if (e.status == Status::fail) return false;
    if (e.status == Status::pass) asserted = true;
  }
  return asserted;
}

bool CriterionResult::skipped() const {
  bool any = false;
  for (const ReportEntry& e : entries) {
    if (e.criterion != id) continue;
    if (e.status != Status::skipped) return false;
    any = true;
  }
  return any;
}

std::vector<CorpusFunction> selected_corpus(const RunConfig& cfg) {
  auto all = build_corpus(cfg.params, cfg.grid.extent, cfg.seed);
  if (cfg.corpus.empty()) return all;
  std::vector<CorpusFunction> out;
  for (CorpusFunction& c : all) {
    if (std::find(cfg.corpus.begin(), cfg.corpus.end(), c.name) != cfg.corpus.end()) out.push_back(std::move(c));
  }
  return out;
}

Point probe_direction(int d) {
  Point u(d);
  const double lateral = 0.6 / std::sqrt(static_cast<double>(d - 1));
  for (int i = 0; i + 1 < d; ++i) u[i] = lateral;
  u.last() = 0.8;
  return u;
}

std::string grid_label(const HalfSpaceGrid& grid) {
  std::ostringstream s;
  for (std::size_t i = 0; i < grid.counts().size(); ++i) s << (i ? "x" : "") << grid.counts()[i];
  s << " on ";
  for (double w : grid.half_widths()) s << "[-" << fmt(w) << ',' << fmt(w) << "]x";
  s << "(0," << fmt(grid.depth()) << ']';
  return s.str();
}

CriterionResult check_ball_measure(const RunConfig& cfg) {
  CriterionResult r{1, "ball measure quadrature", {}};
  const WeinsteinParams& p = cfg.params;
  const double exact = ball_measure(p, 1.0);
  std::vector<double> hs;
  std::vector<double> errs;
  std::string label;
  for (int n : {cfg.grid.nodes / 4, cfg.grid.nodes / 2, cfg.grid.nodes}) {
    const GridPtr grid = HalfSpaceGrid::cube(p, 1.0, n);
    const RealField f = RealField::sample(grid, [](const Point& x) { return x.norm2() <= 1.0 ? 1.0 : 0.0; });
    const double err = std::fabs(integrate(*grid, f) - exact) / exact;
    label = grid_label(*grid);
    hs.push_back(grid->spacing(0));
    errs.push_back(err);
    r.entries.push_back(logged(1, "ball measure relative error n=" + std::to_string(n), refs::ball_measure, err, label));
  }
  r.entries.push_back(bounded(1, "ball measure relative error", refs::ball_measure, errs.back(), 0.0,
                              cfg.tolerances.ball_measure, label));
  r.entries.push_back(bounded(1, "ball measure convergence order", refs::ball_measure, log_slope(hs, errs),
                              cfg.tolerances.min_order, kInf, "three refinements ending at " + label));
  return r;
}

CriterionResult check_indicator_transform(const RunConfig& cfg) {
  CriterionResult r{2, "ball indicator transform", {}};
  const WeinsteinParams& p = cfg.params;
  const Tolerances& tol = cfg.tolerances;
  const int d = p.d();
  const GridPtr grid = HalfSpaceGrid::cube(p, 1.0, cfg.grid.nodes);
  const std::string label = grid_label(*grid);
  const auto corpus = build_corpus(p, cfg.grid.extent, cfg.seed);
  const RealField f = sample(grid, member(corpus, "indicator"));

  const Point u = probe_direction(d);
  std::vector<Point> lambdas;
  for (int k = 0; k < 20; ++k) lambdas.push_back(scaled(u, 20.0 * k / 19.0));
  const auto numeric = forward_transform_at(f, std::span<const Point>(lambdas));
  const double f0 = ball_indicator_transform(p, 1.0, lambdas[0]);
  double err = 0.0;
  double sup = 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    err = std::max(err, std::abs(numeric[k] - ball_indicator_transform(p, 1.0, lambdas[k])));
    sup = std::max(sup, std::abs(numeric[k]));
  }
  r.entries.push_back(bounded(2, "indicator transform error over F(0)", refs::indicator_transform, err / f0, 0.0,
                              tol.indicator_transform, label + ", 20 frequencies with |lambda| in [0,20]"));

  double sep = 0.0;
  for (std::size_t k : {std::size_t{0}, std::size_t{9}, std::size_t{19}}) {
    sep = std::max(sep, std::abs(numeric[k] - forward_transform_direct(f, lambdas[k])));
  }
  r.entries.push_back(bounded(0, "separable vs direct transform sums", refs::plumbing, sep / std::abs(numeric[0]), 0.0,
                              tol.separable_direct, label + ", 3 frequencies"));

  double psi = 0.0;
  for (const Point& l : lambdas) {
    for (std::size_t i = 0; i < grid->size(); i += 97) psi = std::max(psi, std::abs(weinstein_kernel(p, l, grid->node(i))));
  }
  r.entries.push_back(
      bounded(0, "kernel modulus max", refs::kernel_bound, psi, 0.0, 1.0 + tol.kernel_bound, label + ", every 97th node"));
  r.entries.push_back(bounded(0, "transform sup over L1 norm", refs::transform_bound, sup / lp_norm(*grid, f, 1.0), 0.0,
                              1.0 + tol.kernel_bound, label));

  const CorpusFunction& bump = member(corpus, "bump");
  const RealField b = sample(grid, bump);
  const auto bump_numeric = forward_transform_at(b, std::span<const Point>(lambdas));
  const double b0 = radial_transform(p, *bump.profile, 0.0);
  double bump_err = 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    bump_err = std::max(bump_err, std::abs(bump_numeric[k] - radial_transform(p, *bump.profile, lambdas[k].norm())));
  }
  r.entries.push_back(bounded(0, "bump grid vs radial transform", refs::radial_transform, bump_err / std::fabs(b0), 0.0,
                              tol.radial_transform, label));

  boost::math::quadrature::tanh_sinh<double> ts;
  const double power = 2.0 * p.alpha() + d;
  const double mass =
      p.radial_constant() * ts.integrate([&](double t) { return (*bump.profile)(t) * std::pow(t, power); }, 0.0, 1.0);
  r.entries.push_back(bounded(0, "bump L1 norm deviation", refs::plumbing, std::fabs(mass - 1.0), 0.0, tol.bump_mass,
                              "tanh-sinh radial quadrature"));
  return r;
}

CriterionResult check_transform_bounds(const RunConfig& cfg) {
  CriterionResult r{3, "ball indicator transform bounds", {}};
  const WeinsteinParams& p = cfg.params;
  const double a = p.alpha();
  const int d = p.d();
  const Point u = probe_direction(d);
  const double c0 = std::exp(-((a + 0.5 * (d + 1)) * std::numbers::ln2 + log_gamma(a + 0.5 * (d + 3))));
  auto sweep = [&](int ne, int nl) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (double eps : log_space(1e-2, 1e1, ne)) {
      for (double lm : log_space(1e-2, 1e2, nl)) {
        const double v = std::fabs(ball_indicator_transform(p, eps, scaled(u, lm)));
        s1 = std::max(s1, v / std::pow(eps, 2.0 * a + d + 1.0));
        s2 = std::max(s2, v * std::pow(lm, a + 0.5 * d + 1.0) / std::pow(eps, a + 0.5 * d));
      }
    }
    return std::pair{s1, s2};
  };
  const auto [c1, c2] = sweep(64, 96);
  const auto [f1, f2] = sweep(128, 192);
  const std::string coarse = "64 eps x 96 |lambda|";
  const std::string fine = "128 eps x 192 |lambda|";
  r.entries.push_back(bounded(3, "small-frequency ratio sup", refs::indicator_bounds, f1, 0.0,
                              c0 * (1.0 + cfg.tolerances.kernel_bound), fine));
  r.entries.push_back(bounded(3, "small-frequency ratio sup change", refs::indicator_bounds, relative_change(c1, f1), 0.0,
                              cfg.tolerances.transform_stability, coarse + " to " + fine));
  r.entries.push_back(bounded(3, "large-frequency ratio sup", refs::indicator_bounds, f2, 0.0, kInf, fine));
  r.entries.push_back(bounded(3, "large-frequency ratio sup change", refs::indicator_bounds, relative_change(c2, f2), 0.0,
                              cfg.tolerances.transform_stability, coarse + " to " + fine));
  return r;
}

CriterionResult check_kernel_normalization(const RunConfig& cfg) {
  CriterionResult r{4, "translation kernel normalization", {}};
  const WeinsteinParams& p = cfg.params;
  auto g = stream(cfg.seed, 4);
  double theta = 0.0;
  double direct = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double xd = draw_log(g, 1e-2, 1e1);
    const double yd = draw_log(g, 1e-2, 1e1);
    theta = std::max(theta, std::fabs(kernel_normalization_theta(p, xd, yd) - 1.0));
    direct = std::max(direct, std::fabs(kernel_normalization_direct(p, xd, yd) - 1.0));
  }
  const std::string label = "100 pairs, x_d and y_d log-uniform in [0.01,10]";
  r.entries.push_back(
      bounded(4, "normalization deviation, theta rule", refs::normalization, theta, 0.0, cfg.tolerances.normalization_theta, label));
  r.entries.push_back(bounded(4, "normalization deviation, direct rho quadrature", refs::normalization, direct, 0.0,
                              cfg.tolerances.normalization_direct, label));

  const int d = p.d();
  const CorpusFunction gauss = gaussian_member(p, corpus_gaussian_sigma(cfg.grid.extent));
  double routes = 0.0;
  for (int k = 0; k < 20; ++k) {
    Point x(d);
    Point y(d);
    for (int i = 0; i + 1 < d; ++i) {
      x[i] = draw(g, -1.0, 1.0);
      y[i] = draw(g, -1.0, 1.0);
    }
    x.last() = draw(g, 0.05, 2.0);
    y.last() = draw(g, 0.05, 2.0);
    routes = std::max(routes, std::fabs(translate_point(p, gauss.eval, x, y) - translate_point_direct(p, gauss.eval, x, y)));
  }
  r.entries.push_back(bounded(0, "translation theta rule vs direct quadrature", refs::translation_integral, routes, 0.0,
                              cfg.tolerances.translation_routes, "20 random pairs, Gaussian"));
  return r;
}

CriterionResult check_translation(const RunConfig& cfg) {
  CriterionResult r{5, "translation identities", {}};
  const WeinsteinParams& p = cfg.params;
  const Tolerances& tol = cfg.tolerances;
  const int d = p.d();
  const auto corpus = selected_corpus(cfg);
  const GridPtr grid = config_grid(cfg, cfg.grid.nodes);
  const std::string label = grid_label(*grid);
  const Point x = translation_point(d);
  const Point origin(d);
  for (const CorpusFunction& c : corpus) {
    const RealField f = sample(grid, c);
    const RealField t0 = translate_grid(f, origin);
    r.entries.push_back(bounded(5, c.name + " tau_0 max deviation", refs::contraction, max_abs_diff(t0.values(), f.values()),
                                0.0, 0.0, label));
    const RealField tf = translate_grid(f, x);
    for (double q : {1.0, 2.0, kInfinityNorm}) {
      const double ratio = lp_norm(*grid, tf, q) / lp_norm(*grid, f, q);
      r.entries.push_back(
          bounded(5, c.name + " " + n_label("contraction", q), refs::contraction, ratio, 0.0, 1.0 + tol.contraction_slack, label));
    }
  }

  const GridPtr fine = config_grid(cfg, cfg.grid.nodes / 2);
  const CorpusFunction gauss = gaussian_member(p, corpus_gaussian_sigma(cfg.grid.extent));
  const RealField f = sample(fine, gauss);
  const RealField tf = translate_grid(f, x);
  const auto lambdas = product_frequencies(d);
  const auto lhs = forward_transform_at(tf, std::span<const Point>(lambdas));
  const auto base = forward_transform_at(f, std::span<const Point>(lambdas));
  Point reflected = x;
  for (int i = 0; i + 1 < d; ++i) reflected[i] = -x[i];
  double err = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const cplx rhs = weinstein_kernel(p, lambdas[k], reflected) * base[k];
    scale = std::max(scale, std::abs(rhs));
    err = std::max(err, std::abs(lhs[k] - rhs));
  }
  r.entries.push_back(bounded(5, "product formula error, Gaussian", refs::product_formula, err / scale, 0.0,
                              tol.product_identity, grid_label(*fine) + ", 16 frequencies with |lambda| <= 6"));
  return r;
}

CriterionResult check_convolution(const RunConfig& cfg) {
  CriterionResult r{6, "convolution", {}};
  const WeinsteinParams& p = cfg.params;
  const Tolerances& tol = cfg.tolerances;
  const int d = p.d();
  const GridPtr grid = config_grid(cfg, 64);
  const std::string label = grid_label(*grid);
  const auto corpus = build_corpus(p, cfg.grid.extent, cfg.seed);
  const CorpusFunction gauss = gaussian_member(p, corpus_gaussian_sigma(cfg.grid.extent));
  auto shifted_eval = [&](const Point& x) {
    Point y = x;
    y[0] -= 0.5;
    return gauss.eval(y);
  };
  const RealField g = sample(grid, gauss);
  const RealField gs = RealField::sample(grid, shifted_eval);

  struct Pair {
    std::string name;
    RealField f;
    RealField h;
  };
  const std::vector<Pair> pairs{{"gaussian*shifted", g, gs},
                                {"indicator*random_bumps", sample(grid, member(corpus, "indicator")),
                                 sample(grid, member(corpus, "random_bumps"))}};
  const double triples[3][3] = {{1.0, 1.0, 1.0}, {1.0, 2.0, 2.0}, {2.0, 2.0, kInfinityNorm}};
  for (const Pair& pr : pairs) {
    const RealField conv = convolve(pr.f, pr.h);
    for (const auto& t : triples) {
      const double ratio = lp_norm(*grid, conv, t[2]) / (lp_norm(*grid, pr.f, t[0]) * lp_norm(*grid, pr.h, t[1]));
      std::ostringstream name;
      name << pr.name << " Young (" << fmt(t[0]) << ',' << fmt(t[1]) << ',' << (std::isinf(t[2]) ? "inf" : fmt(t[2])) << ')';
      r.entries.push_back(bounded(6, name.str(), refs::young, ratio, 0.0, 1.0 + tol.young_slack, label));
    }
  }

  const auto lambdas = product_frequencies(d);
  const auto fg = forward_transform_at(g, std::span<const Point>(lambdas));
  const auto fs = forward_transform_at(gs, std::span<const Point>(lambdas));
  auto product_error = [&](const RealField& conv) {
    const auto fc = forward_transform_at(conv, std::span<const Point>(lambdas));
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      const cplx rhs = fg[k] * fs[k];
      scale = std::max(scale, std::abs(rhs));
      err = std::max(err, std::abs(fc[k] - rhs));
    }
    return err / scale;
  };
  r.entries.push_back(bounded(6, "convolution product formula, closed-form translation", refs::convolution_product,
                              product_error(convolve(gauss.eval, gs)), 0.0, tol.convolution_transform,
                              label + ", 16 frequencies with |lambda| <= 6"));
  r.entries.push_back(logged(6, "convolution product formula, grid translation", refs::convolution_product,
                             product_error(convolve(g, gs)), label));
  return r;
}

CriterionResult check_ball_translate_support(const RunConfig& cfg) {
  CriterionResult r{7, "translated indicator support and range", {}};
  const WeinsteinParams& p = cfg.params;
  const int d = p.d();
  auto g = stream(cfg.seed, 7);
  auto random_pair = [&](double t_lo, double t_hi, Point& x, Point& y, double& eps) {
    while (true) {
      eps = draw_log(g, 1e-2, 1e1);
      x = Point(d);
      for (int i = 0; i + 1 < d; ++i) x[i] = draw(g, -5.0, 5.0);
      x.last() = 5.0 * (1.0 - unit_uniform(g()));
      const Point u = random_direction(g, d);
      const double t = draw(g, t_lo, t_hi);
      y = x;
      for (int i = 0; i < d; ++i) y[i] += t * eps * u[i];
      if (y.last() > 0.0) return;
    }
  };
  int far_nonzero = 0;
  int near_out_of_range = 0;
  int depth_gap_nonzero = 0;
  int far = 0;
  int near = 0;
  Point x;
  Point y;
  double eps = 0.0;
  while (far < 10000 || near < 10000) {
    const bool want_far = far < 10000;
    random_pair(want_far ? 1.0 : 0.0, want_far ? 3.0 : 1.0, x, y, eps);
    const double v = ball_translate(p, x, eps, y);
    if (v != 0.0 && std::fabs(x.last() - y.last()) >= eps) ++depth_gap_nonzero;
    if (distance2(x, y) >= eps * eps) {
      if (far >= 10000) continue;
      ++far;
      if (v != 0.0) ++far_nonzero;
    } else {
      if (near >= 10000) continue;
      ++near;
      if (!(v >= 0.0 && v <= 1.0)) ++near_out_of_range;
    }
  }
  r.entries.push_back(bounded(7, "nonzero values with |x-y| >= eps", refs::support, far_nonzero, 0.0, 0.0,
                              "10000 random pairs"));
  r.entries.push_back(bounded(7, "nonzero values with |x_d-y_d| >= eps", refs::support, depth_gap_nonzero, 0.0, 0.0,
                              "all sampled pairs"));
  r.entries.push_back(bounded(7, "values outside [0,1] with |x-y| < eps", refs::range, near_out_of_range, 0.0, 0.0,
                              "10000 random pairs"));

  const GridPtr grid = config_grid(cfg, cfg.grid.nodes / 2);
  Point xm(d);
  xm[0] = 0.3;
  xm.last() = 0.8;
  const double em = 0.5;
  const RealField t = RealField::sample(grid, [&](const Point& yy) { return ball_translate(p, xm, em, yy); });
  const double mass_err = std::fabs(integrate(*grid, t) - ball_measure(p, em)) / ball_measure(p, em);
  r.entries.push_back(bounded(0, "translated indicator mass relative error", refs::mass, mass_err, 0.0,
                              cfg.tolerances.mass_identity, grid_label(*grid) + ", eps 0.5"));
  return r;
}

namespace {

// sup over r in [r_lo, r_hi] (nr log points, eps = 1) and ny depth offsets
// of value(params, x, y) with x = (0, r), y = (0, r + delta_k).
template <class F>
double decay_sup(const WeinsteinParams& q, double r_lo, double r_hi, int nr, int ny, F&& value) {
  const int d = q.d();
  double sup = 0.0;
  for (double rr : log_space(r_lo, r_hi, nr)) {
    Point x(d);
    x.last() = rr;
    for (int k = 0; k < ny; ++k) {
      Point y(d);
      y.last() = rr - 1.0 + (2.0 * k + 1.0) / ny;
      if (!(y.last() > 0.0)) continue;
      sup = std::max(sup, value(q, x, y, rr));
    }
  }
  return sup;
}

std::string case_label(int d, double alpha) { return "d=" + std::to_string(d) + " alpha=" + fmt(alpha); }

template <class F>
CriterionResult decay_criterion(const RunConfig& cfg, int id, const char* title, const char* reference, double r_lo,
                                double r_hi, F&& value) {
  CriterionResult r{id, title, {}};
  for (const auto& [d, alpha] : cfg.decay_cases) {
    const WeinsteinParams q(alpha, d);
    const std::string c = case_label(d, alpha);
    if (!q.strong_regime()) {
      r.entries.push_back(skipped(id, std::string(title) + " sup, " + c, reference, "alpha <= d/2 - 1"));
      r.entries.push_back(skipped(id, std::string(title) + " sup change, " + c, reference, "alpha <= d/2 - 1"));
      continue;
    }
    const double coarse = decay_sup(q, r_lo, r_hi, 50, 20, value);
    const double fine = decay_sup(q, r_lo, r_hi, 100, 40, value);
    const std::string sweep = "x_d/eps in [" + fmt(r_lo) + "," + fmt(r_hi) + "]";
    r.entries.push_back(bounded(id, std::string(title) + " sup, " + c, reference, fine, 0.0, kInf, sweep + ", 100 x 40"));
    r.entries.push_back(bounded(id, std::string(title) + " sup change, " + c, reference, relative_change(coarse, fine), 0.0,
                                cfg.tolerances.decay_stability, sweep + ", 50 x 20 to 100 x 40"));
  }
  return r;
}

}  // namespace

CriterionResult check_decay(const RunConfig& cfg) {
  return decay_criterion(cfg, 8, "decay-weighted translated indicator", refs::decay, 2.0, 1e3,
                         [](const WeinsteinParams& q, const Point& x, const Point& y, double rr) {
                           return ball_translate(q, x, 1.0, y) * std::pow(rr, q.weight_exponent());
                         });
}

CriterionResult check_volume_ratio(const RunConfig& cfg) {
  return decay_criterion(cfg, 9, "volume-ratio-weighted translated indicator", refs::volume_ratio, 1e-3, 1e3,
                         [](const WeinsteinParams& q, const Point& x, const Point& y, double) {
                           return ball_translate(q, x, 1.0, y) * box_measure(q, x, 1.0) / ball_measure(q, 1.0);
                         });
}

MaximalStudy run_maximal_study(const RunConfig& cfg) {
  MaximalStudy study;
  if (!cfg.params.strong_regime()) return study;
  const auto corpus = selected_corpus(cfg);
  for (const CorpusFunction& c : corpus) {
    study.members.push_back(c.name);
    study.nonnegative.push_back(c.nonnegative);
  }
  const RadiusSchedule sched =
      RadiusSchedule::log_spaced(cfg.schedule.r_min, cfg.schedule.r_max, cfg.schedule.radii, cfg.schedule.z_samples);
  for (int n : {cfg.grid.nodes / 4, cfg.grid.nodes / 2, cfg.grid.nodes}) {
    MaximalLevel level;
    level.grid = config_grid(cfg, n);
    for (const CorpusFunction& c : corpus) level.f.push_back(sample(level.grid, c));
    level.m = maximal_fields(level.f, sched, true);
    level.mask = interior_mask(*level.grid, cfg.schedule.r_max);
    study.levels.push_back(std::move(level));
  }
  return study;
}

std::vector<double> weak_type_levels(const RunConfig& cfg, const RealField& f) {
  const double top = lp_norm(f.grid(), f, kInfinityNorm);
  return log_space(cfg.schedule.level_low * top, cfg.schedule.level_high * top, cfg.schedule.levels);
}

namespace {

std::string study_label(const MaximalStudy& s, const RunConfig& cfg) {
  std::string out;
  for (const MaximalLevel& l : s.levels) out += (out.empty() ? "" : ", ") + std::to_string(l.grid->counts()[0]);
  return "grids " + out + " on extent " + fmt(cfg.grid.extent) + ", margin " + fmt(cfg.schedule.r_max);
}

}  // namespace

CriterionResult check_weak_type(const RunConfig& cfg, const MaximalStudy& study) {
  CriterionResult r{10, "weak type surrogate", {}};
  if (study.levels.empty()) {
    r.entries.push_back(skipped(10, "weak type constants", refs::weak_type, "alpha <= d/2 - 1"));
    return r;
  }
  const std::string label = study_label(study, cfg);
  for (std::size_t k = 0; k < study.members.size(); ++k) {
    std::vector<double> constants;
    for (const MaximalLevel& l : study.levels) {
      const double c = weak_type_constant(l.f[k], l.m[k].uncentered, weak_type_levels(cfg, l.f[k]), l.mask);
      constants.push_back(c);
      const std::string name = study.members[k] + " weak type constant n=" + std::to_string(l.grid->counts()[0]);
      r.entries.push_back(bounded(10, name, refs::weak_type, c, 0.0, kInf, grid_label(*l.grid)));
    }
    const std::string name = study.members[k] + " weak type constant spread";
    if (study.nonnegative[k]) {
      r.entries.push_back(bounded(10, name, refs::weak_type, spread(constants), 0.0, cfg.tolerances.refinement_stability, label));
    } else {
      r.entries.push_back(logged(10, name, refs::weak_type, spread(constants), label + ", signed member"));
    }
  }
  return r;
}

CriterionResult check_strong_type(const RunConfig& cfg, const MaximalStudy& study) {
  CriterionResult r{11, "strong type surrogate", {}};
  if (study.levels.empty()) {
    r.entries.push_back(skipped(11, "strong type ratios", refs::strong_type, "alpha <= d/2 - 1"));
    r.entries.push_back(skipped(0, "domination constants", refs::domination, "alpha <= d/2 - 1"));
    return r;
  }
  const std::string label = study_label(study, cfg);
  for (std::size_t k = 0; k < study.members.size(); ++k) {
    const std::string& m = study.members[k];
    for (double q : {1.5, 2.0, 4.0}) {
      std::vector<double> ratios;
      for (const MaximalLevel& l : study.levels) {
        const double v = lp_operator_ratio(l.f[k], l.m[k].uncentered, q, l.mask);
        ratios.push_back(v);
        r.entries.push_back(bounded(11, m + " " + n_label("ratio", q) + " n=" + std::to_string(l.grid->counts()[0]),
                                    refs::strong_type, v, 0.0, kInf, grid_label(*l.grid)));
      }
      r.entries.push_back(bounded(11, m + " " + n_label("ratio", q) + " spread", refs::strong_type, spread(ratios), 0.0,
                                  cfg.tolerances.refinement_stability, label));
    }
    std::vector<double> dominations;
    for (const MaximalLevel& l : study.levels) {
      const double top = lp_norm(l.f[k].grid(), l.f[k], kInfinityNorm);
      const auto mv = l.m[k].uncentered.values();
      const auto bv = l.m[k].ball_average->values();
      int above = 0;
      double c = 0.0;
      for (std::size_t i = 0; i < mv.size(); ++i) {
        if (mv[i] > top) ++above;
        if (l.mask[i] && bv[i] > 0.0) c = std::max(c, mv[i] / bv[i]);
      }
      const std::string n = std::to_string(l.grid->counts()[0]);
      r.entries.push_back(bounded(11, m + " nodes with M f > sup|f| n=" + n, refs::strong_type, above, 0.0, 0.0,
                                  grid_label(*l.grid)));
      dominations.push_back(c);
      r.entries.push_back(logged(0, m + " domination constant n=" + n, refs::domination, c, grid_label(*l.grid)));
    }
    r.entries.push_back(bounded(0, m + " domination constant spread", refs::domination, spread(dominations), 0.0,
                                cfg.tolerances.domination_stability, label));
  }
  return r;
}

CriterionResult check_plancherel(const RunConfig& cfg) {
  CriterionResult r{12, "Plancherel", {}};
  const WeinsteinParams& p = cfg.params;
  const int d = p.d();
  const GridPtr grid = config_grid(cfg, cfg.grid.nodes);
  std::vector<double> widths(static_cast<std::size_t>(d - 1), cfg.spectral.extent);
  std::vector<int> counts(static_cast<std::size_t>(d - 1), cfg.spectral_lateral());
  counts.push_back(cfg.spectral_depth());
  const auto spectral = std::make_shared<const HalfSpaceGrid>(p, widths, cfg.spectral.extent, counts);
  const RealField f = sample(grid, gaussian_member(p, corpus_gaussian_sigma(cfg.grid.extent)));
  const PlancherelResult pr = plancherel_check(f, spectral);
  r.entries.push_back(bounded(12, "Plancherel relative gap, Gaussian", refs::plancherel, pr.gap, 0.0, cfg.tolerances.plancherel,
                              grid_label(*grid) + "; spectral " + grid_label(*spectral)));

  // Inversion needs an integrable transform; the indicator's is marginal, so
  // round-trip errors are logged only.
  const GridPtr target = config_grid(cfg, 16);
  const auto corpus = build_corpus(p, cfg.grid.extent, cfg.seed);
  for (const char* name : {"gaussian", "indicator"}) {
    const CorpusFunction& c = member(corpus, name);
    const ComplexField back = inverse_transform(forward_transform(sample(grid, c), spectral), target);
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < target->size(); ++i) {
      const double v = c.eval(target->node(i));
      scale = std::max(scale, std::fabs(v));
      err = std::max(err, std::abs(back[i] - v));
    }
    r.entries.push_back(logged(0, std::string("inversion round-trip error over sup, ") + name, refs::inversion, err / scale,
                               grid_label(*target) + " from " + grid_label(*grid) + "; spectral " + grid_label(*spectral)));
  }
  return r;
}

CriterionResult check_eigenfunction(const RunConfig& cfg) {
  CriterionResult r{13, "kernel eigenfunction", {}};
  const WeinsteinParams& p = cfg.params;
  const int d = p.d();
  const Point lambda = probe_direction(d);
  const double lam2 = lambda.norm2();
  std::vector<double> hs;
  std::vector<double> residuals;
  std::string label;
  for (int inv_h : {32, 64, 128}) {
    std::vector<double> widths(static_cast<std::size_t>(d - 1), 2.0);
    std::vector<int> counts(static_cast<std::size_t>(d - 1), 4 * inv_h);
    counts.push_back(2 * inv_h);
    const auto grid = std::make_shared<const HalfSpaceGrid>(p, widths, 2.0, counts);
    const ComplexField psi = ComplexField::sample(grid, [&](const Point& x) { return weinstein_kernel(p, lambda, x); });
    const auto lb = apply_laplace_bessel(psi);
    double res = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      if (lb.interior[i]) res = std::max(res, std::abs(lb.values[i] + lam2 * psi[i]));
    }
    hs.push_back(1.0 / inv_h);
    residuals.push_back(res);
    label = grid_label(*grid);
    r.entries.push_back(logged(13, "eigen residual h=1/" + std::to_string(inv_h), refs::eigenfunction, res, label));
  }
  r.entries.push_back(bounded(13, "eigen residual order", refs::eigenfunction, log_slope(hs, residuals),
                              cfg.tolerances.slope_low, cfg.tolerances.slope_high, "h = 1/32, 1/64, 1/128"));
  r.entries.push_back(bounded(13, "eigen residual over |lambda|^2 at h=1/128", refs::eigenfunction, residuals.back() / lam2,
                              0.0, cfg.tolerances.eigen_residual, label));
  return r;
}

CriterionResult check_vitali(const RunConfig& cfg) {
  CriterionResult r{14, "Vitali selection", {}};
  const WeinsteinParams& p = cfg.params;
  const int d = p.d();
  auto g = stream(cfg.seed, 14);
  int bad = 0;
  double worst = 0.0;
  double kappa = kInf;
  for (int fam = 0; fam < 100; ++fam) {
    const int count = 1 + static_cast<int>(unit_uniform(g()) * 200.0);
    std::vector<BallSpec> balls;
    for (int i = 0; i < count; ++i) {
      Point c(d);
      for (int j = 0; j + 1 < d; ++j) c[j] = draw(g, 0.0, 10.0);
      c.last() = draw(g, 0.0, 5.0);
      balls.emplace_back(c, draw_log(g, 0.05, 2.0));
    }
    const auto sel = vitali_select(balls);
    const VitaliCheck check = vitali_verify(balls, sel);
    if (!check.disjoint || !check.covered) ++bad;
    worst = std::max(worst, check.worst_dilation);
    double selected = 0.0;
    double all = 0.0;
    for (const BallSpec& b : balls) all += box_measure(p, b.center, b.radius);
    for (std::size_t i : sel) selected += box_measure(p, balls[i].center, balls[i].radius);
    kappa = std::min(kappa, selected / all);
  }
  const std::string label = "100 families of 1-200 balls, radii log-uniform in [0.05,2]";
  r.entries.push_back(bounded(14, "families failing disjointness or 5-fold cover", refs::vitali, bad, 0.0, 0.0, label));
  r.entries.push_back(bounded(14, "worst covering dilation", refs::vitali, worst, 0.0, 5.0, label));
  r.entries.push_back(logged(0, "selected over total cylinder measure, min", refs::vitali, kappa, label));
  return r;
}

VerifyOutcome run_verify(const RunConfig& cfg) {
  cfg.validate();
  VerifyOutcome out;
  auto add = [&](const CriterionResult& c) { out.report.append(c.entries); };
  add(check_ball_measure(cfg));
  add(check_indicator_transform(cfg));
  add(check_transform_bounds(cfg));
  add(check_kernel_normalization(cfg));
  add(check_translation(cfg));
  add(check_convolution(cfg));
  add(check_ball_translate_support(cfg));
  add(check_decay(cfg));
  add(check_volume_ratio(cfg));
  out.study = run_maximal_study(cfg);
  add(check_weak_type(cfg, out.study));
  add(check_strong_type(cfg, out.study));
  add(check_plancherel(cfg));
  add(check_eigenfunction(cfg));
  add(check_vitali(cfg));
  const auto problems = lint_report(out.report);
  out.report.add(bounded(0, "report lint problems", refs::plumbing, static_cast<double>(problems.size()), 0.0, 0.0,
                         std::to_string(out.report.entries.size()) + " entries"));
  return out;
}

std::vector<PlotField> plot_fields(const RunConfig& cfg, const MaximalStudy& study) {
  std::vector<PlotField> out;
  if (study.levels.empty()) return out;
  const MaximalLevel& l = study.levels.front();
  for (std::size_t k = 0; k < study.members.size(); ++k) {
    out.push_back({study.members[k], l.f[k], l.m[k].uncentered, l.m[k].ball_average, weak_type_levels(cfg, l.f[k])});
  }
  return out;
}

void emit_plot_data(const std::vector<PlotField>& fields, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  const auto index_path = dir / "plot_index.csv";
  std::ofstream index(index_path, std::ios::binary | std::ios::trunc);
  if (!index) throw IoError("cannot open '" + index_path.string() + "' for writing");
  index << "file,member,kind\n";
  for (const PlotField& pf : fields) {
    const std::string values_file = "maximal_" + pf.member + ".csv";
    std::vector<std::string> names{"f", "M"};
    std::vector<std::span<const double>> cols{pf.f.values(), pf.m.values()};
    if (pf.m_ball) {
      names.push_back("M_ball");
      cols.push_back(pf.m_ball->values());
    }
    write_node_csv(dir / values_file, pf.f.grid(), names, cols);
    index << values_file << ',' << pf.member << ",values\n";

    const std::string dist_file = "distribution_" + pf.member + ".csv";
    const auto dist_path = dir / dist_file;
    std::ofstream dist(dist_path, std::ios::binary | std::ios::trunc);
    if (!dist) throw IoError("cannot open '" + dist_path.string() + "' for writing");
    dist << "level,nu_M,nu_M_ball\n";
    for (double level : pf.levels) {
      dist << format_double(level) << ',' << format_double(distribution_function(pf.m, level)) << ','
           << (pf.m_ball ? format_double(distribution_function(*pf.m_ball, level)) : std::string("nan")) << '\n';
    }
    if (!dist) throw IoError("write failed: '" + dist_path.string() + "'");
    index << dist_file << ',' << pf.member << ",distribution\n";
  }
  if (!index) throw IoError("write failed: '" + index_path.string() + "'");
}

}  // namespace weinstein
