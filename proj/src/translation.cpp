#include "weinstein/translation.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <numbers>

#include "weinstein/special_fn.hpp"

namespace weinstein {

void TranslationQuadrature::validate() const {
  if (theta_nodes < 8) throw std::invalid_argument("TranslationQuadrature: theta_nodes must be >= 8");
  if (!(tolerance > 0.0)) throw std::invalid_argument("TranslationQuadrature: tolerance must be positive");
  if (max_nodes < theta_nodes) throw std::invalid_argument("TranslationQuadrature: max_nodes below theta_nodes");
}

double theta_constant(double alpha) {
  return std::exp(log_gamma(alpha + 1.0) - 0.5 * std::log(std::numbers::pi) - log_gamma(alpha + 0.5));
}

namespace {

void require_positive_heights(double xd, double yd) {
  if (!(xd > 0.0) || !(yd > 0.0) || !std::isfinite(xd) || !std::isfinite(yd)) {
    throw std::domain_error("translation_weight: x_d and y_d must be positive");
  }
}

// W from inner = rho^2 - (x-y)^2 and outer = (x+y)^2 - rho^2, both positive.
double weight_from_products(double alpha, double xd, double yd, double rho, double inner, double outer) {
  const double log_w = log_gamma(alpha + 1.0) + (alpha - 0.5) * (std::log(outer) + std::log(inner)) -
                       (2.0 * alpha - 1.0) * std::numbers::ln2 - 0.5 * std::log(std::numbers::pi) -
                       log_gamma(alpha + 0.5) - 2.0 * alpha * std::log(xd * yd * rho);
  return std::exp(log_w);
}

// Distances to both support endpoints supplied separately, so the singular
// factors keep full relative accuracy near the endpoints.
double weight_from_gaps(double alpha, double xd, double yd, double rho, double gap_lo, double gap_hi) {
  const double lo = std::fabs(xd - yd);
  const double hi = xd + yd;
  return weight_from_products(alpha, xd, yd, rho, gap_lo * (rho + lo), gap_hi * (hi + rho));
}

}  // namespace

double translation_weight(const WeinsteinParams& params, double xd, double yd, double rho) {
  require_positive_heights(xd, yd);
  const double lo = std::fabs(xd - yd);
  const double hi = xd + yd;
  if (!(rho > lo && rho < hi)) return 0.0;
  return weight_from_gaps(params.alpha(), xd, yd, rho, rho - lo, hi - rho);
}

double kernel_normalization_theta(const WeinsteinParams& params, double xd, double yd, double tolerance) {
  require_positive_heights(xd, yd);
  const double alpha = params.alpha();
  // Along rho(theta): rho^2 - (x-y)^2 = 4xy sin^2(theta/2), (x+y)^2 - rho^2 = 4xy cos^2(theta/2).
  // complement is the signed distance to the nearer endpoint (negative near 0),
  // which keeps pi - theta exact near pi.
  auto integrand = [&](double theta, double complement) {
    const bool near_pi = complement > 0.0;
    const double sh = near_pi ? std::cos(0.5 * complement) : std::sin(0.5 * theta);
    const double ch = near_pi ? std::sin(0.5 * complement) : std::cos(0.5 * theta);
    const double sin_theta = near_pi ? std::sin(complement) : std::sin(theta);
    const double rho = std::sqrt((xd - yd) * (xd - yd) + 4.0 * xd * yd * sh * sh);
    const double inner = 4.0 * xd * yd * sh * sh;
    const double outer = 4.0 * xd * yd * ch * ch;
    if (!(inner > 0.0) || !(outer > 0.0)) return 0.0;
    const double w = weight_from_products(alpha, xd, yd, rho, inner, outer);
    const double jacobian = xd * yd * sin_theta / rho;
    return w * std::pow(rho, 2.0 * alpha + 1.0) * jacobian;
  };
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  return integrator.integrate(integrand, 0.0, std::numbers::pi, tolerance);
}

namespace {

template <class G>
double rho_integral(const WeinsteinParams& params, double xd, double yd, G&& g) {
  const double alpha = params.alpha();
  const double lo = std::fabs(xd - yd);
  const double hi = xd + yd;
  auto integrand = [&](double rho, double complement) {
    // complement is the signed distance to the nearer endpoint.
    const double gap_lo = complement < 0.0 ? -complement : rho - lo;
    const double gap_hi = complement < 0.0 ? hi - rho : complement;
    if (!(gap_lo > 0.0) || !(gap_hi > 0.0)) return 0.0;
    return g(rho) * weight_from_gaps(alpha, xd, yd, rho, gap_lo, gap_hi) * std::pow(rho, 2.0 * alpha + 1.0);
  };
  boost::math::quadrature::tanh_sinh<double> integrator(12);
  return integrator.integrate(integrand, lo, hi);
}

}  // namespace

double kernel_normalization_direct(const WeinsteinParams& params, double xd, double yd) {
  require_positive_heights(xd, yd);
  return rho_integral(params, xd, yd, [](double) { return 1.0; });
}

double translate_point_direct(const WeinsteinParams& params, const std::function<double(const Point&)>& f,
                              const Point& x, const Point& y) {
  Point z(x.dim());
  for (int i = 0; i + 1 < x.dim(); ++i) z[i] = x[i] + y[i];
  if (x.last() == 0.0 || y.last() == 0.0) {
    z.last() = std::max(x.last(), y.last());
    return f(z);
  }
  return rho_integral(params, x.last(), y.last(), [&](double rho) {
    Point p = z;
    p.last() = rho;
    return f(p);
  });
}

namespace {

constexpr double kSnap = 1e-9;

// Linear interpolation stencil at fractional node index u: nodes i0, i0+1
// with weights 1-t, t. Indices outside [0, n) carry zero value.
struct Stencil {
  int i0;
  double t;
};

Stencil make_stencil(double u) {
  double base = std::floor(u);
  double t = u - base;
  if (t < kSnap) {
    t = 0.0;
  } else if (t > 1.0 - kSnap) {
    t = 0.0;
    base += 1.0;
  }
  return {static_cast<int>(base), t};
}

// Fractional node index of lateral coordinate c on axis a.
double lateral_index(const HalfSpaceGrid& g, int a, double c) {
  return (c + g.half_widths()[static_cast<std::size_t>(a)]) / g.spacing(a) - 0.5;
}

// Column of f (all depth nodes) interpolated at the lateral point given by
// per-axis stencils.
void interpolate_column(const RealField& f, std::span<const Stencil> stencils, std::span<double> column) {
  const HalfSpaceGrid& g = f.grid();
  const int lat_dims = g.dim() - 1;
  const int nd = g.depth_count();
  std::fill(column.begin(), column.end(), 0.0);
  std::array<int, kMaxDim> idx{};
  for (int corner = 0; corner < (1 << lat_dims); ++corner) {
    double w = 1.0;
    for (int a = 0; a < lat_dims; ++a) {
      const bool up = (corner >> a) & 1;
      const Stencil& s = stencils[static_cast<std::size_t>(a)];
      w *= up ? s.t : 1.0 - s.t;
      idx[static_cast<std::size_t>(a)] = s.i0 + (up ? 1 : 0);
    }
    if (w == 0.0) continue;
    const std::size_t lat = g.lateral_flat(std::span<const int>(idx.data(), static_cast<std::size_t>(lat_dims)));
    if (lat == HalfSpaceGrid::npos) continue;
    for (int q = 0; q < nd; ++q) column[static_cast<std::size_t>(q)] += w * f[g.flat(lat, q)];
  }
}

void accumulate_depth_kernel(const HalfSpaceGrid& grid, double xd, double yd, const ThetaRule& rule,
                             std::vector<double>& kernel) {
  const int nd = grid.depth_count();
  const double h = grid.spacing(grid.dim() - 1);
  const double diff2 = (xd - yd) * (xd - yd);
  const double cross = 4.0 * xd * yd;
  std::fill(kernel.begin(), kernel.end(), 0.0);
  for (std::size_t k = 0; k < rule.weights.size(); ++k) {
    const double rho = std::sqrt(diff2 + cross * rule.sin2_half[k]);
    const double u = rho / h - 0.5;
    const double w = rule.weights[k];
    if (u <= 0.0) {
      kernel[0] += w;  // even reflection: f(-h/2) = f(h/2)
      continue;
    }
    const Stencil s = make_stencil(u);
    if (s.i0 < nd) kernel[static_cast<std::size_t>(s.i0)] += w * (1.0 - s.t);
    if (s.t > 0.0 && s.i0 + 1 < nd) kernel[static_cast<std::size_t>(s.i0 + 1)] += w * s.t;
  }
}

}  // namespace

std::vector<double> depth_kernel(const HalfSpaceGrid& grid, double xd, double yd, const TranslationQuadrature& quad) {
  quad.validate();
  const auto nd = static_cast<std::size_t>(grid.depth_count());
  const double alpha = grid.params().alpha();
  std::vector<double> previous(nd);
  std::vector<double> current(nd);
  int n = quad.theta_nodes;
  accumulate_depth_kernel(grid, xd, yd, *theta_rule(alpha, n), previous);
  while (2 * n <= quad.max_nodes) {
    n *= 2;
    accumulate_depth_kernel(grid, xd, yd, *theta_rule(alpha, n), current);
    double change = 0.0;
    double mass = 0.0;
    for (std::size_t j = 0; j < nd; ++j) {
      change += std::fabs(current[j] - previous[j]);
      mass += std::fabs(current[j]);
    }
    std::swap(previous, current);
    if (change <= quad.tolerance * std::max(1.0, mass)) break;
  }
  return previous;
}

RealField translate_grid(const RealField& f, const Point& x, const TranslationQuadrature& quad) {
  const HalfSpaceGrid& g = f.grid();
  if (!g.contains(x)) throw std::domain_error("translate_grid: translation point outside the grid box");
  const int d = g.dim();
  const int nd = g.depth_count();

  // Lateral shift by x' is the same fractional offset at every node.
  std::vector<double> shifted(g.size());
  std::vector<double> column(static_cast<std::size_t>(nd));
  std::vector<Stencil> stencils(static_cast<std::size_t>(d - 1));
  std::vector<Stencil> offsets(static_cast<std::size_t>(d - 1));
  for (int a = 0; a + 1 < d; ++a) offsets[static_cast<std::size_t>(a)] = make_stencil(x[a] / g.spacing(a));
  for (std::size_t lat = 0; lat < g.lateral_size(); ++lat) {
    const auto multi = g.lateral_multi(lat);
    for (int a = 0; a + 1 < d; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      stencils[ua] = {multi[ua] + offsets[ua].i0, offsets[ua].t};
    }
    interpolate_column(f, stencils, column);
    for (int q = 0; q < nd; ++q) shifted[g.flat(lat, q)] = column[static_cast<std::size_t>(q)];
  }
  if (x.last() == 0.0) return RealField(f.grid_ptr(), std::move(shifted));

  std::vector<std::vector<double>> kernels(static_cast<std::size_t>(nd));
#pragma omp parallel for schedule(dynamic)
  for (int q = 0; q < nd; ++q) {
    kernels[static_cast<std::size_t>(q)] = depth_kernel(g, x.last(), g.coordinate(d - 1, q), quad);
  }
  std::vector<double> out(g.size());
  const auto lat_count = static_cast<std::ptrdiff_t>(g.lateral_size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t sl = 0; sl < lat_count; ++sl) {
    const auto lat = static_cast<std::size_t>(sl);
    const double* src = &shifted[g.flat(lat, 0)];
    for (int q = 0; q < nd; ++q) {
      const auto& k = kernels[static_cast<std::size_t>(q)];
      double acc = 0.0;
      for (int j = 0; j < nd; ++j) acc += k[static_cast<std::size_t>(j)] * src[j];
      out[g.flat(lat, q)] = acc;
    }
  }
  return RealField(f.grid_ptr(), std::move(out));
}

double ball_translate(const WeinsteinParams& params, const Point& x, double eps, const Point& y) {
  return ball_translate_profile(params, lateral_distance2(x, y), eps, x.last(), y.last());
}

double ball_translate_profile(const WeinsteinParams& params, double lateral_dist2, double eps, double xd, double yd) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::domain_error("ball_translate: radius must be positive");
  if (xd < 0.0 || yd < 0.0) throw std::domain_error("ball_translate: points must lie in the closed half-space");
  const double s = eps * eps - lateral_dist2;
  const double lo = (xd - yd) * (xd - yd);
  const double hi = (xd + yd) * (xd + yd);
  if (s <= lo) return 0.0;
  if (s >= hi) return 1.0;
  const double denom = 2.0 * xd * yd;
  const double one_minus_cos = (s - lo) / denom;
  const double one_plus_cos = (hi - s) / denom;
  const double sin2 = std::min(1.0, one_minus_cos * one_plus_cos);
  const double half_ibeta = 0.5 * boost::math::ibeta(params.alpha() + 0.5, 0.5, sin2);
  // cos theta* >= 0 means theta* <= pi/2.
  return one_plus_cos >= one_minus_cos ? half_ibeta : 1.0 - half_ibeta;
}

namespace {

// Lateral offsets between two nodes: per axis o_a = m_x - m_y + (n_a - 1), flattened
// row-major over extents 2 n_a - 1. base(lat_x) - base(lat_y) + center is the
// flat offset index.
struct OffsetLayout {
  std::vector<std::size_t> extent;
  std::vector<std::size_t> stride;
  std::size_t size = 1;
  std::vector<std::ptrdiff_t> base;
  std::ptrdiff_t center = 0;

  explicit OffsetLayout(const HalfSpaceGrid& g) {
    const int lat_dims = g.dim() - 1;
    extent.resize(static_cast<std::size_t>(lat_dims));
    stride.resize(static_cast<std::size_t>(lat_dims));
    for (int a = lat_dims - 1; a >= 0; --a) {
      const auto ua = static_cast<std::size_t>(a);
      extent[ua] = 2 * static_cast<std::size_t>(g.counts()[ua]) - 1;
      stride[ua] = size;
      size *= extent[ua];
    }
    for (int a = 0; a < lat_dims; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      center += static_cast<std::ptrdiff_t>((static_cast<std::size_t>(g.counts()[ua]) - 1) * stride[ua]);
    }
    base.resize(g.lateral_size());
    for (std::size_t lat = 0; lat < g.lateral_size(); ++lat) {
      const auto multi = g.lateral_multi(lat);
      std::ptrdiff_t b = 0;
      for (int a = 0; a < lat_dims; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        b += static_cast<std::ptrdiff_t>(multi[ua]) * static_cast<std::ptrdiff_t>(stride[ua]);
      }
      base[lat] = b;
    }
  }

  // Lateral displacement x' - y' of flat offset o.
  Point displacement(const HalfSpaceGrid& g, std::size_t o) const {
    Point p(g.dim());
    for (std::size_t a = 0; a < extent.size(); ++a) {
      const auto k = static_cast<std::ptrdiff_t>((o / stride[a]) % extent[a]);
      const auto shift = static_cast<std::ptrdiff_t>(g.counts()[a]) - 1;
      p[static_cast<int>(a)] = static_cast<double>(k - shift) * g.spacing(static_cast<int>(a));
    }
    return p;
  }
};

// out(x) = sum_y w(y) g(y) H_{p(x) q(y)}[offset(x, y)], with row(p, q, H_pq) filling H.
template <class RowFill>
RealField convolve_with_rows(const RealField& g, const OffsetLayout& layout, RowFill&& row) {
  const HalfSpaceGrid& grid = g.grid();
  const int nd = grid.depth_count();
  const std::size_t nlat = grid.lateral_size();
  std::vector<double> out(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (int p = 0; p < nd; ++p) {
    std::vector<double> h(layout.size);
    std::vector<double> acc(nlat, 0.0);
    for (int q = 0; q < nd; ++q) {
      row(p, q, h);
      const double wq = grid.lateral_factor() * grid.depth_weight(q);
      for (std::size_t ly = 0; ly < nlat; ++ly) {
        const double gy = g[grid.flat(ly, q)] * wq;
        if (gy == 0.0) continue;
        const std::ptrdiff_t shift = layout.center - layout.base[ly];
        for (std::size_t lx = 0; lx < nlat; ++lx) {
          acc[lx] += gy * h[static_cast<std::size_t>(layout.base[lx] + shift)];
        }
      }
    }
    for (std::size_t lx = 0; lx < nlat; ++lx) out[grid.flat(lx, p)] = acc[lx];
  }
  return RealField(g.grid_ptr(), std::move(out));
}

}  // namespace

RealField convolve(const RealField& f, const RealField& g, const TranslationQuadrature& quad) {
  require_same_grid(f.grid(), g.grid(), "convolve");
  quad.validate();
  const HalfSpaceGrid& grid = g.grid();
  const int d = grid.dim();
  const int nd = grid.depth_count();
  const OffsetLayout layout(grid);

  // f at every lateral displacement, all depth nodes: table[o * nd + j].
  std::vector<double> table(layout.size * static_cast<std::size_t>(nd));
  std::vector<Stencil> stencils(static_cast<std::size_t>(d - 1));
  for (std::size_t o = 0; o < layout.size; ++o) {
    const Point disp = layout.displacement(grid, o);
    for (int a = 0; a + 1 < d; ++a) {
      stencils[static_cast<std::size_t>(a)] = make_stencil(lateral_index(grid, a, disp[a]));
    }
    interpolate_column(f, stencils, std::span<double>(&table[o * static_cast<std::size_t>(nd)], static_cast<std::size_t>(nd)));
  }

  std::vector<std::vector<double>> kernels(static_cast<std::size_t>(nd) * static_cast<std::size_t>(nd));
#pragma omp parallel for schedule(dynamic)
  for (int p = 0; p < nd; ++p) {
    for (int q = 0; q < nd; ++q) {
      kernels[static_cast<std::size_t>(p * nd + q)] =
          depth_kernel(grid, grid.coordinate(d - 1, p), grid.coordinate(d - 1, q), quad);
    }
  }

  return convolve_with_rows(g, layout, [&](int p, int q, std::vector<double>& h) {
    const auto& k = kernels[static_cast<std::size_t>(p * nd + q)];
    for (std::size_t o = 0; o < layout.size; ++o) {
      const double* col = &table[o * static_cast<std::size_t>(nd)];
      double acc = 0.0;
      for (int j = 0; j < nd; ++j) acc += k[static_cast<std::size_t>(j)] * col[j];
      h[o] = acc;
    }
  });
}

RealField convolve(const std::function<double(const Point&)>& f, const RealField& g,
                   const TranslationQuadrature& quad) {
  quad.validate();
  const HalfSpaceGrid& grid = g.grid();
  const int d = grid.dim();
  const OffsetLayout layout(grid);
  std::vector<Point> displacements;
  displacements.reserve(layout.size);
  for (std::size_t o = 0; o < layout.size; ++o) displacements.push_back(layout.displacement(grid, o));
  const double alpha = grid.params().alpha();

  return convolve_with_rows(g, layout, [&](int p, int q, std::vector<double>& h) {
    const double xd = grid.coordinate(d - 1, p);
    const double yd = grid.coordinate(d - 1, q);
    const double diff2 = (xd - yd) * (xd - yd);
    const double cross = 4.0 * xd * yd;
    auto fill = [&](int n, std::vector<double>& row) {
      const auto rule = theta_rule(alpha, n);
      for (std::size_t o = 0; o < layout.size; ++o) {
        Point z = displacements[o];
        double acc = 0.0;
        for (std::size_t k = 0; k < rule->weights.size(); ++k) {
          z.last() = std::sqrt(diff2 + cross * rule->sin2_half[k]);
          acc += rule->weights[k] * f(z);
        }
        row[o] = acc;
      }
    };
    int n = quad.theta_nodes;
    fill(n, h);
    std::vector<double> next(layout.size);
    while (2 * n <= quad.max_nodes) {
      n *= 2;
      fill(n, next);
      double change = 0.0;
      double scale = 1.0;
      for (std::size_t o = 0; o < layout.size; ++o) {
        change = std::max(change, std::fabs(next[o] - h[o]));
        scale = std::max(scale, std::fabs(next[o]));
      }
      std::swap(h, next);
      if (change <= quad.tolerance * scale) break;
    }
  });
}

}  // namespace weinstein
