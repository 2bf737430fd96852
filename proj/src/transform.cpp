#include "weinstein/transform.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "weinstein/special_fn.hpp"

namespace weinstein {

using cplx = std::complex<double>;

cplx weinstein_kernel(const WeinsteinParams& params, const Point& lambda, const Point& x) {
  double phase = 0.0;
  for (int i = 0; i + 1 < params.d(); ++i) phase += x[i] * lambda[i];
  const double radial = normalized_bessel(BesselOrder(params.alpha()), x.last() * lambda.last());
  return {radial * std::cos(phase), -radial * std::sin(phase)};
}

namespace {

// out[o, m, i] = sum_k e[m, k] in[o, k, i] where k runs over `axis`.
std::vector<cplx> contract_axis(const std::vector<cplx>& in, std::vector<std::size_t>& shape, std::size_t axis,
                                const std::vector<cplx>& e, std::size_t m_count) {
  std::size_t outer = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= shape[a];
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
  const std::size_t k_count = shape[axis];
  std::vector<cplx> out(outer * m_count * inner);
  const auto total = static_cast<std::ptrdiff_t>(outer * m_count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t om = 0; om < total; ++om) {
    const auto o = static_cast<std::size_t>(om) / m_count;
    const auto m = static_cast<std::size_t>(om) % m_count;
    cplx* dst = &out[(o * m_count + m) * inner];
    for (std::size_t k = 0; k < k_count; ++k) {
      const cplx c = e[m * k_count + k];
      const cplx* src = &in[(o * k_count + k) * inner];
      for (std::size_t i = 0; i < inner; ++i) dst[i] += c * src[i];
    }
  }
  shape[axis] = m_count;
  return out;
}

// sum over source nodes y of v(y) w(y) exp(sign i <y', t'>) j_alpha(y_d t_d) at every target node t.
std::vector<cplx> separable_sum(std::span<const cplx> values, const HalfSpaceGrid& source,
                                const HalfSpaceGrid& target, double sign) {
  const int d = source.dim();
  if (target.dim() != d) throw std::invalid_argument("transform: dimension mismatch");
  std::vector<std::size_t> shape;
  for (int c : source.counts()) shape.push_back(static_cast<std::size_t>(c));

  std::vector<cplx> data(values.begin(), values.end());
  for (int a = 0; a + 1 < d; ++a) {
    const auto src_nodes = source.axis_nodes(a);
    const auto dst_nodes = target.axis_nodes(a);
    std::vector<cplx> e(dst_nodes.size() * src_nodes.size());
    for (std::size_t m = 0; m < dst_nodes.size(); ++m) {
      for (std::size_t k = 0; k < src_nodes.size(); ++k) {
        const double phase = sign * dst_nodes[m] * src_nodes[k];
        e[m * src_nodes.size() + k] = {std::cos(phase), std::sin(phase)};
      }
    }
    data = contract_axis(data, shape, static_cast<std::size_t>(a), e, dst_nodes.size());
  }

  const BesselOrder order(source.params().alpha());
  const auto src_depth = source.axis_nodes(d - 1);
  const auto dst_depth = target.axis_nodes(d - 1);
  std::vector<double> bessel(dst_depth.size() * src_depth.size());
  const auto rows = static_cast<std::ptrdiff_t>(dst_depth.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t l = 0; l < rows; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    for (std::size_t q = 0; q < src_depth.size(); ++q) {
      bessel[ul * src_depth.size() + q] = source.lateral_factor() * source.depth_weight(static_cast<int>(q)) *
                                          normalized_bessel(order, dst_depth[ul] * src_depth[q]);
    }
  }
  std::vector<cplx> b(bessel.begin(), bessel.end());
  data = contract_axis(data, shape, static_cast<std::size_t>(d - 1), b, dst_depth.size());
  return data;
}

template <class T>
std::vector<cplx> as_complex(const GridFunction<T>& f) {
  return std::vector<cplx>(f.values().begin(), f.values().end());
}

}  // namespace

template <class T>
ComplexField forward_transform(const GridFunction<T>& f, const SpectralPtr& spectral) {
  if (!spectral || spectral->size() == 0) throw std::invalid_argument("forward_transform: empty spectral grid");
  if (!(spectral->params() == f.grid().params())) {
    throw std::invalid_argument("forward_transform: spectral grid parameters differ");
  }
  const auto values = as_complex(f);
  return ComplexField(spectral, separable_sum(values, f.grid(), *spectral, -1.0));
}

template ComplexField forward_transform(const RealField&, const SpectralPtr&);
template ComplexField forward_transform(const ComplexField&, const SpectralPtr&);

ComplexField inverse_transform(const ComplexField& spectrum, const GridPtr& grid) {
  if (!grid) throw std::invalid_argument("inverse_transform: null grid");
  if (!(grid->params() == spectrum.grid().params())) {
    throw std::invalid_argument("inverse_transform: grid parameters differ");
  }
  return ComplexField(grid, separable_sum(spectrum.values(), spectrum.grid(), *grid, 1.0));
}

template <class T>
std::vector<cplx> forward_transform_at(const GridFunction<T>& f, std::span<const Point> lambdas) {
  const HalfSpaceGrid& g = f.grid();
  const int d = g.dim();
  const int nd = g.depth_count();
  const BesselOrder order(g.params().alpha());
  std::vector<cplx> out(lambdas.size());
  const auto count = static_cast<std::ptrdiff_t>(lambdas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t l = 0; l < count; ++l) {
    const Point& lam = lambdas[static_cast<std::size_t>(l)];
    if (lam.dim() != d) throw std::invalid_argument("forward_transform_at: dimension mismatch");
    std::vector<std::vector<cplx>> phase(static_cast<std::size_t>(d - 1));
    for (int a = 0; a + 1 < d; ++a) {
      for (double x : g.axis_nodes(a)) phase[static_cast<std::size_t>(a)].push_back(std::polar(1.0, -x * lam[a]));
    }
    std::vector<double> radial(static_cast<std::size_t>(nd));
    for (int q = 0; q < nd; ++q) {
      radial[static_cast<std::size_t>(q)] = g.depth_weight(q) * normalized_bessel(order, g.coordinate(d - 1, q) * lam.last());
    }
    CompensatedSum<cplx> sum;
    for (std::size_t lat = 0; lat < g.lateral_size(); ++lat) {
      const auto multi = g.lateral_multi(lat);
      cplx e(1.0, 0.0);
      for (int a = 0; a + 1 < d; ++a) e *= phase[static_cast<std::size_t>(a)][static_cast<std::size_t>(multi[static_cast<std::size_t>(a)])];
      cplx column(0.0, 0.0);
      for (int q = 0; q < nd; ++q) column += radial[static_cast<std::size_t>(q)] * cplx(f[g.flat(lat, q)]);
      sum.add(e * column);
    }
    out[static_cast<std::size_t>(l)] = g.lateral_factor() * sum.value();
  }
  return out;
}

template std::vector<cplx> forward_transform_at(const RealField&, std::span<const Point>);
template std::vector<cplx> forward_transform_at(const ComplexField&, std::span<const Point>);

template <class T>
cplx forward_transform_direct(const GridFunction<T>& f, const Point& lambda) {
  const HalfSpaceGrid& g = f.grid();
  CompensatedSum<cplx> sum;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sum.add(cplx(f[i]) * weinstein_kernel(g.params(), lambda, g.node(i)) * g.weight(i));
  }
  return sum.value();
}

template cplx forward_transform_direct(const RealField&, const Point&);
template cplx forward_transform_direct(const ComplexField&, const Point&);

double radial_transform(const WeinsteinParams& params, const RadialProfile& profile, double lambda_mag,
                        double tolerance) {
  if (!(lambda_mag >= 0.0) || !std::isfinite(lambda_mag)) {
    throw std::domain_error("radial_transform: |lambda| must be finite and nonnegative");
  }
  if (profile.truncated()) radial_integrate(params, profile);
  using boost::math::quadrature::gauss_kronrod;
  const BesselOrder order(params.radial_order());
  const double power = 2.0 * params.radial_order() + 1.0;
  auto integrand = [&](double r) {
    return r > 0.0 ? profile(r) * normalized_bessel(order, lambda_mag * r) * std::pow(r, power) : 0.0;
  };

  std::vector<double> cuts{0.0};
  const double support = profile.support();
  if (lambda_mag > 0.0) {
    const double step = std::numbers::pi / lambda_mag;
    for (double r = step; r < support; r += step) cuts.push_back(r);
  }
  cuts.insert(cuts.end(), profile.breakpoints().begin(), profile.breakpoints().end());
  cuts.push_back(support);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  CompensatedSum<double> total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    total.add(gauss_kronrod<double, 31>::integrate(integrand, cuts[i], cuts[i + 1], 15, tolerance, &err));
  }
  return params.radial_constant() * total.value();
}

double ball_indicator_transform(const WeinsteinParams& params, double eps, const Point& lambda) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::domain_error("ball_indicator_transform: radius must be positive");
  const double a = params.alpha();
  const int d = params.d();
  const double log_c = (2.0 * a + d + 1.0) * std::log(eps) -
                       ((a + 0.5 * (d + 1)) * std::numbers::ln2 + log_gamma(a + 0.5 * (d + 3)));
  return std::exp(log_c) * normalized_bessel(BesselOrder(a + 0.5 * d + 0.5), lambda.norm() * eps);
}

template <class T>
LaplaceBesselResult<T> apply_laplace_bessel(const GridFunction<T>& f) {
  const HalfSpaceGrid& g = f.grid();
  const int d = g.dim();
  for (int c : g.counts()) {
    if (c < 3) throw std::invalid_argument("apply_laplace_bessel: need at least 3 nodes per axis");
  }
  std::vector<std::size_t> stride(static_cast<std::size_t>(d));
  stride[static_cast<std::size_t>(d - 1)] = 1;
  for (int a = d - 2; a >= 0; --a) {
    stride[static_cast<std::size_t>(a)] =
        stride[static_cast<std::size_t>(a + 1)] * static_cast<std::size_t>(g.counts()[static_cast<std::size_t>(a + 1)]);
  }
  const double drift = g.params().weight_exponent();
  std::vector<T> out(g.size(), T{});
  std::vector<unsigned char> interior(g.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < n; ++si) {
    const auto i = static_cast<std::size_t>(si);
    const auto multi = g.lateral_multi(g.lateral_of(i));
    const int q = g.depth_of(i);
    bool inside = q > 0 && q + 1 < g.depth_count();
    for (int a = 0; inside && a + 1 < d; ++a) {
      const int m = multi[static_cast<std::size_t>(a)];
      inside = m > 0 && m + 1 < g.counts()[static_cast<std::size_t>(a)];
    }
    if (!inside) continue;
    T acc{};
    for (int a = 0; a < d; ++a) {
      const std::size_t s = stride[static_cast<std::size_t>(a)];
      const double h = g.spacing(a);
      acc += (f[i + s] - 2.0 * f[i] + f[i - s]) / (h * h);
    }
    const double h = g.spacing(d - 1);
    acc += drift / g.coordinate(d - 1, q) * (f[i + 1] - f[i - 1]) / (2.0 * h);
    out[i] = acc;
    interior[i] = 1;
  }
  return {GridFunction<T>(f.grid_ptr(), std::move(out)), std::move(interior)};
}

template LaplaceBesselResult<double> apply_laplace_bessel(const RealField&);
template LaplaceBesselResult<cplx> apply_laplace_bessel(const ComplexField&);

PlancherelResult plancherel_check(const RealField& f, const SpectralPtr& spectral) {
  const double spatial = std::pow(lp_norm(f.grid(), f, 2.0), 2);
  const ComplexField transformed = forward_transform(f, spectral);
  const double spec = std::pow(lp_norm(*spectral, transformed, 2.0), 2);
  const double gap = spatial == 0.0 ? (spec == 0.0 ? 0.0 : kInfinityNorm) : std::fabs(spec - spatial) / spatial;
  return {spatial, spec, gap};
}

}  // namespace weinstein
