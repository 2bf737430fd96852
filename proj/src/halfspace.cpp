#include "weinstein/halfspace.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <numbers>
#include <sstream>

#include "weinstein/special_fn.hpp"

namespace weinstein {

WeinsteinParams::WeinsteinParams(double alpha, int d) : alpha_(alpha), d_(d) {
  if (!std::isfinite(alpha) || alpha <= -0.5) {
    throw std::domain_error("WeinsteinParams: alpha must be finite and > -1/2");
  }
  if (d < 2 || d > kMaxDim) {
    throw std::domain_error("WeinsteinParams: dimension must lie in [2, " + std::to_string(kMaxDim) + "]");
  }
  const double half_lateral = 0.5 * (d - 1);
  density_constant_ = std::exp(-(half_lateral * std::log(2.0 * std::numbers::pi) + alpha * std::numbers::ln2 +
                                 log_gamma(alpha + 1.0)));
  radial_constant_ =
      std::exp(-((alpha + half_lateral) * std::numbers::ln2 + log_gamma(alpha + 0.5 * (d + 1))));
}

Point::Point(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Point: unsupported dimension");
}

Point::Point(std::initializer_list<double> coords) : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(std::span<const double> coords) : Point(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

double Point::lateral_norm2() const {
  double s = 0.0;
  for (int i = 0; i + 1 < dim_; ++i) s += (*this)[i] * (*this)[i];
  return s;
}

double Point::norm2() const { return lateral_norm2() + last() * last(); }

bool operator==(const Point& a, const Point& b) {
  if (a.dim_ != b.dim_) return false;
  for (int i = 0; i < a.dim_; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

double lateral_distance2(const Point& a, const Point& b) {
  double s = 0.0;
  for (int i = 0; i + 1 < a.dim(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double distance2(const Point& a, const Point& b) {
  const double t = a.last() - b.last();
  return lateral_distance2(a, b) + t * t;
}

BallSpec::BallSpec(Point c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("BallSpec: radius must be positive");
  if (c.dim() < 2 || c.last() < 0.0) throw std::invalid_argument("BallSpec: center must lie in the closed half-space");
}

HalfSpaceGrid::HalfSpaceGrid(WeinsteinParams params, std::vector<double> half_widths, double depth,
                             std::vector<int> counts)
    : params_(params), half_widths_(std::move(half_widths)), depth_(depth), counts_(std::move(counts)) {
  const int d = params_.d();
  if (static_cast<int>(half_widths_.size()) != d - 1 || static_cast<int>(counts_.size()) != d) {
    throw std::invalid_argument("HalfSpaceGrid: extents/counts do not match the dimension");
  }
  for (double w : half_widths_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("HalfSpaceGrid: extents must be positive");
  }
  if (!(depth_ > 0.0) || !std::isfinite(depth_)) throw std::invalid_argument("HalfSpaceGrid: depth must be positive");
  for (int c : counts_) {
    if (c < 1) throw std::invalid_argument("HalfSpaceGrid: counts must be positive");
  }

  spacing_.resize(static_cast<std::size_t>(d));
  axis_nodes_.resize(static_cast<std::size_t>(d));
  lateral_cell_ = params_.density_constant();
  lateral_size_ = 1;
  for (int a = 0; a < d; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const int n = counts_[ua];
    const bool lateral = a + 1 < d;
    const double lo = lateral ? -half_widths_[ua] : 0.0;
    const double length = lateral ? 2.0 * half_widths_[ua] : depth_;
    const double h = length / n;
    spacing_[ua] = h;
    auto& nodes = axis_nodes_[ua];
    nodes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = lo + (i + 0.5) * h;
    if (lateral) {
      lateral_cell_ *= h;
      lateral_size_ *= static_cast<std::size_t>(n);
    }
  }

  // Exact x_d cell integrals of t^(2alpha+1): (b^k - a^k)/k with k = 2alpha+2.
  const int nd = counts_.back();
  const double hd = spacing_.back();
  const double k = params_.weight_exponent() + 1.0;
  depth_weights_.resize(static_cast<std::size_t>(nd));
  double lower = 0.0;
  for (int q = 0; q < nd; ++q) {
    const double upper = std::pow((q + 1) * hd, k);
    depth_weights_[static_cast<std::size_t>(q)] = (upper - lower) / k;
    lower = upper;
  }
  size_ = lateral_size_ * static_cast<std::size_t>(nd);
}

std::shared_ptr<const HalfSpaceGrid> HalfSpaceGrid::cube(WeinsteinParams params, double extent, int n) {
  const int d = params.d();
  return std::make_shared<const HalfSpaceGrid>(params, std::vector<double>(static_cast<std::size_t>(d - 1), extent),
                                               extent, std::vector<int>(static_cast<std::size_t>(d), n));
}

double HalfSpaceGrid::coordinate(int axis, int i) const {
  return axis_nodes_[static_cast<std::size_t>(axis)][static_cast<std::size_t>(i)];
}

std::array<int, kMaxDim> HalfSpaceGrid::lateral_multi(std::size_t lateral) const {
  std::array<int, kMaxDim> m{};
  for (int a = dim() - 2; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(counts_[static_cast<std::size_t>(a)]);
    m[static_cast<std::size_t>(a)] = static_cast<int>(lateral % n);
    lateral /= n;
  }
  return m;
}

std::size_t HalfSpaceGrid::lateral_flat(std::span<const int> multi) const {
  std::size_t idx = 0;
  for (int a = 0; a + 1 < dim(); ++a) {
    const int n = counts_[static_cast<std::size_t>(a)];
    const int i = multi[static_cast<std::size_t>(a)];
    if (i < 0 || i >= n) return npos;
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  }
  return idx;
}

Point HalfSpaceGrid::node(std::size_t flat_index) const {
  Point p(dim());
  const auto multi = lateral_multi(lateral_of(flat_index));
  for (int a = 0; a + 1 < dim(); ++a) p[a] = coordinate(a, multi[static_cast<std::size_t>(a)]);
  p.last() = coordinate(dim() - 1, depth_of(flat_index));
  return p;
}

bool HalfSpaceGrid::contains(const Point& x) const {
  if (x.dim() != dim()) return false;
  for (int a = 0; a + 1 < dim(); ++a) {
    if (std::fabs(x[a]) > half_widths_[static_cast<std::size_t>(a)]) return false;
  }
  return x.last() >= 0.0 && x.last() <= depth_;
}

bool operator==(const HalfSpaceGrid& a, const HalfSpaceGrid& b) {
  return a.params_ == b.params_ && a.half_widths_ == b.half_widths_ && a.depth_ == b.depth_ && a.counts_ == b.counts_;
}

void require_same_grid(const HalfSpaceGrid& a, const HalfSpaceGrid& b, const char* what) {
  if (&a != &b && !(a == b)) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
  }
}

RealField real_part(const ComplexField& f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i].real();
  return RealField(f.grid_ptr(), std::move(v));
}

ComplexField to_complex(const RealField& f) {
  std::vector<std::complex<double>> v(f.values().begin(), f.values().end());
  return ComplexField(f.grid_ptr(), std::move(v));
}

RealField operator+(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "operator+");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return RealField(a.grid_ptr(), std::move(v));
}

RadialProfile::RadialProfile(std::function<double(double)> eval, double support, std::vector<double> breakpoints,
                             bool truncated)
    : eval_(std::move(eval)), support_(support), breakpoints_(std::move(breakpoints)), truncated_(truncated) {
  if (!eval_) throw std::invalid_argument("RadialProfile: empty evaluator");
  if (!(support_ > 0.0) || !std::isfinite(support_)) {
    throw std::invalid_argument("RadialProfile: support radius must be positive and finite");
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
  std::erase_if(breakpoints_, [&](double b) { return !(b > 0.0 && b < support_); });
}

RadialProfile RadialProfile::from_samples(std::vector<double> radii, std::vector<double> values) {
  if (radii.empty() || radii.size() != values.size()) {
    throw std::invalid_argument("RadialProfile: radii and values must be nonempty and of equal length");
  }
  if (!(radii.front() > 0.0)) throw std::invalid_argument("RadialProfile: radii must start above zero");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || !std::isfinite(values[i])) {
      throw std::invalid_argument("RadialProfile: non-finite sample");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("RadialProfile: radii must be strictly increasing");
    }
  }
  auto r = std::make_shared<const std::vector<double>>(std::move(radii));
  auto v = std::make_shared<const std::vector<double>>(std::move(values));
  auto eval = [r, v](double x) {
    const auto& rr = *r;
    const auto& vv = *v;
    if (x <= rr.front()) return vv.front();
    if (x >= rr.back()) return x > rr.back() ? 0.0 : vv.back();
    const auto it = std::upper_bound(rr.begin(), rr.end(), x);
    const auto i = static_cast<std::size_t>(it - rr.begin());
    const double t = (x - rr[i - 1]) / (rr[i] - rr[i - 1]);
    return (1.0 - t) * vv[i - 1] + t * vv[i];
  };
  const double support = r->back();
  return RadialProfile(std::move(eval), support, std::vector<double>(r->begin(), r->end()));
}

double measure_density(const WeinsteinParams& params, const Point& x) {
  const double xd = x.last();
  if (xd < 0.0) throw std::domain_error("measure_density: x_d must be nonnegative");
  if (xd == 0.0) return 0.0;
  return params.density_constant() * std::pow(xd, params.weight_exponent());
}

double ball_measure(const WeinsteinParams& params, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::domain_error("ball_measure: radius must be positive");
  const double a = params.alpha();
  const int d = params.d();
  const double power = 2.0 * a + d + 1.0;
  const double log_value = power * std::log(eps) -
                           ((a + 0.5 * (d - 1)) * std::numbers::ln2 + std::log(power) + log_gamma(a + 0.5 * (d + 1)));
  return std::exp(log_value);
}

double euclidean_ball_volume(int n, double r) {
  const double half = 0.5 * n;
  return std::exp(half * std::log(std::numbers::pi) - log_gamma(half + 1.0) + n * std::log(r));
}

double box_measure(const WeinsteinParams& params, const Point& x, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::domain_error("box_measure: radius must be positive");
  if (x.last() < 0.0) throw std::domain_error("box_measure: x_d must be nonnegative");
  const double k = params.weight_exponent() + 1.0;
  const double top = std::pow(x.last() + eps, k);
  const double bottom = std::pow(std::max(0.0, x.last() - eps), k);
  return params.density_constant() * euclidean_ball_volume(params.d() - 1, eps) * (top - bottom) / k;
}

template <class T>
T integrate(const HalfSpaceGrid& grid, const GridFunction<T>& f) {
  require_same_grid(grid, f.grid(), "integrate");
  CompensatedSum<T> sum;
  for (std::size_t i = 0; i < f.size(); ++i) sum.add(f[i] * grid.weight(i));
  return sum.value();
}

template double integrate(const HalfSpaceGrid&, const RealField&);
template std::complex<double> integrate(const HalfSpaceGrid&, const ComplexField&);

double radial_integrate(const WeinsteinParams& params, const RadialProfile& profile, double tolerance,
                        double tail_tolerance) {
  using boost::math::quadrature::gauss_kronrod;
  const double power = 2.0 * params.alpha() + params.d();
  auto integrand = [&](double r) { return r > 0.0 ? profile(r) * std::pow(r, power) : 0.0; };

  std::vector<double> cuts{0.0};
  for (double b : profile.breakpoints()) cuts.push_back(b);
  cuts.push_back(profile.support());

  CompensatedSum<double> total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    total.add(gauss_kronrod<double, 31>::integrate(integrand, cuts[i], cuts[i + 1], 20, tolerance, &err));
  }
  const double value = total.value();
  if (profile.truncated()) {
    double err = 0.0;
    const double outer =
        gauss_kronrod<double, 31>::integrate(integrand, 0.9 * profile.support(), profile.support(), 20, tolerance, &err);
    if (std::fabs(outer) > tail_tolerance * std::fabs(value)) {
      std::ostringstream msg;
      msg << "radial_integrate: profile has not decayed by r = " << profile.support() << " (outer contribution "
          << outer << " of " << value << ")";
      throw std::runtime_error(msg.str());
    }
  }
  return params.radial_constant() * value;
}

namespace {

template <class T, class Pred>
double lp_norm_impl(const HalfSpaceGrid& grid, const GridFunction<T>& f, double p, Pred keep) {
  require_same_grid(grid, f.grid(), "lp_norm");
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (keep(i)) m = std::max(m, std::abs(f[i]));
    }
    return m;
  }
  CompensatedSum<double> sum;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!keep(i)) continue;
    const double a = std::abs(f[i]);
    if (a == 0.0) continue;
    const double ap = p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p));
    sum.add(ap * grid.weight(i));
  }
  const double s = sum.value();
  return p == 1.0 ? s : (p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p));
}

}  // namespace

template <class T>
double lp_norm(const HalfSpaceGrid& grid, const GridFunction<T>& f, double p) {
  return lp_norm_impl(grid, f, p, [](std::size_t) { return true; });
}

template <class T>
double lp_norm(const HalfSpaceGrid& grid, const GridFunction<T>& f, double p, std::span<const unsigned char> mask) {
  if (mask.size() != f.size()) throw std::invalid_argument("lp_norm: mask size mismatch");
  return lp_norm_impl(grid, f, p, [&](std::size_t i) { return mask[i] != 0; });
}

template double lp_norm(const HalfSpaceGrid&, const RealField&, double);
template double lp_norm(const HalfSpaceGrid&, const ComplexField&, double);
template double lp_norm(const HalfSpaceGrid&, const RealField&, double, std::span<const unsigned char>);
template double lp_norm(const HalfSpaceGrid&, const ComplexField&, double, std::span<const unsigned char>);

}  // namespace weinstein
