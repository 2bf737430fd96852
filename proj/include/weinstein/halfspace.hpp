#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace weinstein {

inline constexpr int kMaxDim = 8;

/// Weight exponent alpha and ambient dimension d of the weighted half-space.
class WeinsteinParams {
 public:
  WeinsteinParams(double alpha, int d);

  double alpha() const { return alpha_; }
  int d() const { return d_; }

  /// alpha > d/2 - 1, the hypothesis under which translated ball
  /// indicators obey the (eps/x_d)^(2alpha+1) decay.
  bool strong_regime() const { return alpha_ > 0.5 * d_ - 1.0; }

  /// 2 alpha + 1, the power of x_d in the density.
  double weight_exponent() const { return 2.0 * alpha_ + 1.0; }

  /// 1 / ((2 pi)^((d-1)/2) 2^alpha Gamma(alpha+1)).
  double density_constant() const { return density_constant_; }

  /// 1 / (2^(alpha+(d-1)/2) Gamma(alpha+(d+1)/2)), the constant in front of
  /// the radial integral of F(r) r^(2alpha+d).
  double radial_constant() const { return radial_constant_; }

  /// Order alpha + (d-1)/2 of the Fourier-Bessel transform of radial functions.
  double radial_order() const { return alpha_ + 0.5 * (d_ - 1); }

  friend bool operator==(const WeinsteinParams&, const WeinsteinParams&) = default;

 private:
  double alpha_;
  int d_;
  double density_constant_;
  double radial_constant_;
};

/// Point of R^d, d <= kMaxDim, stored inline.
class Point {
 public:
  Point() = default;
  explicit Point(int dim);
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  int dim() const { return dim_; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  /// Last coordinate x_d.
  double last() const { return c_[static_cast<std::size_t>(dim_ - 1)]; }
  double& last() { return c_[static_cast<std::size_t>(dim_ - 1)]; }

  double lateral_norm2() const;
  double norm2() const;
  double norm() const { return std::sqrt(norm2()); }

  friend bool operator==(const Point& a, const Point& b);

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

double distance2(const Point& a, const Point& b);
double lateral_distance2(const Point& a, const Point& b);

/// Closed half-ball B+(center, radius).
struct BallSpec {
  Point center;
  double radius;

  BallSpec(Point c, double r);
};

/// Tensor grid on [-L_1, L_1] x ... x [-L_{d-1}, L_{d-1}] x (0, L_d].
///
/// Nodes are cell centered on every axis; x_d nodes start at h_d/2.
/// The x_d weight of a cell is the exact integral of x_d^(2alpha+1) over it,
/// so integrands constant in x_d across a cell are integrated exactly.
/// Node order is row-major with x_d fastest.
class HalfSpaceGrid {
 public:
  HalfSpaceGrid(WeinsteinParams params, std::vector<double> half_widths, double depth,
                std::vector<int> counts);

  /// Cube [-extent, extent]^(d-1) x (0, extent] with n nodes per axis.
  static std::shared_ptr<const HalfSpaceGrid> cube(WeinsteinParams params, double extent, int n);

  const WeinsteinParams& params() const { return params_; }
  int dim() const { return params_.d(); }
  const std::vector<int>& counts() const { return counts_; }
  const std::vector<double>& half_widths() const { return half_widths_; }
  double depth() const { return depth_; }

  std::size_t size() const { return size_; }
  std::size_t lateral_size() const { return lateral_size_; }
  int depth_count() const { return counts_.back(); }

  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  double coordinate(int axis, int i) const;
  std::span<const double> axis_nodes(int axis) const {
    return axis_nodes_[static_cast<std::size_t>(axis)];
  }

  /// Full nu_alpha weight of a node: lateral_factor() * depth_weight(q).
  double weight(std::size_t flat) const { return lateral_cell_ * depth_weights_[flat % depth_count()]; }
  /// Exact integral of t^(2alpha+1) over x_d cell q.
  double depth_weight(int q) const { return depth_weights_[static_cast<std::size_t>(q)]; }
  /// Density constant times the lateral cell volume.
  double lateral_factor() const { return lateral_cell_; }

  std::size_t flat(std::size_t lateral, int q) const {
    return lateral * static_cast<std::size_t>(depth_count()) + static_cast<std::size_t>(q);
  }
  std::size_t lateral_of(std::size_t flat) const { return flat / static_cast<std::size_t>(depth_count()); }
  int depth_of(std::size_t flat) const { return static_cast<int>(flat % static_cast<std::size_t>(depth_count())); }

  /// Lateral multi-index of a lateral flat index (axis 0 slowest).
  std::array<int, kMaxDim> lateral_multi(std::size_t lateral) const;
  /// Lateral flat index, or npos if any component is out of range.
  std::size_t lateral_flat(std::span<const int> multi) const;

  Point node(std::size_t flat) const;
  bool contains(const Point& x) const;

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  friend bool operator==(const HalfSpaceGrid& a, const HalfSpaceGrid& b);

 private:
  WeinsteinParams params_;
  std::vector<double> half_widths_;
  double depth_;
  std::vector<int> counts_;
  std::vector<double> spacing_;
  std::vector<std::vector<double>> axis_nodes_;
  std::vector<double> depth_weights_;
  double lateral_cell_ = 0.0;
  std::size_t size_ = 0;
  std::size_t lateral_size_ = 0;
};

using GridPtr = std::shared_ptr<const HalfSpaceGrid>;

template <class T>
inline bool is_finite_value(const T& v) {
  if constexpr (std::is_same_v<T, std::complex<double>>) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  } else {
    return std::isfinite(v);
  }
}

/// Scalar field sampled at the nodes of a HalfSpaceGrid.
template <class T>
class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("GridFunction: null grid");
    if (values_.size() != grid_->size()) {
      throw std::invalid_argument("GridFunction: value count does not match grid size");
    }
    for (const T& v : values_) {
      if (!is_finite_value(v)) throw std::invalid_argument("GridFunction: non-finite value");
    }
  }

  static GridFunction zeros(GridPtr grid) {
    std::vector<T> v(grid->size(), T{});
    return GridFunction(std::move(grid), std::move(v));
  }

  template <class F>
  static GridFunction sample(GridPtr grid, F&& f) {
    std::vector<T> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<T>(f(grid->node(i)));
    return GridFunction(std::move(grid), std::move(v));
  }

  const HalfSpaceGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const T> values() const { return values_; }
  const T& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  GridFunction scaled(T factor) const {
    std::vector<T> v(values_);
    for (T& x : v) x *= factor;
    return GridFunction(grid_, std::move(v));
  }

 private:
  GridPtr grid_;
  std::vector<T> values_;
};

using RealField = GridFunction<double>;
using ComplexField = GridFunction<std::complex<double>>;

RealField real_part(const ComplexField& f);
ComplexField to_complex(const RealField& f);
RealField operator+(const RealField& a, const RealField& b);

/// Radial profile F(r) of f(x) = F(|x|).
///
/// Either a closed-form evaluator or samples joined by linear interpolation.
/// F is taken to vanish beyond support(); breakpoints mark discontinuities
/// or kinks for the adaptive quadrature. A truncated profile is one whose
/// true support is unbounded; integrals over it check that the tail decayed.
class RadialProfile {
 public:
  RadialProfile(std::function<double(double)> eval, double support, std::vector<double> breakpoints = {},
                bool truncated = false);

  /// Piecewise-linear profile through (radii[i], values[i]); constant below
  /// radii[0], zero beyond radii.back().
  static RadialProfile from_samples(std::vector<double> radii, std::vector<double> values);

  double operator()(double r) const { return r > support_ ? 0.0 : eval_(r); }
  double support() const { return support_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool truncated() const { return truncated_; }

 private:
  std::function<double(double)> eval_;
  double support_;
  std::vector<double> breakpoints_;
  bool truncated_;
};

/// Density d nu_alpha / dx at x. Throws std::domain_error if x_d < 0.
double measure_density(const WeinsteinParams& params, const Point& x);

/// nu_alpha(B+(0, eps)) in closed form.
double ball_measure(const WeinsteinParams& params, double eps);

/// nu_alpha of the cylinder B_{d-1}(x', eps) x ]max(0, x_d - eps), x_d + eps[.
double box_measure(const WeinsteinParams& params, const Point& x, double eps);

/// Volume of the Euclidean ball of radius r in R^n.
double euclidean_ball_volume(int n, double r);

/// Weighted midpoint sum of f over the grid (compensated, fixed order).
template <class T>
T integrate(const HalfSpaceGrid& grid, const GridFunction<T>& f);

/// Adaptive quadrature of radial_constant * int_0^support F(r) r^(2alpha+d) dr.
/// For truncated profiles, throws std::runtime_error if the outer tenth of
/// the support carries more than tail_tolerance of the total.
double radial_integrate(const WeinsteinParams& params, const RadialProfile& profile,
                        double tolerance = 1e-12, double tail_tolerance = 1e-8);

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// (sum |f|^p w)^(1/p); p = kInfinityNorm gives max |f|. p < 1 is a domain error.
template <class T>
double lp_norm(const HalfSpaceGrid& grid, const GridFunction<T>& f, double p);

/// Same, restricted to nodes where mask is nonzero.
template <class T>
double lp_norm(const HalfSpaceGrid& grid, const GridFunction<T>& f, double p,
               std::span<const unsigned char> mask);

/// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      const T t = sum_ + x;
      if (std::fabs(sum_) >= std::fabs(x)) {
        comp_ += (sum_ - t) + x;
      } else {
        comp_ += (x - t) + sum_;
      }
      sum_ = t;
    }
  }
  T value() const {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      return {re_.value(), im_.value()};
    } else {
      return sum_ + comp_;
    }
  }

 private:
  struct Empty {
    void add(double) {}
    double value() const { return 0.0; }
  };
  using Part = std::conditional_t<std::is_same_v<T, std::complex<double>>, CompensatedSum<double>, Empty>;
  T sum_{};
  T comp_{};
  Part re_{};
  Part im_{};
};

void require_same_grid(const HalfSpaceGrid& a, const HalfSpaceGrid& b, const char* what);

}  // namespace weinstein
