#include "weinstein/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "weinstein/translation.hpp"

namespace weinstein {

using Offset = std::array<int, kMaxDim>;

RadiusSchedule RadiusSchedule::log_spaced(double r_min, double r_max, int count, int z_samples_per_ball) {
  if (!(r_min > 0.0) || !(r_max > r_min) || count < 2) {
    throw std::invalid_argument("RadiusSchedule: need 0 < r_min < r_max and at least 2 radii");
  }
  RadiusSchedule s;
  s.z_samples_per_ball = z_samples_per_ball;
  const double step = std::log(r_max / r_min) / (count - 1);
  for (int i = 0; i < count; ++i) s.radii.push_back(r_max * std::exp(-step * i));
  s.radii.back() = r_min;
  s.validate();
  return s;
}

void RadiusSchedule::validate() const {
  if (radii.empty()) throw std::invalid_argument("RadiusSchedule: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw std::invalid_argument("RadiusSchedule: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw std::invalid_argument("RadiusSchedule: radii must strictly decrease");
  }
  if (z_samples_per_ball < 1) throw std::invalid_argument("RadiusSchedule: z_samples_per_ball must be >= 1");
}

namespace {

// Membership slack for lattice points at distance exactly eps.
constexpr double kBallSlack = 1e-12;

// Squared physical length of a lattice offset, summed in axis order.
double offset_dist2(const HalfSpaceGrid& g, const Offset& o) {
  double s = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const double t = o[static_cast<std::size_t>(a)] * g.spacing(a);
    s += t * t;
  }
  return s;
}

bool in_closed_ball(double dist2, double eps) { return dist2 <= eps * eps * (1.0 + kBallSlack); }

// All lattice offsets within the closed eps-ball, lexicographic order.
std::vector<Offset> lattice_ball(const HalfSpaceGrid& g, double eps) {
  const int d = g.dim();
  Offset reach{};
  for (int a = 0; a < d; ++a) reach[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(eps / g.spacing(a) + 1e-9));
  std::vector<Offset> out;
  Offset o{};
  for (int a = 0; a < d; ++a) o[static_cast<std::size_t>(a)] = -reach[static_cast<std::size_t>(a)];
  while (true) {
    if (in_closed_ball(offset_dist2(g, o), eps)) out.push_back(o);
    int a = d - 1;
    while (a >= 0) {
      auto& c = o[static_cast<std::size_t>(a)];
      if (c < reach[static_cast<std::size_t>(a)]) {
        ++c;
        break;
      }
      c = -reach[static_cast<std::size_t>(a)];
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

struct NodeIndex {
  std::array<int, kMaxDim> lateral;
  int depth;
};

NodeIndex locate_node(const HalfSpaceGrid& g, const Point& x) {
  if (x.dim() != g.dim() || !g.contains(x)) throw std::domain_error("maximal: point outside the grid");
  NodeIndex idx{};
  for (int a = 0; a < g.dim(); ++a) {
    const bool lateral = a + 1 < g.dim();
    const double lo = lateral ? -g.half_widths()[static_cast<std::size_t>(a)] : 0.0;
    const double u = (x[a] - lo) / g.spacing(a) - 0.5;
    const double r = std::round(u);
    if (std::fabs(u - r) > 1e-9 || r < 0 || r >= g.counts()[static_cast<std::size_t>(a)]) {
      throw std::domain_error("maximal: point is not a grid node");
    }
    if (lateral) {
      idx.lateral[static_cast<std::size_t>(a)] = static_cast<int>(r);
    } else {
      idx.depth = static_cast<int>(r);
    }
  }
  return idx;
}

// Flat index of node (lateral multi + delta, depth + delta_d), or npos.
std::size_t shifted_node(const HalfSpaceGrid& g, const NodeIndex& base, const Offset& delta) {
  const int d = g.dim();
  const int q = base.depth + delta[static_cast<std::size_t>(d - 1)];
  if (q < 0 || q >= g.depth_count()) return HalfSpaceGrid::npos;
  std::array<int, kMaxDim> m{};
  for (int a = 0; a + 1 < d; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    m[ua] = base.lateral[ua] + delta[ua];
  }
  const std::size_t lat = g.lateral_flat(std::span<const int>(m.data(), static_cast<std::size_t>(d - 1)));
  if (lat == HalfSpaceGrid::npos) return HalfSpaceGrid::npos;
  return g.flat(lat, q);
}

NodeIndex node_index(const HalfSpaceGrid& g, std::size_t flat) {
  NodeIndex idx{};
  idx.lateral = g.lateral_multi(g.lateral_of(flat));
  idx.depth = g.depth_of(flat);
  return idx;
}

}  // namespace

std::vector<Offset> center_offsets(const HalfSpaceGrid& grid, double eps, int cap) {
  if (cap < 1) throw std::invalid_argument("center_offsets: cap must be >= 1");
  const std::vector<Offset> candidates = lattice_ball(grid, eps);
  const int d = grid.dim();
  auto dist2 = [&](const Offset& a, const Offset& b) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      const double t = (a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) * grid.spacing(i);
      s += t * t;
    }
    return s;
  };
  std::vector<Offset> chosen{Offset{}};
  std::vector<double> nearest(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) nearest[i] = dist2(candidates[i], chosen.front());
  while (static_cast<int>(chosen.size()) < cap) {
    std::size_t best = 0;
    double best_d = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (nearest[i] > best_d) {
        best_d = nearest[i];
        best = i;
      }
    }
    if (best_d == 0.0) break;
    chosen.push_back(candidates[best]);
    for (std::size_t i = 0; i < candidates.size(); ++i) nearest[i] = std::min(nearest[i], dist2(candidates[i], candidates[best]));
  }
  return chosen;
}

double maximal_uncentered(const RealField& f, const Point& x, const RadiusSchedule& sched) {
  sched.validate();
  const HalfSpaceGrid& g = f.grid();
  const NodeIndex xi = locate_node(g, x);
  double best = 0.0;
  for (double eps : sched.radii) {
    for (const Offset& delta : center_offsets(g, eps, sched.z_samples_per_ball)) {
      const std::size_t zf = shifted_node(g, xi, delta);
      if (zf == HalfSpaceGrid::npos) continue;
      const Point z = g.node(zf);
      CompensatedSum<double> pairing;
      CompensatedSum<double> mass;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Point y = g.node(i);
        if (!(distance2(z, y) < eps * eps)) continue;
        const double t = ball_translate(g.params(), z, eps, y) * g.weight(i);
        pairing.add(f[i] * t);
        mass.add(t);
      }
      if (mass.value() > 0.0) best = std::max(best, std::fabs(pairing.value()) / mass.value());
    }
  }
  return best;
}

double maximal_ball_average(const RealField& f, const Point& x, const RadiusSchedule& sched) {
  sched.validate();
  const HalfSpaceGrid& g = f.grid();
  const NodeIndex xi = locate_node(g, x);
  double best = 0.0;
  for (double eps : sched.radii) {
    const std::vector<Offset> ball = lattice_ball(g, eps);
    for (const Offset& delta : center_offsets(g, eps, sched.z_samples_per_ball)) {
      const std::size_t zf = shifted_node(g, xi, delta);
      if (zf == HalfSpaceGrid::npos) continue;
      const NodeIndex zi = node_index(g, zf);
      CompensatedSum<double> sum;
      CompensatedSum<double> mass;
      for (const Offset& o : ball) {
        const std::size_t yf = shifted_node(g, zi, o);
        if (yf == HalfSpaceGrid::npos) continue;
        sum.add(std::fabs(f[yf]) * g.weight(yf));
        mass.add(g.weight(yf));
      }
      if (mass.value() > 0.0) best = std::max(best, sum.value() / mass.value());
    }
  }
  return best;
}

namespace {

// Lateral arrays are row-major with the last lateral axis contiguous; a
// "row" is a fixed multi-index over the remaining lateral axes.
struct LateralLayout {
  int lat_dims;
  int n_last;
  std::size_t rows;
  std::vector<int> row_counts;  // counts of lateral axes 0 .. lat_dims-2

  explicit LateralLayout(const HalfSpaceGrid& g) : lat_dims(g.dim() - 1) {
    n_last = g.counts()[static_cast<std::size_t>(lat_dims - 1)];
    rows = g.lateral_size() / static_cast<std::size_t>(n_last);
    for (int a = 0; a + 1 < lat_dims; ++a) row_counts.push_back(g.counts()[static_cast<std::size_t>(a)]);
  }

  // Row index of (row multi + shift), or npos.
  std::size_t shifted_row(std::size_t row, const Offset& shift) const {
    if (row_counts.empty()) return row;
    std::array<int, kMaxDim> m{};
    std::size_t r = row;
    for (int a = static_cast<int>(row_counts.size()) - 1; a >= 0; --a) {
      const auto ua = static_cast<std::size_t>(a);
      m[ua] = static_cast<int>(r % static_cast<std::size_t>(row_counts[ua]));
      r /= static_cast<std::size_t>(row_counts[ua]);
    }
    std::size_t out = 0;
    for (std::size_t a = 0; a < row_counts.size(); ++a) {
      const int c = m[a] + shift[a];
      if (c < 0 || c >= row_counts[a]) return HalfSpaceGrid::npos;
      out = out * static_cast<std::size_t>(row_counts[a]) + static_cast<std::size_t>(c);
    }
    return out;
  }
};

// dst[r][j] += c * src[r - o_rows][j - o_last] wherever both are in range.
void shift_axpy(const LateralLayout& layout, double* dst, const double* src, double c, const Offset& o) {
  const int o_last = o[static_cast<std::size_t>(layout.lat_dims - 1)];
  const int n = layout.n_last;
  const int j0 = std::max(0, o_last);
  const int j1 = std::min(n, n + o_last);
  if (j0 >= j1) return;
  Offset neg{};
  for (int a = 0; a + 1 < layout.lat_dims; ++a) neg[static_cast<std::size_t>(a)] = -o[static_cast<std::size_t>(a)];
  for (std::size_t r = 0; r < layout.rows; ++r) {
    const std::size_t sr = layout.shifted_row(r, neg);
    if (sr == HalfSpaceGrid::npos) continue;
    double* out = dst + r * static_cast<std::size_t>(n);
    const double* in = src + sr * static_cast<std::size_t>(n) - o_last;
#pragma omp simd
    for (int j = j0; j < j1; ++j) out[j] += c * in[j];
  }
}

// Nonnegative lateral offset shapes within the eps-ball, with every sign variant.
struct LateralShape {
  double dist2;
  std::vector<Offset> variants;
};

std::vector<LateralShape> lateral_shapes(const HalfSpaceGrid& g, double eps) {
  const int lat_dims = g.dim() - 1;
  std::vector<LateralShape> shapes;
  Offset reach{};
  for (int a = 0; a < lat_dims; ++a) reach[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(eps / g.spacing(a) + 1e-9));
  Offset o{};
  while (true) {
    double s = 0.0;
    for (int a = 0; a < lat_dims; ++a) {
      const double t = o[static_cast<std::size_t>(a)] * g.spacing(a);
      s += t * t;
    }
    if (s < eps * eps) {
      LateralShape shape{s, {}};
      for (int mask = 0; mask < (1 << lat_dims); ++mask) {
        Offset v = o;
        bool duplicate = false;
        for (int a = 0; a < lat_dims; ++a) {
          if ((mask >> a) & 1) {
            if (o[static_cast<std::size_t>(a)] == 0) duplicate = true;
            v[static_cast<std::size_t>(a)] = -v[static_cast<std::size_t>(a)];
          }
        }
        if (!duplicate) shape.variants.push_back(v);
      }
      shapes.push_back(std::move(shape));
    }
    int a = lat_dims - 1;
    while (a >= 0) {
      auto& c = o[static_cast<std::size_t>(a)];
      if (c < reach[static_cast<std::size_t>(a)]) {
        ++c;
        break;
      }
      c = 0;
      --a;
    }
    if (a < 0) break;
  }
  return shapes;
}

// Ball rows for the average: depth offset, offsets of the non-contiguous
// lateral axes, and the half-length along the contiguous axis.
struct BallRow {
  Offset head;  // lateral axes 0 .. lat_dims-2, depth offset stored at index kMaxDim-1
  int half;
};

std::vector<BallRow> ball_rows(const HalfSpaceGrid& g, double eps) {
  const int d = g.dim();
  const int last_lat = d - 2;
  std::vector<BallRow> rows;
  for (const Offset& o : lattice_ball(g, eps)) {
    if (o[static_cast<std::size_t>(last_lat)] != 0) continue;
    // Largest k with the full offset (k on the contiguous axis) inside the ball,
    // measured exactly as offset_dist2 does.
    Offset probe = o;
    int k = 0;
    while (true) {
      probe[static_cast<std::size_t>(last_lat)] = k + 1;
      if (!in_closed_ball(offset_dist2(g, probe), eps)) break;
      ++k;
    }
    BallRow row{};
    for (int a = 0; a < last_lat; ++a) row.head[static_cast<std::size_t>(a)] = o[static_cast<std::size_t>(a)];
    row.head[kMaxDim - 1] = o[static_cast<std::size_t>(d - 1)];
    row.half = k;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<MaximalResult> maximal_fields(std::span<const RealField> fs, const RadiusSchedule& sched,
                                          bool with_ball_average) {
  sched.validate();
  if (fs.empty()) return {};
  const GridPtr grid_ptr = fs.front().grid_ptr();
  const HalfSpaceGrid& g = *grid_ptr;
  for (const RealField& f : fs) require_same_grid(g, f.grid(), "maximal_fields");
  const int d = g.dim();
  const int nd = g.depth_count();
  const std::size_t nlat = g.lateral_size();
  const std::size_t nfun = fs.size();
  const LateralLayout layout(g);

  // Depth-major copies: rows[k][q * nlat + lat]; index nfun holds ones for the mass.
  std::vector<std::vector<double>> by_depth(nfun + 1, std::vector<double>(g.size()));
  for (std::size_t k = 0; k <= nfun; ++k) {
    for (std::size_t lat = 0; lat < nlat; ++lat) {
      for (int q = 0; q < nd; ++q) {
        by_depth[k][static_cast<std::size_t>(q) * nlat + lat] = k < nfun ? fs[k][g.flat(lat, q)] : 1.0;
      }
    }
  }

  std::vector<std::vector<double>> m_unc(nfun, std::vector<double>(g.size(), 0.0));
  std::vector<std::vector<double>> m_avg(with_ball_average ? nfun : 0, std::vector<double>(g.size(), 0.0));
  std::vector<std::vector<double>> averages(nfun, std::vector<double>(g.size()));

  for (double eps : sched.radii) {
    const std::vector<LateralShape> shapes = lateral_shapes(g, eps);
    const double hd = g.spacing(d - 1);
    const int band = static_cast<int>(std::ceil(eps / hd));

#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < nd; ++p) {
      const double zd = g.coordinate(d - 1, p);
      std::vector<std::vector<double>> acc(nfun + 1, std::vector<double>(nlat, 0.0));
      for (const LateralShape& shape : shapes) {
        for (int q = std::max(0, p - band); q <= std::min(nd - 1, p + band); ++q) {
          const double t = ball_translate_profile(g.params(), shape.dist2, eps, zd, g.coordinate(d - 1, q));
          if (t == 0.0) continue;
          const double c = t * g.lateral_factor() * g.depth_weight(q);
          for (const Offset& v : shape.variants) {
            for (std::size_t k = 0; k <= nfun; ++k) {
              shift_axpy(layout, acc[k].data(), &by_depth[k][static_cast<std::size_t>(q) * nlat], c, v);
            }
          }
        }
      }
      for (std::size_t lat = 0; lat < nlat; ++lat) {
        const double mass = acc[nfun][lat];
        for (std::size_t k = 0; k < nfun; ++k) {
          averages[k][g.flat(lat, p)] = mass > 0.0 ? std::fabs(acc[k][lat]) / mass : 0.0;
        }
      }
    }

    const std::vector<Offset> samples = center_offsets(g, eps, sched.z_samples_per_ball);
    const auto total = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t si = 0; si < total; ++si) {
      const auto i = static_cast<std::size_t>(si);
      const NodeIndex xi = node_index(g, i);
      for (const Offset& delta : samples) {
        const std::size_t z = shifted_node(g, xi, delta);
        if (z == HalfSpaceGrid::npos) continue;
        for (std::size_t k = 0; k < nfun; ++k) m_unc[k][i] = std::max(m_unc[k][i], averages[k][z]);
      }
    }

    if (!with_ball_average) continue;
    // Prefix sums along the contiguous lateral axis of |f| w and w, per depth row.
    const int n_last = layout.n_last;
    const std::size_t prefix_len = static_cast<std::size_t>(n_last + 1);
    std::vector<std::vector<double>> prefix(nfun + 1, std::vector<double>(static_cast<std::size_t>(nd) * layout.rows * prefix_len));
    for (std::size_t k = 0; k <= nfun; ++k) {
      for (int q = 0; q < nd; ++q) {
        const double w = g.lateral_factor() * g.depth_weight(q);
        for (std::size_t r = 0; r < layout.rows; ++r) {
          double* pre = &prefix[k][(static_cast<std::size_t>(q) * layout.rows + r) * prefix_len];
          const double* src = &by_depth[k][static_cast<std::size_t>(q) * nlat + r * static_cast<std::size_t>(n_last)];
          pre[0] = 0.0;
          for (int j = 0; j < n_last; ++j) pre[j + 1] = pre[j] + std::fabs(src[j]) * w;
        }
      }
    }
    const std::vector<BallRow> rows = ball_rows(g, eps);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t si = 0; si < total; ++si) {
      const auto zf = static_cast<std::size_t>(si);
      const std::size_t lat = g.lateral_of(zf);
      const int p = g.depth_of(zf);
      const std::size_t zrow = lat / static_cast<std::size_t>(n_last);
      const int zj = static_cast<int>(lat % static_cast<std::size_t>(n_last));
      std::vector<double> sums(nfun + 1, 0.0);
      for (const BallRow& row : rows) {
        const int q = p + row.head[kMaxDim - 1];
        if (q < 0 || q >= nd) continue;
        const std::size_t r = layout.shifted_row(zrow, row.head);
        if (r == HalfSpaceGrid::npos) continue;
        const int lo = std::max(0, zj - row.half);
        const int hi = std::min(n_last, zj + row.half + 1);
        const std::size_t base = (static_cast<std::size_t>(q) * layout.rows + r) * prefix_len;
        for (std::size_t k = 0; k <= nfun; ++k) {
          sums[k] += prefix[k][base + static_cast<std::size_t>(hi)] - prefix[k][base + static_cast<std::size_t>(lo)];
        }
      }
      for (std::size_t k = 0; k < nfun; ++k) averages[k][zf] = sums[nfun] > 0.0 ? sums[k] / sums[nfun] : 0.0;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t si = 0; si < total; ++si) {
      const auto i = static_cast<std::size_t>(si);
      const NodeIndex xi = node_index(g, i);
      for (const Offset& delta : samples) {
        const std::size_t z = shifted_node(g, xi, delta);
        if (z == HalfSpaceGrid::npos) continue;
        for (std::size_t k = 0; k < nfun; ++k) m_avg[k][i] = std::max(m_avg[k][i], averages[k][z]);
      }
    }
  }

  std::vector<MaximalResult> out;
  out.reserve(nfun);
  for (std::size_t k = 0; k < nfun; ++k) {
    MaximalResult r{RealField(grid_ptr, std::move(m_unc[k])), std::nullopt};
    if (with_ball_average) r.ball_average = RealField(grid_ptr, std::move(m_avg[k]));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<unsigned char> interior_mask(const HalfSpaceGrid& grid, double margin) {
  std::vector<unsigned char> mask(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.node(i);
    bool inside = x.last() <= grid.depth() - margin;
    for (int a = 0; inside && a + 1 < grid.dim(); ++a) {
      inside = std::fabs(x[a]) <= grid.half_widths()[static_cast<std::size_t>(a)] - margin;
    }
    mask[i] = inside ? 1 : 0;
  }
  return mask;
}

double distribution_function(const RealField& g, double level, std::span<const unsigned char> mask) {
  if (!(level > 0.0)) throw std::domain_error("distribution_function: level must be positive");
  if (!mask.empty() && mask.size() != g.size()) throw std::invalid_argument("distribution_function: mask size mismatch");
  CompensatedSum<double> sum;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!mask.empty() && mask[i] == 0) continue;
    if (g[i] > level) sum.add(g.grid().weight(i));
  }
  return sum.value();
}

double weak_type_constant(const RealField& f, const RealField& mf, std::span<const double> levels,
                          std::span<const unsigned char> mask) {
  require_same_grid(f.grid(), mf.grid(), "weak_type_constant");
  const double norm1 = lp_norm(f.grid(), f, 1.0);
  if (!(norm1 > 0.0)) throw std::domain_error("weak_type_constant: ||f||_1 is zero");
  double best = 0.0;
  for (double level : levels) best = std::max(best, level * distribution_function(mf, level, mask) / norm1);
  return best;
}

double lp_operator_ratio(const RealField& f, const RealField& mf, double p, std::span<const unsigned char> mask) {
  require_same_grid(f.grid(), mf.grid(), "lp_operator_ratio");
  if (!(p > 1.0)) throw std::domain_error("lp_operator_ratio: p must exceed 1");
  const double denom = lp_norm(f.grid(), f, p);
  if (!(denom > 0.0)) throw std::domain_error("lp_operator_ratio: ||f||_p is zero");
  const double numer = mask.empty() ? lp_norm(mf.grid(), mf, p) : lp_norm(mf.grid(), mf, p, mask);
  return numer / denom;
}

std::vector<std::size_t> vitali_select(std::span<const BallSpec> family) {
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto center_less = [&](const Point& a, const Point& b) {
    for (int i = 0; i < a.dim(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (family[i].radius != family[j].radius) return family[i].radius > family[j].radius;
    return center_less(family[i].center, family[j].center);
  });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool disjoint = true;
    for (std::size_t j : kept) {
      const double reach = family[i].radius + family[j].radius;
      if (distance2(family[i].center, family[j].center) <= reach * reach) {
        disjoint = false;
        break;
      }
    }
    if (disjoint) kept.push_back(i);
  }
  return kept;
}

VitaliCheck vitali_verify(std::span<const BallSpec> family, std::span<const std::size_t> selected) {
  VitaliCheck check{true, true, 0.0};
  for (std::size_t a = 0; a < selected.size(); ++a) {
    for (std::size_t b = a + 1; b < selected.size(); ++b) {
      const BallSpec& u = family[selected[a]];
      const BallSpec& v = family[selected[b]];
      const double reach = u.radius + v.radius;
      if (distance2(u.center, v.center) <= reach * reach) check.disjoint = false;
    }
  }
  for (const BallSpec& ball : family) {
    double best = kInfinityNorm;
    for (std::size_t s : selected) {
      const BallSpec& sel = family[s];
      best = std::min(best, (std::sqrt(distance2(ball.center, sel.center)) + ball.radius) / sel.radius);
    }
    check.worst_dilation = std::max(check.worst_dilation, best);
  }
  check.covered = check.worst_dilation <= 5.0;
  return check;
}

}  // namespace weinstein
