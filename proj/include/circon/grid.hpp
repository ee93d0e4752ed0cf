#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "circon/rng.hpp"
#include "circon/vec.hpp"

namespace circon {

using CellIndex = std::array<int, kMaxDim>;

/// Axis-aligned occupancy grid. Cell (i0..id) covers
/// origin + [i*h, (i+1)*h) per axis; its sample point is the center.
/// Doubles as the body representation and as image/chart rasters (dim 1..4).
class Grid {
public:
  Grid() = default;

  Grid(int dim, Vec origin, double spacing, CellIndex shape)
      : dim_(dim), origin_(std::move(origin)), h_(spacing), shape_(shape) {
    if (dim < 1 || dim > kMaxDim) throw WrongDimensionError("grid dim out of range");
    if (h_ <= 0) throw BadParamsError("grid spacing must be positive");
    std::size_t total = 1;
    for (int a = 0; a < dim_; ++a) {
      if (shape_[a] <= 0) throw BadParamsError("grid shape must be positive");
      total *= static_cast<std::size_t>(shape_[a]);
    }
    occ_.assign(total, 0);
    strides_[dim_ - 1] = 1;
    for (int a = dim_ - 2; a >= 0; --a)
      strides_[a] = strides_[a + 1] * static_cast<std::size_t>(shape_[a + 1]);
  }

  int dim() const { return dim_; }
  const Vec& origin() const { return origin_; }
  double spacing() const { return h_; }
  const CellIndex& shape() const { return shape_; }
  std::size_t size() const { return occ_.size(); }

  std::size_t linear(const CellIndex& c) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a) idx += static_cast<std::size_t>(c[a]) * strides_[a];
    return idx;
  }

  CellIndex unlinear(std::size_t idx) const {
    CellIndex c{};
    for (int a = 0; a < dim_; ++a) {
      c[a] = static_cast<int>(idx / strides_[a]);
      idx %= strides_[a];
    }
    return c;
  }

  bool in_range(const CellIndex& c) const {
    for (int a = 0; a < dim_; ++a)
      if (c[a] < 0 || c[a] >= shape_[a]) return false;
    return true;
  }

  bool occupied(const CellIndex& c) const { return occ_[linear(c)] != 0; }
  bool occupied_linear(std::size_t idx) const { return occ_[idx] != 0; }
  void set(const CellIndex& c, bool value) { occ_[linear(c)] = value ? 1 : 0; }
  void set_linear(std::size_t idx, bool value) { occ_[idx] = value ? 1 : 0; }

  const std::vector<std::uint8_t>& raw() const { return occ_; }
  std::vector<std::uint8_t>& raw() { return occ_; }

  Vec center(const CellIndex& c) const {
    Vec p = origin_;
    for (int a = 0; a < dim_; ++a) p[a] += (c[a] + 0.5) * h_;
    return p;
  }

  /// Cell containing the point; false if outside the grid.
  bool cell_of(const Vec& p, CellIndex& out) const {
    for (int a = 0; a < dim_; ++a) {
      double t = (p[a] - origin_[a]) / h_;
      int i = static_cast<int>(std::floor(t));
      if (i < 0 || i >= shape_[a]) return false;
      out[a] = i;
    }
    return true;
  }

  bool occupied_at_point(const Vec& p) const {
    CellIndex c{};
    return cell_of(p, c) && occupied(c);
  }

  std::size_t count_occupied() const {
    std::size_t n = 0;
    for (auto v : occ_) n += v;
    return n;
  }

  double cell_volume() const { return std::pow(h_, dim_); }
  double volume() const { return static_cast<double>(count_occupied()) * cell_volume(); }

  std::vector<CellIndex> occupied_cells() const {
    std::vector<CellIndex> cells;
    for (std::size_t i = 0; i < occ_.size(); ++i)
      if (occ_[i]) cells.push_back(unlinear(i));
    return cells;
  }

  std::vector<Vec> occupied_centers() const {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < occ_.size(); ++i)
      if (occ_[i]) pts.push_back(center(unlinear(i)));
    return pts;
  }

  /// World-space box covered by the occupied cells (full cell extents).
  void occupied_box(Vec& lo, Vec& hi) const {
    lo = Vec(dim_);
    hi = Vec(dim_);
    bool first = true;
    for (std::size_t i = 0; i < occ_.size(); ++i) {
      if (!occ_[i]) continue;
      CellIndex c = unlinear(i);
      for (int a = 0; a < dim_; ++a) {
        double clo = origin_[a] + c[a] * h_;
        double chi = clo + h_;
        if (first || clo < lo[a]) lo[a] = clo;
        if (first || chi > hi[a]) hi[a] = chi;
      }
      first = false;
    }
    if (first) throw EmptyBodyError("grid has no occupied cells");
  }

  Vec centroid() const {
    Vec s(dim_);
    std::size_t n = 0;
    for (std::size_t i = 0; i < occ_.size(); ++i) {
      if (!occ_[i]) continue;
      s += center(unlinear(i));
      ++n;
    }
    if (n == 0) throw EmptyBodyError("grid has no occupied cells");
    return s / static_cast<double>(n);
  }

private:
  int dim_ = 0;
  Vec origin_;
  double h_ = 0.0;
  CellIndex shape_{};
  std::array<std::size_t, kMaxDim> strides_{};
  std::vector<std::uint8_t> occ_;
};

// ---------------------------------------------------------------------------
// Topology and measurements
// ---------------------------------------------------------------------------

/// Occupied cells with an unoccupied face neighbor (or on the grid edge).
inline std::vector<std::size_t> boundary_cells_linear(const Grid& g) {
  std::vector<std::size_t> out;
  const int d = g.dim();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.occupied_linear(i)) continue;
    CellIndex c = g.unlinear(i);
    bool bnd = false;
    for (int a = 0; a < d && !bnd; ++a) {
      for (int s = -1; s <= 1 && !bnd; s += 2) {
        CellIndex nb = c;
        nb[a] += s;
        if (!g.in_range(nb) || !g.occupied(nb)) bnd = true;
      }
    }
    if (bnd) out.push_back(i);
  }
  return out;
}

inline std::vector<CellIndex> boundary_cells(const Grid& g) {
  std::vector<CellIndex> out;
  for (std::size_t i : boundary_cells_linear(g)) out.push_back(g.unlinear(i));
  return out;
}

namespace detail {

/// Connected-component count over the given cell set. `vertex_conn` switches
/// between face (von Neumann) and vertex (Moore) adjacency.
inline int component_count(const Grid& g, const std::vector<std::size_t>& cells,
                           bool vertex_conn) {
  if (cells.empty()) return 0;
  std::vector<std::uint8_t> member(g.size(), 0), seen(g.size(), 0);
  for (std::size_t i : cells) member[i] = 1;
  const int d = g.dim();

  std::vector<CellIndex> offsets;
  if (vertex_conn) {
    int total = 1;
    for (int a = 0; a < d; ++a) total *= 3;
    for (int code = 0; code < total; ++code) {
      CellIndex off{};
      int rem = code;
      bool zero = true;
      for (int a = 0; a < d; ++a) {
        off[a] = rem % 3 - 1;
        rem /= 3;
        if (off[a] != 0) zero = false;
      }
      if (!zero) offsets.push_back(off);
    }
  } else {
    for (int a = 0; a < d; ++a)
      for (int s = -1; s <= 1; s += 2) {
        CellIndex off{};
        off[a] = s;
        offsets.push_back(off);
      }
  }

  int components = 0;
  std::vector<std::size_t> stack;
  for (std::size_t seed : cells) {
    if (seen[seed]) continue;
    ++components;
    seen[seed] = 1;
    stack.assign(1, seed);
    while (!stack.empty()) {
      CellIndex c = g.unlinear(stack.back());
      stack.pop_back();
      for (const CellIndex& off : offsets) {
        CellIndex nb = c;
        for (int a = 0; a < d; ++a) nb[a] += off[a];
        if (!g.in_range(nb)) continue;
        std::size_t j = g.linear(nb);
        if (member[j] && !seen[j]) {
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
  }
  return components;
}

/// Cells achieving the maximum inner product with some sampled direction.
/// The diameter of the occupied set is attained on this candidate set up to
/// an angular-gap error far below the grid spacing.
inline std::vector<Vec> extreme_candidates(const Grid& g, int n_dirs = 1024) {
  std::vector<Vec> dirs;
  const int d = g.dim();
  for (int a = 0; a < d; ++a)
    for (int s = -1; s <= 1; s += 2) {
      Vec v(d);
      v[a] = s;
      dirs.push_back(v);
    }
  Rng rng(12345, "grid-extremes");
  for (int i = 0; i < n_dirs; ++i) dirs.push_back(rng.unit_vector(d));

  std::vector<Vec> centers = g.occupied_centers();
  if (centers.empty()) throw EmptyBodyError("grid has no occupied cells");
  std::vector<std::size_t> picks;
  for (const Vec& dir : dirs) {
    std::size_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i) {
      double v = dot(centers[i], dir);
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    picks.push_back(best);
  }
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  std::vector<Vec> out;
  out.reserve(picks.size());
  for (std::size_t i : picks) out.push_back(centers[i]);
  return out;
}

} // namespace detail

struct BodyMetrics {
  double diameter = 0.0;
  double volume = 0.0;
  int component_count = 0;
  int boundary_component_count = 0;
};

inline BodyMetrics metrics(const Grid& g) {
  BodyMetrics m;
  m.volume = g.volume();

  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.occupied_linear(i)) all.push_back(i);
  if (all.empty()) throw EmptyBodyError("metrics of an empty grid");

  m.component_count = detail::component_count(g, all, /*vertex_conn=*/false);
  // Boundary rims of rasterized smooth shapes connect through cell corners;
  // vertex adjacency keeps each rim a single component.
  m.boundary_component_count =
      detail::component_count(g, boundary_cells_linear(g), /*vertex_conn=*/true);

  std::vector<Vec> ext = detail::extreme_candidates(g);
  double best = 0.0;
  for (std::size_t i = 0; i < ext.size(); ++i)
    for (std::size_t j = i + 1; j < ext.size(); ++j)
      best = std::max(best, distance(ext[i], ext[j]));
  m.diameter = best;
  return m;
}

// ---------------------------------------------------------------------------
// Convex hull at grid scale
// ---------------------------------------------------------------------------

namespace detail {

inline long long cross2(const std::array<long long, 2>& o,
                        const std::array<long long, 2>& a,
                        const std::array<long long, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Monotone chain over integer lattice points; returns hull vertices CCW.
inline std::vector<std::array<long long, 2>> hull2d(
    std::vector<std::array<long long, 2>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<std::array<long long, 2>> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

} // namespace detail

/// Smallest convex occupied superset at grid scale: a cell joins the hull iff
/// its center lies within h/2 of the convex hull of the occupied centers.
/// 2-D uses the exact integer hull; higher dimensions use support values over
/// sampled directions (overshoot well below h).
inline Grid convex_hull(const Grid& g) {
  Grid out(g.dim(), g.origin(), g.spacing(), g.shape());
  const int d = g.dim();

  if (d == 2) {
    std::vector<std::array<long long, 2>> pts;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.occupied_linear(i)) {
        CellIndex c = g.unlinear(i);
        pts.push_back({c[0], c[1]});
      }
    auto hull = detail::hull2d(std::move(pts));
    if (hull.size() <= 1) {
      for (std::size_t i = 0; i < g.size(); ++i)
        out.set_linear(i, g.occupied_linear(i));
      return out;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      CellIndex c = g.unlinear(i);
      double px = c[0], py = c[1];
      bool inside = true;
      for (std::size_t e = 0; e < hull.size() && inside; ++e) {
        auto a = hull[e];
        auto b = hull[(e + 1) % hull.size()];
        double ex = static_cast<double>(b[0] - a[0]);
        double ey = static_cast<double>(b[1] - a[1]);
        double len = std::hypot(ex, ey);
        if (len == 0) continue;
        double cr = ex * (py - a[1]) - ey * (px - a[0]);
        if (cr < -0.5 * len) inside = false;  // 0.5 lattice units = h/2
      }
      out.set_linear(i, inside);
    }
    return out;
  }

  std::vector<Vec> dirs;
  for (int a = 0; a < d; ++a)
    for (int s = -1; s <= 1; s += 2) {
      Vec v(d);
      v[a] = s;
      dirs.push_back(v);
    }
  Rng rng(777, "hull-dirs");
  for (int i = 0; i < 512; ++i) dirs.push_back(rng.unit_vector(d));

  std::vector<double> support(dirs.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.occupied_linear(i)) continue;
    Vec p = g.center(g.unlinear(i));
    for (std::size_t k = 0; k < dirs.size(); ++k)
      support[k] = std::max(support[k], dot(p, dirs[k]));
  }
  double tol = 0.5 * g.spacing();
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec p = g.center(g.unlinear(i));
    bool inside = true;
    for (std::size_t k = 0; k < dirs.size() && inside; ++k)
      if (dot(p, dirs[k]) > support[k] + tol) inside = false;
    out.set_linear(i, inside);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

/// Cells occupied in exactly one grid, matched through world coordinates so
/// the two lattices need not share an origin.
inline std::size_t symmetric_difference_cells(const Grid& a, const Grid& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.occupied_linear(i) && !b.occupied_at_point(a.center(a.unlinear(i)))) ++n;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.occupied_linear(i) && !a.occupied_at_point(b.center(b.unlinear(i)))) ++n;
  return n;
}

/// Body equality at grid scale: symmetric difference concentrated at the
/// boundary, at most a 2h-thick shell's worth of cells.
inline bool bodies_coincide(const Grid& a, const Grid& b) {
  std::size_t ba = boundary_cells_linear(a).size();
  std::size_t bb = boundary_cells_linear(b).size();
  return symmetric_difference_cells(a, b) <= 2 * std::max(ba, bb);
}

/// a subset of b, cellwise through world coordinates.
inline bool subset_of(const Grid& a, const Grid& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.occupied_linear(i) && !b.occupied_at_point(a.center(a.unlinear(i))))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Euclidean distance transform (Felzenszwalb-Huttenlocher, separable)
// ---------------------------------------------------------------------------

namespace detail {

inline void dt1d(std::vector<double>& f, std::vector<double>& d,
                 std::vector<int>& v, std::vector<double>& z, int n) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s;
    for (;;) {
      int p = v[k];
      s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * q - 2.0 * p);
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    int p = v[k];
    d[q] = (q - p) * (q - p) + f[p];
  }
}

} // namespace detail

/// Squared distances (in cell units) from every cell to the nearest seed cell.
/// Seeds are the cells where `seed(i)` is true.
template <typename SeedFn>
std::vector<float> distance_transform(const Grid& g, SeedFn seed) {
  const double INF = 1e18;
  std::vector<double> dist(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) dist[i] = seed(i) ? 0.0 : INF;

  const int d = g.dim();
  int max_extent = 0;
  for (int a = 0; a < d; ++a) max_extent = std::max(max_extent, g.shape()[a]);
  std::vector<double> f(max_extent), out1(max_extent), z(max_extent + 1);
  std::vector<int> v(max_extent);

  // Process one axis at a time over all lines parallel to it.
  for (int axis = 0; axis < d; ++axis) {
    int n = g.shape()[axis];
    std::size_t lines = g.size() / static_cast<std::size_t>(n);
    for (std::size_t line = 0; line < lines; ++line) {
      // Decompose the line id into the fixed coordinates.
      CellIndex c{};
      std::size_t rem = line;
      for (int a = d - 1; a >= 0; --a) {
        if (a == axis) continue;
        c[a] = static_cast<int>(rem % static_cast<std::size_t>(g.shape()[a]));
        rem /= static_cast<std::size_t>(g.shape()[a]);
      }
      for (int i = 0; i < n; ++i) {
        c[axis] = i;
        f[i] = dist[g.linear(c)];
      }
      detail::dt1d(f, out1, v, z, n);
      for (int i = 0; i < n; ++i) {
        c[axis] = i;
        dist[g.linear(c)] = out1[i];
      }
    }
  }

  std::vector<float> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = static_cast<float>(dist[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Serialization: .gbody (text header + raw row-major 0/1 bytes), PGM P5
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace detail

inline void save_gbody(const Grid& g, std::ostream& os) {
  os << "gbody 1\n";
  os << "n " << g.dim() << "\n";
  os << "shape";
  for (int a = 0; a < g.dim(); ++a) os << ' ' << g.shape()[a];
  os << "\norigin";
  for (int a = 0; a < g.dim(); ++a) os << ' ' << detail::format_double(g.origin()[a]);
  os << "\nspacing " << detail::format_double(g.spacing()) << "\n";
  os << "data\n";
  os.write(reinterpret_cast<const char*>(g.raw().data()),
           static_cast<std::streamsize>(g.raw().size()));
}

inline void save_gbody(const Grid& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  save_gbody(g, os);
  if (!os) throw IoError("write failed: " + path);
}

inline Grid load_gbody(std::istream& is) {
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "gbody" || version != 1)
    throw IoError("not a gbody v1 stream");
  int dim = 0;
  CellIndex shape{};
  Vec origin;
  double spacing = 0;
  std::string key;
  while (is >> key) {
    if (key == "n") {
      is >> dim;
      origin = Vec(dim);
    } else if (key == "shape") {
      for (int a = 0; a < dim; ++a) is >> shape[a];
    } else if (key == "origin") {
      for (int a = 0; a < dim; ++a) is >> origin[a];
    } else if (key == "spacing") {
      is >> spacing;
    } else if (key == "data") {
      break;
    } else {
      throw IoError("unknown gbody header key: " + key);
    }
  }
  if (!is || key != "data") throw IoError("truncated gbody header");
  is.get();  // newline after "data"
  Grid g(dim, origin, spacing, shape);
  is.read(reinterpret_cast<char*>(g.raw().data()),
          static_cast<std::streamsize>(g.raw().size()));
  if (is.gcount() != static_cast<std::streamsize>(g.raw().size()))
    throw IoError("truncated gbody payload");
  return g;
}

inline Grid load_gbody(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  return load_gbody(is);
}

/// Axis-aligned 2-D slice of a higher-dimensional grid at the cell layer
/// containing `world_coord` on `axis`.
inline Grid slice_grid(const Grid& g, int axis, double world_coord) {
  if (g.dim() < 3) throw BadParamsError("slice requires dim >= 3");
  int layer = static_cast<int>(std::floor((world_coord - g.origin()[axis]) / g.spacing()));
  layer = std::clamp(layer, 0, g.shape()[axis] - 1);

  std::vector<int> keep;
  for (int a = 0; a < g.dim(); ++a)
    if (a != axis) keep.push_back(a);
  // A 2-D slice keeps the first two remaining axes; 4-D slicing twice is the
  // caller's job.
  if (keep.size() != 2) throw BadParamsError("slice of dim > 3 not supported directly");

  Vec o2(2);
  o2[0] = g.origin()[keep[0]];
  o2[1] = g.origin()[keep[1]];
  Grid out(2, o2, g.spacing(), {g.shape()[keep[0]], g.shape()[keep[1]], 0, 0});
  CellIndex c{};
  c[axis] = layer;
  for (int i = 0; i < g.shape()[keep[0]]; ++i)
    for (int j = 0; j < g.shape()[keep[1]]; ++j) {
      c[keep[0]] = i;
      c[keep[1]] = j;
      out.set({i, j, 0, 0}, g.occupied(c));
    }
  return out;
}

/// Binary PGM, occupied = 0 (black), free = 255. Row 0 is the top of the
/// image (max-y cells) so the picture matches the usual axes orientation.
inline void save_pgm(const Grid& g, std::ostream& os) {
  if (g.dim() != 2) throw BadParamsError("PGM export requires a 2-D grid");
  int w = g.shape()[0], hgt = g.shape()[1];
  os << "P5\n" << w << ' ' << hgt << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(w));
  for (int j = hgt - 1; j >= 0; --j) {
    for (int i = 0; i < w; ++i)
      row[static_cast<std::size_t>(i)] = g.occupied({i, j, 0, 0}) ? '\0' : '\xff';
    os.write(row.data(), w);
  }
}

inline void save_pgm(const Grid& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  save_pgm(g, os);
  if (!os) throw IoError("write failed: " + path);
}

} // namespace circon
