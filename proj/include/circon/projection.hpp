#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "circon/body.hpp"
#include "circon/geom.hpp"
#include "circon/grid.hpp"
#include "circon/rng.hpp"

namespace circon {

inline constexpr double kFiberTol = 1e-9;

/// Circular projection f_{P(C)}: x goes to the nearest point of the sphere
/// slice S(P(C), |Cx|), i.e. C + (|x-C| / |p|) p where p is the in-plane part
/// of x - C.
inline Vec circular_project_point(const PuncturedPlane& pp, const Vec& x) {
  Vec p(x.dim()), q(x.dim());
  pp.split(x, p, q);
  double r = distance(x, pp.center());
  if (r <= 1e-12) throw PunctureHitError("point coincides with the puncture center");
  double rho = norm(p);
  if (rho <= kFiberTol)
    throw DegenerateFiberError("point lies in P^perp(C): projection undefined");
  return pp.center() + (r / rho) * p;
}

// ---------------------------------------------------------------------------
// Profile functions and g-non-linear projections
// ---------------------------------------------------------------------------

/// Profile g of a family of hypersurfaces of revolution: g(0) = 1, g'(0) = 0,
/// curvature at most 1, and a consistent bending sign. The bounding curve of a
/// convex surface of revolution is concave as a graph (the semicircle profile
/// has g'' < 0), so sign consistency rather than literal convexity is checked.
struct ProfileFunction {
  std::function<double(double)> g;
  double a = 1.0;  // domain [-a, b]
  double b = 1.0;

  void validate() const {
    if (!(a > 0) || !(b > 0)) throw BadParamsError("profile domain must be positive");
    double g0 = g(0.0);
    if (std::abs(g0 - 1.0) > 1e-6) throw BadParamsError("profile requires g(0) = 1");
    double fd = 1e-5;
    double d1 = (g(fd) - g(-fd)) / (2 * fd);
    if (std::abs(d1) > 1e-6) throw BadParamsError("profile requires g'(0) = 0");

    double lo = -0.95 * a, hi = 0.95 * b;
    int steps = 64;
    double step = (hi - lo) / steps;
    int sign = 0;
    for (int i = 1; i < steps; ++i) {
      double t = lo + i * step;
      double gm = g(t - step), gc = g(t), gp = g(t + step);
      double second = (gp - 2 * gc + gm) / (step * step);
      if (std::abs(second) > 1e-9) {
        int s = second > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign)
          throw BadParamsError("profile must bend consistently");
      }
      double first = (gp - gm) / (2 * step);
      double curvature = std::abs(second) / std::pow(1 + first * first, 1.5);
      if (curvature > 1.0 + 1e-6)
        throw BadParamsError("profile curvature exceeds 1");
    }
  }
};

inline ProfileFunction semicircle_profile() {
  ProfileFunction p;
  p.a = p.b = 1.0;
  p.g = [](double t) {
    double s = 1.0 - t * t;
    return s <= 0 ? 0.0 : std::sqrt(s);
  };
  return p;
}

/// Ellipse profile with complement semi-axis beta >= 1 (curvature 1/beta^2).
inline ProfileFunction ellipse_profile(double beta) {
  if (beta < 1.0) throw BadParamsError("ellipse profile requires beta >= 1");
  ProfileFunction p;
  p.a = p.b = beta;
  p.g = [beta](double t) {
    double s = 1.0 - (t / beta) * (t / beta);
    return s <= 0 ? 0.0 : std::sqrt(s);
  };
  return p;
}

/// g-non-linear projection: finds the smallest R with R g(y/R) = rho, where
/// rho is the in-plane radius of x - C and y its complement coordinate, then
/// maps x to the point of S(C, R) in P(C) along x's in-plane direction.
inline Vec g_nonlinear_project_point(const PuncturedPlane& pp,
                                     const ProfileFunction& profile, const Vec& x) {
  Vec p(x.dim()), q(x.dim());
  pp.split(x, p, q);
  double rho = norm(p);
  if (rho <= kFiberTol)
    throw DegenerateFiberError("point lies in P^perp(C): projection undefined");

  double y;
  if (pp.complement_dim() == 1)
    y = dot(x - pp.center(), pp.complement_basis()[0]);
  else
    y = norm(q);

  double r_full = distance(x, pp.center());
  double r_max = 10.0 * r_full;
  double r_min = 1e-6;
  // Keep y/R inside the profile domain.
  if (y > 0) r_min = std::max(r_min, y / profile.b);
  if (y < 0) r_min = std::max(r_min, -y / profile.a);
  if (r_min >= r_max)
    throw NoFiberSolutionError("profile domain excludes every admissible radius");

  auto residual = [&](double R) { return R * profile.g(y / R) - rho; };

  const int scan_steps = 512;
  double prev_r = r_min, prev_f = residual(r_min);
  double root = -1.0;
  for (int i = 1; i <= scan_steps && root < 0; ++i) {
    double R = r_min + (r_max - r_min) * i / scan_steps;
    double f = residual(R);
    if (prev_f == 0.0) {
      root = prev_r;
      break;
    }
    if ((prev_f < 0) != (f < 0)) {
      double lo = prev_r, hi = R;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = residual(mid);
        if (std::abs(fm) <= 1e-10) {
          lo = hi = mid;
          break;
        }
        if ((residual(lo) < 0) != (fm < 0)) hi = mid;
        else lo = mid;
      }
      root = 0.5 * (lo + hi);
    }
    prev_r = R;
    prev_f = f;
  }
  if (root < 0) throw NoFiberSolutionError("radius equation has no root in range");
  return pp.center() + (root / rho) * p;
}

// ---------------------------------------------------------------------------
// Projection maps and body images
// ---------------------------------------------------------------------------

using ChartCoords = std::array<double, kMaxDim>;

/// One member of a projection family: an orthogonal projection onto a plane
/// or a circular projection onto a punctured plane, together with the
/// orthonormal chart every image shares.
class ProjectionMap {
public:
  enum class Kind { Orthogonal, Circular };

  static ProjectionMap orthogonal(AffineSubspace target) {
    ProjectionMap m;
    m.kind_ = Kind::Orthogonal;
    m.target_ = std::move(target);
    return m;
  }

  static ProjectionMap circular(PuncturedPlane pp) {
    ProjectionMap m;
    m.kind_ = Kind::Circular;
    m.target_ = pp.plane();
    m.pp_.emplace(std::move(pp));
    return m;
  }

  Kind kind() const { return kind_; }
  int chart_dim() const { return target_->dim(); }
  int ambient_dim() const { return target_->ambient_dim(); }
  const Vec& chart_base() const {
    return kind_ == Kind::Circular ? pp_->center() : target_->base();
  }
  const std::vector<Vec>& chart_basis() const { return target_->basis(); }
  const PuncturedPlane& punctured() const { return *pp_; }

  /// Chart coordinates of the image of x; false when x is in the fiber
  /// degeneracy set P^perp(C) of a circular map.
  bool project(const Vec& x, ChartCoords& out) const {
    const Vec& base = chart_base();
    const auto& basis = target_->basis();
    if (kind_ == Kind::Orthogonal) {
      for (std::size_t i = 0; i < basis.size(); ++i) out[i] = dot(x - base, basis[i]);
      return true;
    }
    Vec v = x - base;
    double rho2 = 0.0;
    ChartCoords t{};
    for (std::size_t i = 0; i < basis.size(); ++i) {
      t[i] = dot(v, basis[i]);
      rho2 += t[i] * t[i];
    }
    double rho = std::sqrt(rho2);
    if (rho <= kFiberTol) return false;
    double scale = norm(v) / rho;
    for (std::size_t i = 0; i < basis.size(); ++i) out[i] = t[i] * scale;
    return true;
  }

  Vec chart_to_ambient(const ChartCoords& t) const {
    Vec p = chart_base();
    const auto& basis = target_->basis();
    for (std::size_t i = 0; i < basis.size(); ++i) p += t[i] * basis[i];
    return p;
  }

private:
  ProjectionMap() = default;

  Kind kind_ = Kind::Orthogonal;
  std::optional<AffineSubspace> target_;
  std::optional<PuncturedPlane> pp_;
};

/// Discretized image of a body under one projection map, over the map's
/// chart. The image lattice is anchored at chart coordinate 0 so images of
/// different bodies under the same map are directly comparable.
struct ProjectionImage {
  ProjectionMap map;
  Grid grid;                 // dim = chart dim
  std::size_t skipped = 0;   // source cells in the degeneracy set
  std::size_t source_cells = 0;

  bool contains_chart_point(const ChartCoords& t, int tol_cells = 1) const {
    CellIndex c{};
    const int d = grid.dim();
    for (int a = 0; a < d; ++a) {
      double u = (t[a] - grid.origin()[a]) / grid.spacing();
      int i = static_cast<int>(std::floor(u));
      if (i < -tol_cells || i >= grid.shape()[a] + tol_cells) return false;
      c[a] = i;
    }
    // Chebyshev neighborhood of tol_cells around the landing cell.
    CellIndex lo{}, hi{};
    for (int a = 0; a < d; ++a) {
      lo[a] = std::max(0, c[a] - tol_cells);
      hi[a] = std::min(grid.shape()[a] - 1, c[a] + tol_cells);
      if (lo[a] > hi[a]) return false;
    }
    CellIndex it = lo;
    for (;;) {
      if (grid.occupied(it)) return true;
      int a = d - 1;
      for (; a >= 0; --a) {
        if (++it[a] <= hi[a]) break;
        it[a] = lo[a];
      }
      if (a < 0) return false;
    }
  }
};

inline ProjectionImage project_body(const ProjectionMap& map, const Grid& body) {
  const int d = map.chart_dim();
  double h = body.spacing();

  std::vector<ChartCoords> coords;
  coords.reserve(body.count_occupied());
  std::size_t skipped = 0;
  double lo[kMaxDim], hi[kMaxDim];
  for (int a = 0; a < d; ++a) {
    lo[a] = std::numeric_limits<double>::infinity();
    hi[a] = -std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!body.occupied_linear(i)) continue;
    ChartCoords t{};
    if (!map.project(body.center(body.unlinear(i)), t)) {
      ++skipped;
      continue;
    }
    for (int a = 0; a < d; ++a) {
      lo[a] = std::min(lo[a], t[a]);
      hi[a] = std::max(hi[a], t[a]);
    }
    coords.push_back(t);
  }

  ProjectionImage img{map, Grid(), skipped, coords.size() + skipped};
  if (coords.empty()) {
    // Whole body in the degeneracy set; an empty 1-cell image.
    Vec origin(d);
    CellIndex shape{};
    for (int a = 0; a < d; ++a) shape[a] = 1;
    img.grid = Grid(d, origin, h, shape);
    return img;
  }

  Vec origin(d);
  CellIndex shape{};
  for (int a = 0; a < d; ++a) {
    // Anchor to multiples of h so images under the same chart share a lattice.
    long long first = static_cast<long long>(std::floor(lo[a] / h)) - 1;
    long long last = static_cast<long long>(std::floor(hi[a] / h)) + 1;
    origin[a] = static_cast<double>(first) * h;
    shape[a] = static_cast<int>(last - first + 1);
  }
  img.grid = Grid(d, origin, h, shape);
  for (const ChartCoords& t : coords) {
    Vec p(d);
    for (int a = 0; a < d; ++a) p[a] = t[a];
    CellIndex c{};
    if (img.grid.cell_of(p, c)) img.grid.set(c, true);
  }
  return img;
}

// ---------------------------------------------------------------------------
// Radial profiles (punctured-line projections)
// ---------------------------------------------------------------------------

/// 1-D occupancy over signed or unsigned radius from a center, bin width h.
struct RadialProfile {
  Vec center;
  Vec direction;     // line direction for signed profiles; zero otherwise
  bool sign_split = false;
  double h = 0.0;
  int bin_lo = 0;
  std::vector<std::uint8_t> bins;
  std::size_t skipped = 0;

  int bin_of(double s) const { return static_cast<int>(std::floor(s / h)); }

  bool occupied_bin(int b) const {
    int i = b - bin_lo;
    return i >= 0 && i < static_cast<int>(bins.size()) && bins[static_cast<std::size_t>(i)];
  }

  /// Unsigned profile: bin b occupied iff either sign's bin is.
  RadialProfile folded() const {
    RadialProfile out;
    out.center = center;
    out.direction = Vec(center.dim());
    out.sign_split = false;
    out.h = h;
    out.bin_lo = 0;
    int max_abs = 0;
    for (int i = 0; i < static_cast<int>(bins.size()); ++i) {
      if (!bins[static_cast<std::size_t>(i)]) continue;
      int b = bin_lo + i;
      int mag = b >= 0 ? b : -b - 1;
      max_abs = std::max(max_abs, mag);
    }
    out.bins.assign(static_cast<std::size_t>(max_abs) + 1, 0);
    for (int i = 0; i < static_cast<int>(bins.size()); ++i) {
      if (!bins[static_cast<std::size_t>(i)]) continue;
      int b = bin_lo + i;
      int mag = b >= 0 ? b : -b - 1;
      out.bins[static_cast<std::size_t>(mag)] = 1;
    }
    out.skipped = skipped;
    return out;
  }

  bool same_bins(const RadialProfile& o) const {
    int lo = std::min(bin_lo, o.bin_lo);
    int hi = std::max(bin_lo + static_cast<int>(bins.size()),
                      o.bin_lo + static_cast<int>(o.bins.size()));
    for (int b = lo; b < hi; ++b)
      if (occupied_bin(b) != o.occupied_bin(b)) return false;
    return true;
  }
};

/// |f_C|: occupancy over |Cx| for the occupied cells of the body.
inline RadialProfile positive_circular_projection(const Vec& c, const Grid& body) {
  RadialProfile p;
  p.center = c;
  p.direction = Vec(c.dim());
  p.sign_split = false;
  p.h = body.spacing();
  p.bin_lo = 0;

  std::vector<int> hits;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!body.occupied_linear(i)) continue;
    hits.push_back(p.bin_of(distance(body.center(body.unlinear(i)), c)));
  }
  if (hits.empty()) throw EmptyBodyError("profile of an empty body");
  int max_bin = *std::max_element(hits.begin(), hits.end());
  p.bins.assign(static_cast<std::size_t>(max_bin) + 1, 0);
  for (int b : hits) p.bins[static_cast<std::size_t>(b)] = 1;
  return p;
}

/// Circular projection onto a punctured line, kept as a signed radius: the
/// sign is the side of x relative to the hyperplane P^perp(C).
inline RadialProfile signed_line_projection(const PuncturedPlane& pp, const Grid& body) {
  if (pp.plane_dim() != 1)
    throw WrongDimensionError("signed line projection requires a 1-D target plane");
  const Vec& c = pp.center();
  const Vec& dir = pp.plane_basis()[0];

  RadialProfile p;
  p.center = c;
  p.direction = dir;
  p.sign_split = true;
  p.h = body.spacing();

  std::vector<int> hits;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!body.occupied_linear(i)) continue;
    Vec x = body.center(body.unlinear(i));
    double along = dot(x - c, dir);
    if (std::abs(along) <= kFiberTol) {
      ++p.skipped;
      continue;
    }
    double r = distance(x, c);
    hits.push_back(p.bin_of(along > 0 ? r : -r));
  }
  if (hits.empty()) throw EmptyBodyError("profile of an empty body");
  auto [mn, mx] = std::minmax_element(hits.begin(), hits.end());
  p.bin_lo = *mn;
  p.bins.assign(static_cast<std::size_t>(*mx - *mn) + 1, 0);
  for (int b : hits) p.bins[static_cast<std::size_t>(b - p.bin_lo)] = 1;
  return p;
}

// ---------------------------------------------------------------------------
// Projection families
// ---------------------------------------------------------------------------

/// Orthonormal frame of `count` random directions in E^n (seeded Gaussian
/// vectors, orthonormalized).
inline std::vector<Vec> random_orthonormal_frame(Rng& rng, int n, int count) {
  for (;;) {
    std::vector<Vec> vs;
    vs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) vs.push_back(rng.gaussian_vector(n));
    try {
      return orthonormalize(vs);
    } catch (const RankDeficientError&) {
      // Measure-zero event; resample.
    }
  }
}

/// Enumerable family of projection maps. Enumeration is a deterministic
/// sequence in the seed, and a prefix of a longer enumeration with the same
/// seed, so growing N only appends members.
struct ProjectionFamily {
  enum class Kind { AllOrthogonal, CircularCentersOnSet, CircularEps, CircularAxis };

  Kind kind = Kind::AllOrthogonal;
  int n = 0;      // ambient dimension
  int k = 0;      // kernel dimension; targets are (n-k)-planes
  int count = 0;  // members to enumerate
  std::uint64_t seed = 0;

  std::vector<Vec> centers;            // CircularCentersOnSet
  const Grid* body = nullptr;          // CircularEps
  double eps = 0.0;                    // CircularEps
  std::optional<AffineSubspace> axis;  // CircularAxis: L^k
  double axis_lo = 0.0, axis_hi = 0.0; // CircularAxis sampling range along L

  static ProjectionFamily all_orthogonal(int n, int k, int count, std::uint64_t seed) {
    ProjectionFamily f;
    f.kind = Kind::AllOrthogonal;
    f.n = n;
    f.k = k;
    f.count = count;
    f.seed = seed;
    return f;
  }

  static ProjectionFamily circular_eps(int k, const Grid& body, double eps, int count,
                                       std::uint64_t seed) {
    ProjectionFamily f;
    f.kind = Kind::CircularEps;
    f.n = body.dim();
    f.k = k;
    f.count = count;
    f.seed = seed;
    f.body = &body;
    f.eps = eps;
    return f;
  }

  static ProjectionFamily circular_centers(int n, int k, std::vector<Vec> centers,
                                           int count, std::uint64_t seed) {
    ProjectionFamily f;
    f.kind = Kind::CircularCentersOnSet;
    f.n = n;
    f.k = k;
    f.count = count;
    f.seed = seed;
    f.centers = std::move(centers);
    return f;
  }

  static ProjectionFamily circular_axis(AffineSubspace axis_plane, int count,
                                        double lo, double hi) {
    ProjectionFamily f;
    f.kind = Kind::CircularAxis;
    f.n = axis_plane.ambient_dim();
    f.k = axis_plane.dim();
    f.count = count;
    f.axis = std::move(axis_plane);
    f.axis_lo = lo;
    f.axis_hi = hi;
    return f;
  }

  void validate() const {
    if (n < 2 || n > kMaxDim) throw BadParamsError("family: ambient dim out of range");
    if (k < 1 || k >= n) throw BadParamsError("family: requires 1 <= k < n");
    if (count < 1) throw EmptyFamilyError("family: no members requested");
  }
};

namespace detail {

/// Min distance from any occupied cell center to the subspace; early exit
/// once below `below` (used for rejection tests).
inline bool subspace_clears_body(const AffineSubspace& s, const Grid& body,
                                 double clearance) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!body.occupied_linear(i)) continue;
    if (s.distance_to(body.center(body.unlinear(i))) <= clearance) return false;
  }
  return true;
}

} // namespace detail

inline std::vector<ProjectionMap> enumerate_family(const ProjectionFamily& fam) {
  fam.validate();
  std::vector<ProjectionMap> maps;
  maps.reserve(static_cast<std::size_t>(fam.count));

  switch (fam.kind) {
    case ProjectionFamily::Kind::AllOrthogonal: {
      Rng rng(fam.seed, "family-all-orthogonal");
      for (int i = 0; i < fam.count; ++i) {
        auto basis = random_orthonormal_frame(rng, fam.n, fam.n - fam.k);
        maps.push_back(ProjectionMap::orthogonal(
            AffineSubspace::from_orthonormal(Vec(fam.n), std::move(basis))));
      }
      break;
    }

    case ProjectionFamily::Kind::CircularCentersOnSet: {
      if (fam.centers.empty()) throw EmptyFamilyError("center set is empty");
      Rng rng(fam.seed, "family-centers-on-set");
      for (int i = 0; i < fam.count; ++i) {
        const Vec& c = fam.centers[static_cast<std::size_t>(i) % fam.centers.size()];
        auto basis = random_orthonormal_frame(rng, fam.n, fam.n - fam.k);
        maps.push_back(ProjectionMap::circular(PuncturedPlane(
            AffineSubspace::from_orthonormal(c, std::move(basis)), c)));
      }
      break;
    }

    case ProjectionFamily::Kind::CircularEps: {
      if (!fam.body) throw BadParamsError("CircularEps family needs a body");
      if (fam.eps <= 0) throw BadParamsError("CircularEps family needs eps > 0");
      const Grid& body = *fam.body;
      double reach = 1.0 / fam.eps;
      double h = body.spacing();
      Vec lo, hi;
      body.occupied_box(lo, hi);

      Rng rng(fam.seed, "family-circular-eps");
      // Distance to the body is measured with an EDT over a dilated lattice.
      int margin = static_cast<int>(std::ceil(reach / h)) + 2;
      Vec ext_origin = body.origin();
      CellIndex ext_shape = body.shape();
      for (int a = 0; a < body.dim(); ++a) {
        ext_origin[a] -= margin * h;
        ext_shape[a] += 2 * margin;
      }
      Grid ext(body.dim(), ext_origin, h, ext_shape);
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (!body.occupied_linear(i)) continue;
        CellIndex c = body.unlinear(i);
        for (int a = 0; a < body.dim(); ++a) c[a] += margin;
        ext.set(c, true);
      }
      auto d2 = distance_transform(ext, [&](std::size_t i) { return ext.occupied_linear(i); });

      long attempts = 0;
      const long max_attempts = static_cast<long>(fam.count) * 4000;
      while (static_cast<int>(maps.size()) < fam.count && attempts < max_attempts) {
        ++attempts;
        Vec c(fam.n);
        for (int a = 0; a < fam.n; ++a)
          c[a] = rng.uniform(lo[a] - reach - h, hi[a] + reach + h);
        CellIndex cc{};
        if (!ext.cell_of(c, cc)) continue;
        double dist = h * std::sqrt(static_cast<double>(d2[ext.linear(cc)]));
        if (dist <= h || dist > reach) continue;  // inside/touching body, or too far
        auto basis = random_orthonormal_frame(rng, fam.n, fam.n - fam.k);
        PuncturedPlane pp(AffineSubspace::from_orthonormal(c, std::move(basis)), c);
        // Members must have P^perp(C) disjoint from the body.
        if (!detail::subspace_clears_body(pp.complement_plane(), body, 2 * h)) continue;
        maps.push_back(ProjectionMap::circular(std::move(pp)));
      }
      if (static_cast<int>(maps.size()) < fam.count)
        throw EmptyFamilyError("CircularEps rejection sampling exhausted (" +
                               std::to_string(maps.size()) + "/" +
                               std::to_string(fam.count) + " members)");
      break;
    }

    case ProjectionFamily::Kind::CircularAxis: {
      const AffineSubspace& L = *fam.axis;
      if (L.dim() < 1) throw BadParamsError("CircularAxis needs an axis of dim >= 1");
      auto completion = orthonormal_completion(L.basis(), L.ambient_dim());
      for (int i = 0; i < fam.count; ++i) {
        double t = fam.count == 1
                       ? 0.5 * (fam.axis_lo + fam.axis_hi)
                       : fam.axis_lo + (fam.axis_hi - fam.axis_lo) * i / (fam.count - 1);
        Vec c = L.base() + t * L.basis()[0];
        maps.push_back(ProjectionMap::circular(PuncturedPlane(
            AffineSubspace::from_orthonormal(c, completion), c)));
      }
      break;
    }
  }

  if (maps.empty()) throw EmptyFamilyError("family enumeration produced no members");
  return maps;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline void save_projection_image(const ProjectionImage& img, std::ostream& os) {
  os << "pimg 1\n";
  os << "kind " << (img.map.kind() == ProjectionMap::Kind::Circular ? "circular"
                                                                    : "orthogonal")
     << "\n";
  os << "ambient " << img.map.ambient_dim() << "\n";
  os << "base";
  for (int a = 0; a < img.map.ambient_dim(); ++a)
    os << ' ' << detail::format_double(img.map.chart_base()[a]);
  os << "\n";
  for (const Vec& e : img.map.chart_basis()) {
    os << "basis";
    for (int a = 0; a < img.map.ambient_dim(); ++a)
      os << ' ' << detail::format_double(e[a]);
    os << "\n";
  }
  os << "skipped " << img.skipped << "\n";
  save_gbody(img.grid, os);
}

inline void save_projection_image(const ProjectionImage& img, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  save_projection_image(img, os);
}

inline void save_profile(const RadialProfile& p, std::ostream& os) {
  os << "profile 1\n";
  os << "signed " << (p.sign_split ? 1 : 0) << "\n";
  os << "center";
  for (int a = 0; a < p.center.dim(); ++a) os << ' ' << detail::format_double(p.center[a]);
  os << "\ndirection";
  for (int a = 0; a < p.direction.dim(); ++a)
    os << ' ' << detail::format_double(p.direction[a]);
  os << "\nspacing " << detail::format_double(p.h) << "\n";
  os << "bin_lo " << p.bin_lo << "\n";
  os << "skipped " << p.skipped << "\n";
  os << "bins ";
  for (auto b : p.bins) os << (b ? '1' : '0');
  os << "\n";
}

inline void save_profile(const RadialProfile& p, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  save_profile(p, os);
}

} // namespace circon
