#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "circon/grid.hpp"

namespace circon {

/// Analytic body: membership predicate plus a bounding box outside of which
/// the predicate is false.
struct ImplicitBody {
  int dim = 0;
  std::function<bool(const Vec&)> membership;
  Vec box_lo, box_hi;

  bool contains(const Vec& p) const { return membership(p); }
};

/// Cell occupied iff the membership predicate holds at the cell center.
/// The grid covers the bounding box with a one-cell margin.
inline Grid rasterize(const ImplicitBody& b, double h) {
  if (h <= 0) throw BadParamsError("rasterize: spacing must be positive");
  const int d = b.dim;
  Vec origin(d);
  CellIndex shape{};
  for (int a = 0; a < d; ++a) {
    double lo = b.box_lo[a], hi = b.box_hi[a];
    if (!(hi > lo)) throw BadParamsError("rasterize: degenerate bounding box");
    origin[a] = lo - h;
    shape[a] = static_cast<int>(std::ceil((hi + h - origin[a]) / h));
    if (shape[a] < 4)
      throw ResolutionTooCoarseError("fewer than 4 cells along axis " +
                                     std::to_string(a));
  }
  Grid g(d, origin, h, shape);
  bool any = false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (b.membership(g.center(g.unlinear(i)))) {
      g.set_linear(i, true);
      any = true;
    }
  }
  if (!any) throw EmptyBodyError("rasterize: predicate is empty on the grid");
  return g;
}

// ---------------------------------------------------------------------------
// Corpus generators
// ---------------------------------------------------------------------------

using BodyParams = std::map<std::string, double>;

namespace detail {

class ParamReader {
public:
  explicit ParamReader(const BodyParams& p) : params_(p) {}

  double get(const std::string& key, double fallback) {
    seen_.push_back(key);
    auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }

  ~ParamReader() = default;

  void finish(const std::string& shape) const {
    for (const auto& [key, value] : params_) {
      (void)value;
      bool known = false;
      for (const auto& s : seen_)
        if (s == key) known = true;
      if (!known)
        throw BadParamsError("unknown parameter '" + key + "' for body '" + shape + "'");
    }
  }

private:
  const BodyParams& params_;
  std::vector<std::string> seen_;
};

inline ImplicitBody make_ball(int n, Vec c, double r) {
  if (r <= 0) throw BadParamsError("ball radius must be positive");
  ImplicitBody b;
  b.dim = n;
  b.box_lo = Vec(n);
  b.box_hi = Vec(n);
  for (int a = 0; a < n; ++a) {
    b.box_lo[a] = c[a] - r;
    b.box_hi[a] = c[a] + r;
  }
  b.membership = [c, r](const Vec& p) { return distance(p, c) <= r; };
  return b;
}

} // namespace detail

inline ImplicitBody implicit_ball(Vec center, double radius) {
  return detail::make_ball(center.dim(), std::move(center), radius);
}

inline ImplicitBody implicit_union(const ImplicitBody& a, const ImplicitBody& b) {
  if (a.dim != b.dim) throw WrongDimensionError("union of mixed-dimension bodies");
  ImplicitBody u;
  u.dim = a.dim;
  u.box_lo = Vec(a.dim);
  u.box_hi = Vec(a.dim);
  for (int i = 0; i < a.dim; ++i) {
    u.box_lo[i] = std::min(a.box_lo[i], b.box_lo[i]);
    u.box_hi[i] = std::max(a.box_hi[i], b.box_hi[i]);
  }
  auto ma = a.membership, mb = b.membership;
  u.membership = [ma, mb](const Vec& p) { return ma(p) || mb(p); };
  return u;
}

/// Builds one of the named corpus bodies. Every body the classifier and hull
/// regressions exercise comes from here so tests and the CLI agree on
/// geometry.
inline ImplicitBody generate(const std::string& name, const BodyParams& params = {}) {
  detail::ParamReader pr(params);

  if (name == "ball") {
    int n = static_cast<int>(pr.get("n", 2));
    double r = pr.get("r", 0.5);
    Vec c(n);
    const char* keys[] = {"cx", "cy", "cz", "cw"};
    for (int a = 0; a < n; ++a) c[a] = pr.get(keys[a], 0.0);
    pr.finish(name);
    return detail::make_ball(n, c, r);
  }

  if (name == "block") {
    int n = static_cast<int>(pr.get("n", 2));
    double a_all = pr.get("a", 0.5);
    Vec half(n), c(n);
    const char* hkeys[] = {"a0", "a1", "a2", "a3"};
    const char* ckeys[] = {"cx", "cy", "cz", "cw"};
    for (int a = 0; a < n; ++a) {
      half[a] = pr.get(hkeys[a], a_all);
      c[a] = pr.get(ckeys[a], 0.0);
      if (half[a] <= 0) throw BadParamsError("block half-extent must be positive");
    }
    pr.finish(name);
    ImplicitBody b;
    b.dim = n;
    b.box_lo = c - half;
    b.box_hi = c + half;
    b.membership = [c, half, n](const Vec& p) {
      for (int a = 0; a < n; ++a)
        if (std::abs(p[a] - c[a]) > half[a]) return false;
      return true;
    };
    return b;
  }

  if (name == "annulus") {
    int n = static_cast<int>(pr.get("n", 2));
    double inner = pr.get("inner", 2.0);
    double outer = pr.get("outer", 3.0);
    pr.finish(name);
    if (!(0 < inner && inner < outer))
      throw BadParamsError("annulus requires 0 < inner < outer");
    ImplicitBody b;
    b.dim = n;
    b.box_lo = Vec(n);
    b.box_hi = Vec(n);
    for (int a = 0; a < n; ++a) {
      b.box_lo[a] = -outer;
      b.box_hi[a] = outer;
    }
    b.membership = [inner, outer](const Vec& p) {
      double r = norm(p);
      return inner <= r && r <= outer;
    };
    return b;
  }

  if (name == "chessboard") {
    int n = static_cast<int>(pr.get("n", 2));
    int cells = static_cast<int>(pr.get("cells", 8));
    pr.finish(name);
    if (cells < 2) throw BadParamsError("chessboard needs at least 2 cells per side");
    ImplicitBody b;
    b.dim = n;
    b.box_lo = Vec(n);
    b.box_hi = Vec(n);
    for (int a = 0; a < n; ++a) {
      b.box_lo[a] = 0;
      b.box_hi[a] = cells;
    }
    b.membership = [n, cells](const Vec& p) {
      int parity = 0;
      for (int a = 0; a < n; ++a) {
        if (p[a] < 0 || p[a] > cells) return false;
        int i = std::min(static_cast<int>(std::floor(p[a])), cells - 1);
        parity += i;
      }
      return parity % 2 == 0;
    };
    return b;
  }

  if (name == "helicoid_body") {
    pr.finish(name);
    // Solid between the helicoid sheets M_0 and M_1 over one turn:
    // { (u cos v, u sin v, t) : 0 <= v <= 2pi, 0 <= u <= 1, v <= t <= v + 1 }.
    constexpr double two_pi = 6.283185307179586476925286766559;
    ImplicitBody b;
    b.dim = 3;
    b.box_lo = {-1.0, -1.0, 0.0};
    b.box_hi = {1.0, 1.0, two_pi + 1.0};
    b.membership = [](const Vec& p) {
      double u = std::hypot(p[0], p[1]);
      if (u > 1.0) return false;
      if (u < 1e-12) return p[2] >= 0.0 && p[2] <= two_pi + 1.0;
      double v = std::atan2(p[1], p[0]);
      if (v < 0) v += two_pi;
      return v <= p[2] && p[2] <= v + 1.0;
    };
    return b;
  }

  if (name == "envelope_body") {
    double c = pr.get("c", 0.025);       // half-thickness
    double tilt_deg = pr.get("tilt", 5); // front face leans outward by this
    pr.finish(name);
    if (c <= 0 || c > 0.05) throw BadParamsError("envelope thickness out of range");
    // Four sheets wrapped around the unit cube [-1/2,1/2]^3, open along x.
    // Bottom, back and top are axis-aligned slabs; the front sheet hangs from
    // the bottom-front hinge and leans outward, leaving a slit at the
    // front-top corner. The witness pocket is the cube interior.
    const double a = 0.5, t = 2 * c;
    const double tau = tilt_deg * 0.017453292519943295;
    const double ux = -std::sin(tau), uz = std::cos(tau);
    const double nx = -std::cos(tau), nz = -std::sin(tau);
    ImplicitBody b;
    b.dim = 3;
    double ymin = -a - std::sin(tau) - t;
    b.box_lo = {-a, ymin, -a - t};
    b.box_hi = {a, a + t, a + t};
    b.membership = [=](const Vec& p) {
      if (std::abs(p[0]) > a) return false;
      double y = p[1], z = p[2];
      // bottom slab
      if (z >= -a - t && z <= -a && y >= -a - t && y <= a + t) return true;
      // back slab
      if (y >= a && y <= a + t && z >= -a && z <= a + t) return true;
      // top slab (front edge flush with the cavity plane y = -a)
      if (z >= a && z <= a + t && y >= -a && y <= a + t) return true;
      // tilted front sheet hinged at (y,z) = (-a,-a)
      double vy = y + a, vz = z + a;
      double s = vy * ux + vz * uz;
      double w = vy * nx + vz * nz;
      return s >= 0.0 && s <= 1.0 && w >= 0.0 && w <= t;
    };
    return b;
  }

  if (name == "pi_body") {
    double w = pr.get("wall", 0.2);
    double gap = pr.get("gap", 0.8);
    double height = pr.get("height", 0.6);
    double depth = pr.get("depth", 1.0);
    pr.finish(name);
    if (gap < 3 * w) throw BadParamsError("pi body gap must be >= 3x wall thickness");
    double L = gap + 2 * w;
    ImplicitBody b;
    b.dim = 3;
    b.box_lo = {0, 0, 0};
    b.box_hi = {L, depth, height};
    b.membership = [=](const Vec& p) {
      if (p[0] < 0 || p[0] > L || p[1] < 0 || p[1] > depth || p[2] < 0 ||
          p[2] > height)
        return false;
      if (p[2] <= w) return true;                 // floor
      return p[0] <= w || p[0] >= L - w;          // walls
    };
    return b;
  }

  if (name == "reuleaux") {
    double w = pr.get("width", 1.0);
    pr.finish(name);
    if (w <= 0) throw BadParamsError("reuleaux width must be positive");
    // Intersection of three disks of radius w centered at the vertices of an
    // equilateral triangle of side w.
    Vec v0{0.0, 0.0}, v1{w, 0.0};
    Vec v2{0.5 * w, 0.86602540378443864676 * w};
    ImplicitBody b;
    b.dim = 2;
    b.box_lo = {0.0, 0.0};
    b.box_hi = {w, v2[1] + 0.0};
    // The triangle's arcs bulge beyond the triangle: extend box to the arcs.
    b.box_lo[1] = v2[1] - w;
    b.box_hi[1] = w;
    b.membership = [=](const Vec& p) {
      return distance(p, v0) <= w && distance(p, v1) <= w && distance(p, v2) <= w;
    };
    return b;
  }

  if (name == "ring_plus_ball") {
    double eps = pr.get("eps", 1.0);
    pr.finish(name);
    if (eps <= 0) throw BadParamsError("eps must be positive");
    double inner = 1 + 2 / eps, outer = 3 + 2 / eps;
    ImplicitBody ring;
    ring.dim = 2;
    ring.box_lo = {-outer, -outer};
    ring.box_hi = {outer, outer};
    ring.membership = [inner, outer](const Vec& p) {
      double r = norm(p);
      return inner <= r && r <= outer;
    };
    return implicit_union(ring, implicit_ball(Vec{0.0, 0.0}, 1.0));
  }

  if (name == "large_annulus") {
    double eps = pr.get("eps", 1.0);
    pr.finish(name);
    if (eps <= 0) throw BadParamsError("eps must be positive");
    return generate("annulus", {{"inner", 2 / eps}, {"outer", 3 / eps}});
  }

  throw UnknownCorpusNameError("unknown corpus body: " + name);
}

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "ball",          "block",    "annulus",  "chessboard",
      "helicoid_body", "envelope_body", "pi_body", "reuleaux",
      "ring_plus_ball", "large_annulus"};
  return names;
}

} // namespace circon
