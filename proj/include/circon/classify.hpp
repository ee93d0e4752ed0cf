#pragma once

#include <algorithm>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "circon/geom.hpp"
#include "circon/parallel.hpp"
#include "circon/projection.hpp"

namespace circon {

// ---------------------------------------------------------------------------
// Class taxonomy
// ---------------------------------------------------------------------------

enum class ClassId {
  K1, K2, V1, V2,          // half-plane classes
  K1w, K2w, V1w, V2w,      // weak variants: bare k-planes
  Keps1, Keps2, Veps1, Veps2  // supporting-ball classes
};

struct ClassTraits {
  int i = 1;          // 1: boundary witnesses, 2: exterior witnesses
  bool weak = false;  // certificate is a bare plane
  bool eps = false;   // certificate is a ball/sphere of radius 1/eps
  bool visible = false;  // V-class: witnesses may be planes/spheres (m < k)
};

inline ClassTraits class_traits(ClassId id) {
  switch (id) {
    case ClassId::K1: return {1, false, false, false};
    case ClassId::K2: return {2, false, false, false};
    case ClassId::V1: return {1, false, false, true};
    case ClassId::V2: return {2, false, false, true};
    case ClassId::K1w: return {1, true, false, false};
    case ClassId::K2w: return {2, true, false, false};
    case ClassId::V1w: return {1, true, false, true};
    case ClassId::V2w: return {2, true, false, true};
    case ClassId::Keps1: return {1, false, true, false};
    case ClassId::Keps2: return {2, false, true, false};
    case ClassId::Veps1: return {1, false, true, true};
    case ClassId::Veps2: return {2, false, true, true};
  }
  throw BadParamsError("unknown class id");
}

inline std::string to_string(ClassId id) {
  switch (id) {
    case ClassId::K1: return "K1";
    case ClassId::K2: return "K2";
    case ClassId::V1: return "V1";
    case ClassId::V2: return "V2";
    case ClassId::K1w: return "K1w";
    case ClassId::K2w: return "K2w";
    case ClassId::V1w: return "V1w";
    case ClassId::V2w: return "V2w";
    case ClassId::Keps1: return "Keps1";
    case ClassId::Keps2: return "Keps2";
    case ClassId::Veps1: return "Veps1";
    case ClassId::Veps2: return "Veps2";
  }
  return "?";
}

inline ClassId parse_class_id(const std::string& s) {
  for (ClassId id : {ClassId::K1, ClassId::K2, ClassId::V1, ClassId::V2,
                     ClassId::K1w, ClassId::K2w, ClassId::V1w, ClassId::V2w,
                     ClassId::Keps1, ClassId::Keps2, ClassId::Veps1, ClassId::Veps2})
    if (to_string(id) == s) return id;
  throw BadParamsError("unknown class id: " + s);
}

// ---------------------------------------------------------------------------
// Supporting objects and the reference predicate
// ---------------------------------------------------------------------------

using SupportingObject = std::variant<HalfPlane, AffineSubspace, DiskSlice, SphereSlice>;

inline double object_distance(const SupportingObject& obj, const Vec& x) {
  return std::visit([&](const auto& o) { return o.distance_to(x); }, obj);
}

inline std::string object_kind(const SupportingObject& obj) {
  switch (obj.index()) {
    case 0: return "half-plane";
    case 1: return "plane";
    case 2: return "ball";
    default: return "sphere";
  }
}

enum class SupportStatus { Supporting, Disjoint, IntersectsInterior };

inline const char* to_string(SupportStatus s) {
  switch (s) {
    case SupportStatus::Supporting: return "SUPPORTING";
    case SupportStatus::Disjoint: return "DISJOINT";
    default: return "INTERSECTS_INTERIOR";
  }
}

/// Distance fields around a body: EDT to the occupied set and to the boundary
/// cells over a dilated lattice, plus interior depth on the body lattice.
class BodyFields {
public:
  BodyFields(const Grid& body, double margin_world) : body_(&body) {
    double h = body.spacing();
    int m = static_cast<int>(std::ceil(margin_world / h)) + 2;
    Vec origin = body.origin();
    CellIndex shape = body.shape();
    for (int a = 0; a < body.dim(); ++a) {
      origin[a] -= m * h;
      shape[a] += 2 * m;
    }
    ext_ = Grid(body.dim(), origin, h, shape);
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (!body.occupied_linear(i)) continue;
      CellIndex c = body.unlinear(i);
      for (int a = 0; a < body.dim(); ++a) c[a] += m;
      ext_.set(c, true);
    }
    d2_occ_ = distance_transform(ext_, [this](std::size_t i) { return ext_.occupied_linear(i); });

    std::vector<std::uint8_t> bnd(ext_.size(), 0);
    for (std::size_t i : boundary_cells_linear(ext_)) bnd[i] = 1;
    d2_bnd_ = distance_transform(ext_, [&](std::size_t i) { return bnd[i] != 0; });

    // Interior depth via EDT to the unoccupied set on a 1-cell padded lattice
    // (the world outside the grid counts as unoccupied).
    Vec porigin = body.origin();
    CellIndex pshape = body.shape();
    for (int a = 0; a < body.dim(); ++a) {
      porigin[a] -= h;
      pshape[a] += 2;
    }
    Grid padded(body.dim(), porigin, h, pshape);
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (!body.occupied_linear(i)) continue;
      CellIndex c = body.unlinear(i);
      for (int a = 0; a < body.dim(); ++a) c[a] += 1;
      padded.set(c, true);
    }
    d2_free_ = distance_transform(padded, [&](std::size_t i) { return !padded.occupied_linear(i); });
    padded_ = std::move(padded);
  }

  const Grid& body() const { return *body_; }
  const Grid& extended() const { return ext_; }

  double dist_to_occupied(const Vec& p) const {
    CellIndex c{};
    if (!ext_.cell_of(p, c)) return 1e18;
    return ext_.spacing() * std::sqrt(static_cast<double>(d2_occ_[ext_.linear(c)]));
  }

  double dist_to_boundary_cells(const Vec& p) const {
    CellIndex c{};
    if (!ext_.cell_of(p, c)) return 1e18;
    return ext_.spacing() * std::sqrt(static_cast<double>(d2_bnd_[ext_.linear(c)]));
  }

  /// Depth inside the occupied set; 0 at unoccupied points.
  double interior_depth(const Vec& p) const {
    CellIndex c{};
    if (!padded_.cell_of(p, c)) return 0.0;
    if (!padded_.occupied(c)) return 0.0;
    return padded_.spacing() * std::sqrt(static_cast<double>(d2_free_[padded_.linear(c)]));
  }

private:
  const Grid* body_;
  Grid ext_, padded_;
  std::vector<float> d2_occ_, d2_bnd_, d2_free_;
};

namespace detail {

/// Lattice samples of a supporting object at the given step, restricted to a
/// ball of `radius` around `focus` (plus the object's own bounded extent).
inline std::vector<Vec> sample_object(const SupportingObject& obj, const Vec& focus,
                                      double radius, double step) {
  std::vector<Vec> out;
  auto clip = [&](const Vec& p) {
    if (distance(p, focus) <= radius) out.push_back(p);
  };

  if (std::holds_alternative<AffineSubspace>(obj)) {
    const auto& plane = std::get<AffineSubspace>(obj);
    if (plane.dim() == 0) {
      clip(plane.base());
      return out;
    }
    Vec anchor = plane.project(focus);
    int half = static_cast<int>(std::ceil(radius / step));
    std::vector<int> idx(static_cast<std::size_t>(plane.dim()), -half);
    for (;;) {
      Vec p = anchor;
      for (int a = 0; a < plane.dim(); ++a)
        p += (idx[static_cast<std::size_t>(a)] * step) * plane.basis()[static_cast<std::size_t>(a)];
      clip(p);
      int a = plane.dim() - 1;
      for (; a >= 0; --a) {
        if (++idx[static_cast<std::size_t>(a)] <= half) break;
        idx[static_cast<std::size_t>(a)] = -half;
      }
      if (a < 0) break;
    }
    return out;
  }

  if (std::holds_alternative<HalfPlane>(obj)) {
    const auto& hp = std::get<HalfPlane>(obj);
    const auto& bnd = hp.boundary();
    Vec anchor = bnd.project(focus);
    int half = static_cast<int>(std::ceil(radius / step));
    double smax = std::min(hp.radius(), 2 * radius + distance(anchor, focus));
    int ns = static_cast<int>(std::ceil(smax / step));
    std::vector<int> idx(static_cast<std::size_t>(bnd.dim()), -half);
    for (;;) {
      Vec base = anchor;
      for (int a = 0; a < bnd.dim(); ++a)
        base += (idx[static_cast<std::size_t>(a)] * step) * bnd.basis()[static_cast<std::size_t>(a)];
      for (int s = 0; s <= ns; ++s) clip(base + (s * step) * hp.direction());
      int a = bnd.dim() - 1;
      for (; a >= 0; --a) {
        if (++idx[static_cast<std::size_t>(a)] <= half) break;
        idx[static_cast<std::size_t>(a)] = -half;
      }
      if (a < 0) break;
    }
    return out;
  }

  if (std::holds_alternative<DiskSlice>(obj)) {
    const auto& disk = std::get<DiskSlice>(obj);
    const auto& carrier = disk.carrier();
    int d = carrier.dim();
    int half = static_cast<int>(std::ceil(disk.radius() / step));
    std::vector<int> idx(static_cast<std::size_t>(d), -half);
    for (;;) {
      double r2 = 0;
      Vec p = disk.center();
      for (int a = 0; a < d; ++a) {
        double t = idx[static_cast<std::size_t>(a)] * step;
        r2 += t * t;
        p += t * carrier.basis()[static_cast<std::size_t>(a)];
      }
      if (r2 <= disk.radius() * disk.radius()) clip(p);
      int a = d - 1;
      for (; a >= 0; --a) {
        if (++idx[static_cast<std::size_t>(a)] <= half) break;
        idx[static_cast<std::size_t>(a)] = -half;
      }
      if (a < 0) break;
    }
    return out;
  }

  const auto& sphere = std::get<SphereSlice>(obj);
  const auto& carrier = sphere.carrier();
  double R = sphere.radius();
  int sd = carrier.dim() - 1;  // sphere dimension
  if (sd == 0) {
    clip(sphere.center() + R * carrier.basis()[0]);
    clip(sphere.center() - R * carrier.basis()[0]);
  } else if (sd == 1) {
    int nt = std::max(8, static_cast<int>(std::ceil(2 * 3.14159265358979 * R / step)));
    for (int i = 0; i < nt; ++i) {
      double a = 2 * 3.14159265358979 * i / nt;
      clip(sphere.center() + (R * std::cos(a)) * carrier.basis()[0] +
           (R * std::sin(a)) * carrier.basis()[1]);
    }
  } else {
    // Fibonacci lattice on S^2 (sd == 2); S^3 falls back to seeded uniform.
    long count = std::lround(std::max(64.0, 4 * 3.14159265 * R * R / (step * step)));
    count = std::min(count, 2000000L);
    if (sd == 2) {
      const double ga = 2.39996322972865332;
      for (long i = 0; i < count; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / count;
        double r = std::sqrt(std::max(0.0, 1 - z * z));
        double a = ga * i;
        clip(sphere.center() + (R * r * std::cos(a)) * carrier.basis()[0] +
             (R * r * std::sin(a)) * carrier.basis()[1] + (R * z) * carrier.basis()[2]);
      }
    } else {
      Rng rng(17, "sphere-samples");
      for (long i = 0; i < count; ++i) {
        Vec u = rng.unit_vector(4);
        Vec p = sphere.center();
        for (int a = 0; a < 4; ++a) p += (R * u[a]) * carrier.basis()[static_cast<std::size_t>(a)];
        clip(p);
      }
    }
  }
  return out;
}

} // namespace detail

/// Reference three-way predicate: samples the object at spacing <= h/2 and
/// reads the body's distance fields. Certificates returned by classify
/// re-validate against this.
inline SupportStatus is_supporting(const SupportingObject& obj, const Grid& body,
                                   double delta, const BodyFields* fields = nullptr) {
  double h = body.spacing();
  if (delta < h) throw BadParamsError("is_supporting requires delta >= grid spacing");
  std::optional<BodyFields> local;
  if (!fields) {
    local.emplace(body, 4 * h + delta);
    fields = &*local;
  }

  Vec lo, hi;
  body.occupied_box(lo, hi);
  Vec focus = (lo + hi) * 0.5;
  double radius = 0.5 * distance(lo, hi) + delta + 2 * h;

  auto samples = detail::sample_object(obj, focus, radius, h / 2);
  bool touches = false;
  for (const Vec& p : samples) {
    if (fields->interior_depth(p) > delta) return SupportStatus::IntersectsInterior;
    if (fields->dist_to_boundary_cells(p) <= delta) touches = true;
  }
  return touches ? SupportStatus::Supporting : SupportStatus::Disjoint;
}

// ---------------------------------------------------------------------------
// Certificate search
// ---------------------------------------------------------------------------

struct SearchBudget {
  int frames = 0;              // 0: 256 for n <= 3, 1024 for n = 4
  int dirs_per_frame = 64;
  int max_boundary_witnesses = 2000;
  int max_exterior_witnesses = 5000;
  std::uint64_t seed = 0;
  double delta = 0.0;          // 0: 2h
  int m = -1;                  // V-class witness codimension parameter; -1: k
  int plane_witnesses = 96;    // V-class witness objects when m < k
  std::vector<Vec> extra_witnesses;
};

struct WitnessFailure {
  Vec witness;
  std::string reason;
};

struct CertificateSample {
  Vec witness;
  SupportingObject object;
};

struct ClassVerdict {
  ClassId class_id = ClassId::K1;
  int k = 0;
  std::optional<double> eps;
  bool member = false;
  std::size_t witnesses_checked = 0;
  std::vector<WitnessFailure> failures;        // first 10 in witness order
  std::vector<CertificateSample> certificates; // sampled successes
  int frames_used = 0;
  int dirs_used = 0;
};

namespace detail {

using Pt = std::array<double, 4>;

inline Pt to_pt(const Vec& v) {
  Pt p{};
  for (int a = 0; a < v.dim(); ++a) p[static_cast<std::size_t>(a)] = v[a];
  return p;
}

struct FlatFrame {
  int dim = 0;      // number of vectors
  int n = 0;        // ambient
  Pt v[4]{};

  static FlatFrame from(const std::vector<Vec>& basis) {
    FlatFrame f;
    f.dim = static_cast<int>(basis.size());
    f.n = basis.empty() ? 0 : basis[0].dim();
    for (int i = 0; i < f.dim; ++i) f.v[i] = to_pt(basis[static_cast<std::size_t>(i)]);
    return f;
  }

  std::vector<Vec> to_vecs() const {
    std::vector<Vec> out;
    for (int i = 0; i < dim; ++i) {
      Vec e(n);
      for (int a = 0; a < n; ++a) e[a] = v[i][static_cast<std::size_t>(a)];
      out.push_back(e);
    }
    return out;
  }
};

/// Candidate evaluation against flat point sets. Returns true when no point
/// comes closer to the object than `threshold`.
struct FlatScan {
  const std::vector<Pt>* pts = nullptr;
  int n = 0;

  bool clears_halfplane(const Pt& base, const FlatFrame& bnd, const Pt& dir,
                        double threshold) const {
    double t2 = threshold * threshold;
    for (const Pt& c : *pts) {
      double v[4];
      double vv = 0;
      for (int a = 0; a < n; ++a) {
        v[a] = c[static_cast<std::size_t>(a)] - base[static_cast<std::size_t>(a)];
        vv += v[a] * v[a];
      }
      double sum = 0;
      for (int i = 0; i < bnd.dim; ++i) {
        double d = 0;
        for (int a = 0; a < n; ++a) d += v[a] * bnd.v[i][static_cast<std::size_t>(a)];
        sum += d * d;
      }
      double s = 0;
      for (int a = 0; a < n; ++a) s += v[a] * dir[static_cast<std::size_t>(a)];
      double d2 = vv - sum - s * s;
      if (s < 0) d2 += s * s;
      if (d2 < t2) return false;
    }
    return true;
  }

  bool clears_plane(const Pt& base, const FlatFrame& bnd, double threshold) const {
    double t2 = threshold * threshold;
    for (const Pt& c : *pts) {
      double v[4];
      double vv = 0;
      for (int a = 0; a < n; ++a) {
        v[a] = c[static_cast<std::size_t>(a)] - base[static_cast<std::size_t>(a)];
        vv += v[a] * v[a];
      }
      double sum = 0;
      for (int i = 0; i < bnd.dim; ++i) {
        double d = 0;
        for (int a = 0; a < n; ++a) d += v[a] * bnd.v[i][static_cast<std::size_t>(a)];
        sum += d * d;
      }
      if (vv - sum < t2) return false;
    }
    return true;
  }

  bool clears_disk(const Pt& center, const FlatFrame& carrier, double R,
                   double threshold) const {
    double t2 = threshold * threshold;
    for (const Pt& c : *pts) {
      double v[4];
      double vv = 0;
      for (int a = 0; a < n; ++a) {
        v[a] = c[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)];
        vv += v[a] * v[a];
      }
      double rho2 = 0;
      for (int i = 0; i < carrier.dim; ++i) {
        double d = 0;
        for (int a = 0; a < n; ++a) d += v[a] * carrier.v[i][static_cast<std::size_t>(a)];
        rho2 += d * d;
      }
      double w2 = std::max(0.0, vv - rho2);
      double rho = std::sqrt(rho2);
      double dr = std::max(0.0, rho - R);
      if (w2 + dr * dr < t2) return false;
    }
    return true;
  }

  bool clears_sphere(const Pt& center, const FlatFrame& carrier, double R,
                     double threshold) const {
    double t2 = threshold * threshold;
    for (const Pt& c : *pts) {
      double v[4];
      double vv = 0;
      for (int a = 0; a < n; ++a) {
        v[a] = c[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)];
        vv += v[a] * v[a];
      }
      double rho2 = 0;
      for (int i = 0; i < carrier.dim; ++i) {
        double d = 0;
        for (int a = 0; a < n; ++a) d += v[a] * carrier.v[i][static_cast<std::size_t>(a)];
        rho2 += d * d;
      }
      double w2 = std::max(0.0, vv - rho2);
      double dr = std::sqrt(rho2) - R;
      if (w2 + dr * dr < t2) return false;
    }
    return true;
  }
};

/// Signed-field outward normal estimate at x (gradient of distance-to-body
/// minus interior depth). Falls back to the centroid direction.
inline Vec outward_normal(const BodyFields& fields, const Vec& x, const Vec& centroid) {
  double h = fields.body().spacing();
  int n = x.dim();
  Vec g(n);
  for (int a = 0; a < n; ++a) {
    Vec xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    double sp = fields.dist_to_occupied(xp) - fields.interior_depth(xp);
    double sm = fields.dist_to_occupied(xm) - fields.interior_depth(xm);
    g[a] = sp - sm;
  }
  double gn = norm(g);
  if (gn > 1e-12) return g / gn;
  Vec d = x - centroid;
  double dn = norm(d);
  if (dn > 1e-12) return d / dn;
  Vec e(n);
  e[0] = 1;
  return e;
}

/// All distinct directions (up to sign) whose coordinates are in {-1, 0, 1},
/// normalized: axes, face diagonals, space diagonals.
inline std::vector<Vec> nice_directions(int n) {
  std::vector<Vec> out;
  int total = 1;
  for (int a = 0; a < n; ++a) total *= 3;
  for (int code = 1; code < total; ++code) {
    Vec v(n);
    int rem = code;
    int first_nonzero_sign = 0;
    for (int a = 0; a < n; ++a) {
      int t = rem % 3;
      rem /= 3;
      v[a] = t == 2 ? -1 : t;
      if (first_nonzero_sign == 0 && v[a] != 0)
        first_nonzero_sign = v[a] > 0 ? 1 : -1;
    }
    if (first_nonzero_sign < 0) continue;  // dedupe sign pairs
    out.push_back(normalized(v));
  }
  // Axes first, then face diagonals, then heavier ones.
  std::stable_sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
    auto weight = [](const Vec& v) {
      int w = 0;
      for (int i = 0; i < v.dim(); ++i)
        if (std::abs(v[i]) > 1e-9) ++w;
      return w;
    };
    return weight(a) < weight(b);
  });
  return out;
}

/// Frames of `dim` pairwise-orthogonal nice directions, then seeded random
/// frames up to `count` total. The structured prefix makes certificates with
/// axis/diagonal orientations deterministic finds.
inline std::vector<FlatFrame> make_frames(int n, int dim, int count, Rng& rng) {
  std::vector<FlatFrame> frames;
  auto nice = nice_directions(n);

  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::vector<Vec>&)> rec =
      [&](std::size_t start, std::vector<Vec>& acc) {
        if (static_cast<int>(frames.size()) >= count) return;
        if (static_cast<int>(acc.size()) == dim) {
          frames.push_back(FlatFrame::from(acc));
          return;
        }
        for (std::size_t i = start; i < nice.size(); ++i) {
          bool ortho = true;
          for (const Vec& e : acc)
            if (std::abs(dot(e, nice[i])) > 1e-9) ortho = false;
          if (!ortho) continue;
          acc.push_back(nice[i]);
          rec(i + 1, acc);
          acc.pop_back();
          if (frames.size() >= 64) return;  // cap the structured prefix
        }
      };
  std::vector<Vec> acc;
  rec(0, acc);

  while (static_cast<int>(frames.size()) < count)
    frames.push_back(FlatFrame::from(random_orthonormal_frame(rng, n, dim)));
  return frames;
}

/// Unit coefficient rows in R^m: axes, +-normal-aligned slots get added by
/// the caller; here axes, diagonals and seeded random fill.
inline std::vector<std::vector<double>> make_dir_rows(int m, int count, Rng& rng) {
  std::vector<std::vector<double>> rows;
  for (int a = 0; a < m && static_cast<int>(rows.size()) < count; ++a)
    for (int s = -1; s <= 1 && static_cast<int>(rows.size()) < count; s += 2) {
      std::vector<double> r(static_cast<std::size_t>(m), 0.0);
      r[static_cast<std::size_t>(a)] = s;
      rows.push_back(r);
    }
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int sa = -1; sa <= 1; sa += 2)
        for (int sb = -1; sb <= 1; sb += 2) {
          if (static_cast<int>(rows.size()) >= count) return rows;
          std::vector<double> r(static_cast<std::size_t>(m), 0.0);
          r[static_cast<std::size_t>(a)] = sa * 0.7071067811865476;
          r[static_cast<std::size_t>(b)] = sb * 0.7071067811865476;
          rows.push_back(r);
        }
  while (static_cast<int>(rows.size()) < count) {
    std::vector<double> r(static_cast<std::size_t>(m));
    double n2 = 0;
    for (int a = 0; a < m; ++a) {
      r[static_cast<std::size_t>(a)] = rng.normal();
      n2 += r[static_cast<std::size_t>(a)] * r[static_cast<std::size_t>(a)];
    }
    if (n2 < 1e-12) continue;
    double inv = 1.0 / std::sqrt(n2);
    for (auto& t : r) t *= inv;
    rows.push_back(r);
  }
  return rows;
}

/// Deterministic partial Fisher-Yates: the first `take` elements of a seeded
/// shuffle of [0, n).
inline std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t take, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  take = std::min(take, n);
  for (std::size_t i = 0; i < take; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.bits() % (n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  std::sort(idx.begin(), idx.end());  // keep witness order spatial/deterministic
  return idx;
}

} // namespace detail

// Forward declaration; definition below.
ClassVerdict classify(const Grid& body, ClassId class_id, int k,
                      std::optional<double> eps, const SearchBudget& budget_in);

namespace detail {

struct ClassifyContext {
  const Grid* body = nullptr;
  const BodyFields* fields = nullptr;
  int n = 0, k = 0;
  double h = 0, delta = 0, R = 0;  // R = 1/eps for eps classes
  double r_hit = 0;                // interior rejection radius
  double dis_thresh = 0;           // disjoint acceptance threshold
  double center_slack = 0;         // eps center constraint slack
  std::vector<Pt> occ_pts, deep_pts;
  Vec centroid;
  FlatScan occ_scan, deep_scan;
  const std::vector<FlatFrame>* frames = nullptr;       // dim k (plane/halfplane)
  const std::vector<FlatFrame>* carrier_frames = nullptr;  // dim k+1 (eps)
  const std::vector<std::vector<double>>* dir_rows_complement = nullptr;  // R^{n-k}
  const std::vector<std::vector<double>>* dir_rows_carrier = nullptr;     // R^{k+1}
  int max_frames = 0;
  Rng* ext_rng = nullptr;  // V-class extension sampling
};

/// Builds per-witness adapted frames: completions around the outward normal.
inline std::vector<FlatFrame> adapted_frames(const ClassifyContext& ctx, const Vec& nhat,
                                             int dim, bool include_normal_first) {
  std::vector<FlatFrame> out;
  std::vector<Vec> tangents = orthonormal_completion({nhat}, ctx.n);
  if (include_normal_first) {
    // Frames containing the normal as first vector (eps carriers).
    std::vector<Vec> acc{nhat};
    for (std::size_t i = 0; i + static_cast<std::size_t>(dim) - 1 <= tangents.size() &&
                            static_cast<int>(acc.size()) < dim; ++i)
      acc.push_back(tangents[i]);
    if (static_cast<int>(acc.size()) == dim) out.push_back(FlatFrame::from(acc));
    // Other tangent picks.
    if (dim == 2 && tangents.size() >= 2)
      out.push_back(FlatFrame::from({nhat, tangents[1]}));
  } else {
    // Tangent frames (plane/half-plane boundaries).
    int t = static_cast<int>(tangents.size());
    if (dim <= t) {
      std::vector<int> sel(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) sel[static_cast<std::size_t>(i)] = i;
      for (;;) {
        std::vector<Vec> acc;
        for (int i : sel) acc.push_back(tangents[static_cast<std::size_t>(i)]);
        out.push_back(FlatFrame::from(acc));
        int pos = dim - 1;
        while (pos >= 0 && sel[static_cast<std::size_t>(pos)] == t - dim + pos) --pos;
        if (pos < 0) break;
        ++sel[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < dim; ++i)
          sel[static_cast<std::size_t>(i)] = sel[static_cast<std::size_t>(i - 1)] + 1;
      }
      // 45-degree blends of tangent pairs widen the tangent coverage.
      if (dim == 1 && t >= 2) {
        out.push_back(FlatFrame::from({normalized(tangents[0] + tangents[1])}));
        out.push_back(FlatFrame::from({normalized(tangents[0] - tangents[1])}));
      }
    }
  }
  return out;
}

/// Direction candidates inside a frame's complement (dimension m), expressed
/// as coefficient rows; the witness normal's complement coordinates get fine
/// angular sweeps against each complement axis.
inline std::vector<std::vector<double>> directed_rows(
    const std::vector<double>& nhat_coeffs, int m,
    const std::vector<std::vector<double>>& shared_rows) {
  std::vector<std::vector<double>> rows;
  int budget = static_cast<int>(shared_rows.size());
  double nn = 0;
  for (double t : nhat_coeffs) nn += t * t;
  if (nn > 1e-12) {
    double inv = 1.0 / std::sqrt(nn);
    std::vector<double> nh(nhat_coeffs);
    for (auto& t : nh) t *= inv;
    rows.push_back(nh);
    if (m >= 2) {
      // Sweep in the (normal, axis) planes at 3-degree steps, nearest first.
      for (int axis = 0; axis < m && static_cast<int>(rows.size()) < budget; ++axis) {
        std::vector<double> ax(static_cast<std::size_t>(m), 0.0);
        ax[static_cast<std::size_t>(axis)] = 1.0;
        double along = nh[static_cast<std::size_t>(axis)];
        std::vector<double> perp = ax;
        for (int i = 0; i < m; ++i) perp[static_cast<std::size_t>(i)] -= along * nh[static_cast<std::size_t>(i)];
        double pn = 0;
        for (double t : perp) pn += t * t;
        if (pn < 1e-12) continue;
        pn = std::sqrt(pn);
        for (auto& t : perp) t /= pn;
        for (int step = 1; step <= 30 && static_cast<int>(rows.size()) + 1 < budget; ++step) {
          double psi = step * 0.05235987755982988;  // 3 degrees
          double cp = std::cos(psi), sp = std::sin(psi);
          std::vector<double> r1(static_cast<std::size_t>(m)), r2(static_cast<std::size_t>(m));
          for (int i = 0; i < m; ++i) {
            r1[static_cast<std::size_t>(i)] = cp * nh[static_cast<std::size_t>(i)] + sp * perp[static_cast<std::size_t>(i)];
            r2[static_cast<std::size_t>(i)] = cp * nh[static_cast<std::size_t>(i)] - sp * perp[static_cast<std::size_t>(i)];
          }
          rows.push_back(r1);
          rows.push_back(r2);
        }
      }
    } else {
      rows.push_back({-nh[0]});
    }
  }
  for (const auto& r : shared_rows) {
    if (static_cast<int>(rows.size()) >= budget + 61) break;
    rows.push_back(r);
  }
  return rows;
}

inline Vec row_to_ambient(const std::vector<double>& row, const FlatFrame& frame) {
  Vec out(frame.n);
  for (int i = 0; i < frame.dim; ++i)
    for (int a = 0; a < frame.n; ++a)
      out[a] += row[static_cast<std::size_t>(i)] * frame.v[i][static_cast<std::size_t>(a)];
  return out;
}

inline std::vector<double> coeffs_in_frame(const Vec& v, const FlatFrame& frame) {
  std::vector<double> out(static_cast<std::size_t>(frame.dim));
  for (int i = 0; i < frame.dim; ++i) {
    double d = 0;
    for (int a = 0; a < frame.n; ++a)
      d += v[a] * frame.v[i][static_cast<std::size_t>(a)];
    out[static_cast<std::size_t>(i)] = d;
  }
  return out;
}

/// Half-plane / bare-plane certificate search at witness x.
/// supporting = true avoids the delta-deep interior (i = 1); false demands
/// full disjointness from the occupied set (i = 2).
inline std::optional<SupportingObject> search_plane_certificate(
    const ClassifyContext& ctx, const Vec& x, bool weak, bool supporting) {
  const FlatScan& scan = supporting ? ctx.deep_scan : ctx.occ_scan;
  double threshold = supporting ? ctx.r_hit : ctx.dis_thresh;
  Pt base = to_pt(x);
  Vec nhat = outward_normal(*ctx.fields, x, ctx.centroid);

  std::vector<FlatFrame> frames = adapted_frames(ctx, nhat, ctx.k, false);
  int budget = ctx.max_frames;
  for (const FlatFrame& f : *ctx.frames) {
    if (static_cast<int>(frames.size()) >= budget) break;
    frames.push_back(f);
  }

  for (const FlatFrame& f : frames) {
    if (weak) {
      if (scan.clears_plane(base, f, threshold))
        return SupportingObject(AffineSubspace::from_orthonormal(x, f.to_vecs()));
      continue;
    }
    auto complement = orthonormal_completion(f.to_vecs(), ctx.n);
    FlatFrame comp = FlatFrame::from(complement);
    auto rows = directed_rows(coeffs_in_frame(nhat, comp), comp.dim,
                              *ctx.dir_rows_complement);
    for (const auto& row : rows) {
      Vec dir = row_to_ambient(row, comp);
      double dn = norm(dir);
      if (dn < 1e-9) continue;
      dir = dir / dn;
      if (scan.clears_halfplane(base, f, to_pt(dir), threshold))
        return SupportingObject(
            HalfPlane(AffineSubspace::from_orthonormal(x, f.to_vecs()), dir));
    }
  }
  return std::nullopt;
}

/// Supporting/disjoint ball certificate search at witness x (eps classes,
/// point witnesses): balls B^{k+1}(C, R) with x on the boundary sphere.
inline std::optional<SupportingObject> search_ball_certificate(
    const ClassifyContext& ctx, const Vec& x, int i) {
  bool supporting = i == 1;
  const FlatScan& scan = supporting ? ctx.deep_scan : ctx.occ_scan;
  double threshold = supporting ? ctx.r_hit : ctx.dis_thresh;
  Vec nhat = outward_normal(*ctx.fields, x, ctx.centroid);
  int cd = ctx.k + 1;  // carrier dimension

  std::vector<FlatFrame> carriers = adapted_frames(ctx, nhat, cd, true);
  int budget = ctx.max_frames;
  for (const FlatFrame& f : *ctx.carrier_frames) {
    if (static_cast<int>(carriers.size()) >= budget) break;
    carriers.push_back(f);
  }

  for (const FlatFrame& carrier : carriers) {
    auto rows = directed_rows(coeffs_in_frame(nhat, carrier), carrier.dim,
                              *ctx.dir_rows_carrier);
    for (const auto& row : rows) {
      Vec u = row_to_ambient(row, carrier);
      double un = norm(u);
      if (un < 1e-9) continue;
      u = u / un;
      Vec c = x + ctx.R * u;
      if (!supporting) {
        // Family constraint dist(C, K) <= 1/eps, with coordinated slack.
        if (ctx.fields->dist_to_occupied(c) > ctx.R + ctx.center_slack) continue;
      }
      if (scan.clears_disk(to_pt(c), carrier, ctx.R, threshold))
        return SupportingObject(DiskSlice(
            c, ctx.R, AffineSubspace::from_orthonormal(c, carrier.to_vecs())));
    }
  }
  return std::nullopt;
}

/// V-class certificate for a plane witness Q^{k-m} (m < k): a half-plane
/// whose boundary k-plane contains Q.
inline std::optional<SupportingObject> search_vclass_plane_certificate(
    const ClassifyContext& ctx, const Vec& x, const FlatFrame& q, bool supporting) {
  const FlatScan& scan = supporting ? ctx.deep_scan : ctx.occ_scan;
  double threshold = supporting ? ctx.r_hit : ctx.dis_thresh;
  Pt base = to_pt(x);
  Vec nhat = outward_normal(*ctx.fields, x, ctx.centroid);
  int m = ctx.k - q.dim;

  auto free_dirs = orthonormal_completion(q.to_vecs(), ctx.n);
  FlatFrame free_frame = FlatFrame::from(free_dirs);
  auto ext_rows = make_dir_rows(free_frame.dim, 48, *ctx.ext_rng);

  // Extend Q by m directions to a candidate boundary k-plane.
  std::vector<FlatFrame> boundaries;
  std::function<void(std::size_t, std::vector<Vec>&)> rec =
      [&](std::size_t start, std::vector<Vec>& acc) {
        if (static_cast<int>(acc.size()) == m) {
          std::vector<Vec> full = q.to_vecs();
          for (const Vec& e : acc) full.push_back(e);
          boundaries.push_back(FlatFrame::from(full));
          return;
        }
        for (std::size_t j = start; j < free_dirs.size(); ++j) {
          acc.push_back(free_dirs[j]);
          rec(j + 1, acc);
          acc.pop_back();
          if (boundaries.size() >= 16) return;
        }
      };
  std::vector<Vec> acc;
  rec(0, acc);
  // A few random extensions widen the orientation coverage.
  for (const auto& row : ext_rows) {
    if (boundaries.size() >= 40 || m != 1) break;
    Vec e = row_to_ambient(row, free_frame);
    double en = norm(e);
    if (en < 1e-9) continue;
    std::vector<Vec> full = q.to_vecs();
    full.push_back(e / en);
    boundaries.push_back(FlatFrame::from(full));
  }

  for (const FlatFrame& f : boundaries) {
    auto complement = orthonormal_completion(f.to_vecs(), ctx.n);
    FlatFrame comp = FlatFrame::from(complement);
    auto rows = directed_rows(coeffs_in_frame(nhat, comp), comp.dim,
                              *ctx.dir_rows_complement);
    for (const auto& row : rows) {
      Vec dir = row_to_ambient(row, comp);
      double dn = norm(dir);
      if (dn < 1e-9) continue;
      dir = dir / dn;
      if (scan.clears_halfplane(base, f, to_pt(dir), threshold))
        return SupportingObject(
            HalfPlane(AffineSubspace::from_orthonormal(x, f.to_vecs()), dir));
    }
  }
  return std::nullopt;
}

/// Veps certificate for a ball/sphere witness: the same-center extension of
/// the carrier to k+1 dimensions (a lower-dimensional ball or sphere of
/// radius 1/eps sits inside one of the same radius only concentrically).
inline std::optional<SupportingObject> search_veps_extension_certificate(
    const ClassifyContext& ctx, const Vec& c, const FlatFrame& small_carrier, int i) {
  bool supporting = i == 1;
  const FlatScan& scan = supporting ? ctx.deep_scan : ctx.occ_scan;
  double threshold = supporting ? ctx.r_hit : ctx.dis_thresh;
  int m = ctx.k + 1 - small_carrier.dim;

  auto free_dirs = orthonormal_completion(small_carrier.to_vecs(), ctx.n);
  std::vector<FlatFrame> carriers;
  std::function<void(std::size_t, std::vector<Vec>&)> rec =
      [&](std::size_t start, std::vector<Vec>& acc) {
        if (static_cast<int>(acc.size()) == m) {
          std::vector<Vec> full = small_carrier.to_vecs();
          for (const Vec& e : acc) full.push_back(e);
          carriers.push_back(FlatFrame::from(full));
          return;
        }
        for (std::size_t j = start; j < free_dirs.size(); ++j) {
          acc.push_back(free_dirs[j]);
          rec(j + 1, acc);
          acc.pop_back();
          if (carriers.size() >= 24) return;
        }
      };
  std::vector<Vec> acc;
  rec(0, acc);

  for (const FlatFrame& carrier : carriers) {
    if (scan.clears_disk(to_pt(c), carrier, ctx.R, threshold)) {
      AffineSubspace cs = AffineSubspace::from_orthonormal(c, carrier.to_vecs());
      if (supporting) return SupportingObject(DiskSlice(c, ctx.R, cs));
      return SupportingObject(DiskSlice(c, ctx.R, cs));
    }
  }
  return std::nullopt;
}

/// V-class witness object: a plane (plain classes) or a ball/sphere carrier
/// (eps classes) anchored at a position, already verified against the body.
struct VWitness {
  Vec anchor;        // boundary/exterior position, or the center C for eps
  FlatFrame frame;   // Q^{k-m} orientation, or the small carrier
};

} // namespace detail

/// Certificate-search membership test for one class at one budget.
inline ClassVerdict classify(const Grid& body, ClassId class_id, int k,
                             std::optional<double> eps, const SearchBudget& budget_in) {
  using namespace detail;
  const ClassTraits tr = class_traits(class_id);
  const int n = body.dim();
  const double h = body.spacing();

  if (k < 1 || k >= n)
    throw UnsupportedCombinationError("classify requires 1 <= k < n");
  if (tr.eps) {
    if (!eps || *eps <= 0) throw BadParamsError("eps class requires eps > 0");
    if (k + 1 > n)
      throw UnsupportedCombinationError("eps class requires carrier dim k+1 <= n");
  }

  SearchBudget budget = budget_in;
  if (budget.frames <= 0) budget.frames = n == 4 ? 1024 : 256;
  if (budget.dirs_per_frame <= 0 || budget.max_boundary_witnesses <= 0 ||
      budget.max_exterior_witnesses <= 0 || budget.plane_witnesses <= 0)
    throw BadBudgetError("search budget fields must be positive");
  if (budget.delta <= 0) budget.delta = 2 * h;
  int m = budget.m < 0 ? k : budget.m;
  if (m > k || m < 1) throw UnsupportedCombinationError("requires 0 < m <= k");
  if (!tr.visible) m = k;  // K classes have point witnesses by definition

  ClassifyContext ctx;
  ctx.body = &body;
  ctx.n = n;
  ctx.k = k;
  ctx.h = h;
  ctx.delta = budget.delta;
  ctx.R = tr.eps ? 1.0 / *eps : 0.0;
  ctx.r_hit = 0.5 * h * std::sqrt(static_cast<double>(n));
  ctx.dis_thresh = budget.delta + 0.5 * h;
  ctx.center_slack = 2 * budget.delta + h;

  double field_margin = tr.eps ? ctx.R + 2 * ctx.center_slack + 4 * h : 6 * h;
  BodyFields fields(body, field_margin);
  ctx.fields = &fields;
  ctx.centroid = body.centroid();

  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!body.occupied_linear(i)) continue;
    Vec c = body.center(body.unlinear(i));
    ctx.occ_pts.push_back(to_pt(c));
    if (fields.interior_depth(c) > budget.delta) ctx.deep_pts.push_back(to_pt(c));
  }
  ctx.occ_scan = {&ctx.occ_pts, n};
  ctx.deep_scan = {&ctx.deep_pts, n};

  Rng frame_rng(budget.seed, "classify-frames");
  Rng dir_rng(budget.seed, "classify-dirs");
  Rng wit_rng(budget.seed, "classify-witnesses");
  Rng ext_rng(budget.seed, "classify-extensions");
  ctx.ext_rng = &ext_rng;

  auto frames = make_frames(n, k, budget.frames, frame_rng);
  ctx.frames = &frames;
  std::vector<FlatFrame> carrier_frames;
  if (tr.eps) carrier_frames = make_frames(n, k + 1, budget.frames, frame_rng);
  ctx.carrier_frames = &carrier_frames;
  auto rows_complement = make_dir_rows(n - k, budget.dirs_per_frame, dir_rng);
  ctx.dir_rows_complement = &rows_complement;
  std::vector<std::vector<double>> rows_carrier;
  if (tr.eps) rows_carrier = make_dir_rows(k + 1, budget.dirs_per_frame, dir_rng);
  ctx.dir_rows_carrier = &rows_carrier;
  ctx.max_frames = budget.frames;

  // ---- witness collection -------------------------------------------------
  const double collar = 4 * h;  // exterior witnesses keep this clearance
  std::vector<Vec> point_witnesses;
  for (const Vec& w : budget.extra_witnesses) point_witnesses.push_back(w);

  if (tr.i == 1) {
    auto bnd = boundary_cells_linear(body);
    auto take = subsample_indices(bnd.size(),
                                  static_cast<std::size_t>(budget.max_boundary_witnesses),
                                  wit_rng);
    for (std::size_t t : take) point_witnesses.push_back(body.center(body.unlinear(bnd[t])));
  } else {
    const Grid& ext = fields.extended();
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < ext.size(); ++i) {
      if (ext.occupied_linear(i)) continue;
      Vec c = ext.center(ext.unlinear(i));
      double dist = fields.dist_to_occupied(c);
      if (dist < collar) continue;
      if (tr.eps) {
        if (dist > ctx.R) continue;
      } else {
        // Plain classes quantify over the body grid's free cells.
        CellIndex bc{};
        if (!body.cell_of(c, bc)) continue;
      }
      eligible.push_back(i);
    }
    auto take = subsample_indices(eligible.size(),
                                  static_cast<std::size_t>(budget.max_exterior_witnesses),
                                  wit_rng);
    for (std::size_t t : take) point_witnesses.push_back(ext.center(ext.unlinear(eligible[t])));
  }

  // V-class object witnesses for m < k.
  std::vector<VWitness> object_witnesses;
  if (tr.visible && m < k) {
    int qdim = k - m;
    auto qframes = make_frames(n, tr.eps ? qdim + 1 : qdim, 24, ext_rng);
    std::size_t stride = std::max<std::size_t>(1, point_witnesses.size() / 16);
    for (std::size_t wi = 0; wi < point_witnesses.size() &&
                             object_witnesses.size() <
                                 static_cast<std::size_t>(budget.plane_witnesses);
         wi += stride) {
      const Vec& x = point_witnesses[wi];
      for (const FlatFrame& qf : qframes) {
        if (object_witnesses.size() >= static_cast<std::size_t>(budget.plane_witnesses))
          break;
        if (!tr.eps) {
          bool ok = tr.i == 1 ? ctx.deep_scan.clears_plane(to_pt(x), qf, ctx.r_hit)
                              : ctx.occ_scan.clears_plane(to_pt(x), qf, ctx.dis_thresh);
          if (ok) object_witnesses.push_back({x, qf});
        } else if (tr.i == 1) {
          Vec nhat = outward_normal(fields, x, ctx.centroid);
          Vec u = qf.to_vecs()[0];
          if (std::abs(dot(u, nhat)) < 0.3) continue;
          Vec c = x + ctx.R * (dot(u, nhat) > 0 ? u : -u);
          if (ctx.deep_scan.clears_disk(to_pt(c), qf, ctx.R, ctx.r_hit))
            object_witnesses.push_back({c, qf});
        } else {
          // Witness sphere S^{k-m}(C, R) disjoint from the body, C near it.
          if (fields.dist_to_occupied(x) > ctx.R + ctx.center_slack) continue;
          if (ctx.occ_scan.clears_sphere(to_pt(x), qf, ctx.R, ctx.dis_thresh))
            object_witnesses.push_back({x, qf});
        }
      }
    }
    point_witnesses.clear();
  }

  // ---- search -------------------------------------------------------------
  ClassVerdict verdict;
  verdict.class_id = class_id;
  verdict.k = k;
  verdict.eps = tr.eps ? eps : std::nullopt;
  verdict.frames_used = budget.frames;
  verdict.dirs_used = budget.dirs_per_frame;

  std::size_t total = tr.visible && m < k ? object_witnesses.size() : point_witnesses.size();
  verdict.witnesses_checked = total;

  std::vector<std::optional<SupportingObject>> results(total);
  const std::size_t chunk = 256;
  std::size_t failures_seen = 0;
  std::size_t processed = 0;
  std::size_t cert_stride = std::max<std::size_t>(1, total / 16);

  for (std::size_t begin = 0; begin < total && failures_seen < 10; begin += chunk) {
    std::size_t end = std::min(total, begin + chunk);
    parallel_for(end - begin, [&](std::size_t j) {
      std::size_t i = begin + j;
      if (tr.visible && m < k) {
        const VWitness& vw = object_witnesses[i];
        if (!tr.eps)
          results[i] = search_vclass_plane_certificate(ctx, vw.anchor, vw.frame, tr.i == 1);
        else
          results[i] = search_veps_extension_certificate(ctx, vw.anchor, vw.frame, tr.i);
      } else {
        const Vec& x = point_witnesses[i];
        if (tr.eps)
          results[i] = search_ball_certificate(ctx, x, tr.i);
        else
          results[i] = search_plane_certificate(ctx, x, tr.weak, tr.i == 1);
      }
    });
    for (std::size_t i = begin; i < end; ++i) {
      Vec wpos = tr.visible && m < k ? object_witnesses[i].anchor : point_witnesses[i];
      if (!results[i]) {
        if (verdict.failures.size() < 10) {
          std::ostringstream reason;
          reason << "no " << to_string(class_id) << " certificate within budget ("
                 << budget.frames << " frames x " << budget.dirs_per_frame << " dirs)";
          verdict.failures.push_back({wpos, reason.str()});
        }
        ++failures_seen;
      } else if (i % cert_stride == 0 && verdict.certificates.size() < 16) {
        verdict.certificates.push_back({wpos, *results[i]});
      }
    }
    processed = end;
  }
  (void)processed;

  verdict.member = failures_seen == 0;
  return verdict;
}

// ---------------------------------------------------------------------------
// Ray-vertex dual path
// ---------------------------------------------------------------------------

/// Precomputed images for repeated ray-vertex queries against one family.
struct RayCheckData {
  std::vector<ProjectionImage> images;
  std::vector<std::vector<detail::Pt>> occ_pts;   // chart coords per image
  std::vector<std::vector<detail::Pt>> deep_pts;  // eroded image cells
  double h = 0;
};

inline RayCheckData make_ray_check_data(const Grid& body, const ProjectionFamily& fam) {
  if (fam.kind != ProjectionFamily::Kind::AllOrthogonal)
    throw BadParamsError("ray_vertex_check requires an orthogonal family");
  RayCheckData data;
  data.h = body.spacing();
  auto maps = enumerate_family(fam);
  for (const auto& map : maps) data.images.push_back(project_body(map, body));

  for (const auto& img : data.images) {
    const Grid& g = img.grid;
    auto d2_free = distance_transform(g, [&](std::size_t i) { return !g.occupied_linear(i); });
    std::vector<detail::Pt> occ, deep;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g.occupied_linear(i)) continue;
      Vec c = g.center(g.unlinear(i));
      detail::Pt p{};
      for (int a = 0; a < g.dim(); ++a) p[static_cast<std::size_t>(a)] = c[a];
      occ.push_back(p);
      double depth = g.spacing() * std::sqrt(static_cast<double>(d2_free[i]));
      // The free-side EDT sees the grid border as free space only if padded;
      // image grids carry a 1-cell empty margin by construction.
      if (depth > 2 * g.spacing()) deep.push_back(p);
    }
    data.occ_pts.push_back(std::move(occ));
    data.deep_pts.push_back(std::move(deep));
  }
  return data;
}

/// True iff some member admits a ray with vertex f(x) that is supporting
/// (mode "supporting") or disjoint (mode "disjoint") for f(body).
inline bool ray_vertex_check(const RayCheckData& data, const Vec& x, bool supporting,
                             int n_ray_dirs = 64) {
  using detail::FlatFrame;
  using detail::FlatScan;
  Rng rng(99, "ray-dirs");

  for (std::size_t mi = 0; mi < data.images.size(); ++mi) {
    const ProjectionImage& img = data.images[mi];
    ChartCoords t{};
    if (!img.map.project(x, t)) continue;
    int d = img.map.chart_dim();
    detail::Pt vert{};
    for (int a = 0; a < d; ++a) vert[static_cast<std::size_t>(a)] = t[a];

    FlatScan scan;
    scan.n = d;
    scan.pts = supporting ? &data.deep_pts[mi] : &data.occ_pts[mi];
    double threshold = supporting ? 0.5 * data.h * std::sqrt(static_cast<double>(d))
                                  : 2 * data.h + 0.5 * data.h;

    Rng local(773 + static_cast<std::uint64_t>(mi), "ray-dirs-member");
    auto rows = detail::make_dir_rows(d, n_ray_dirs, local);
    FlatFrame empty;
    empty.dim = 0;
    empty.n = d;
    for (const auto& row : rows) {
      detail::Pt dir{};
      for (int a = 0; a < d; ++a) dir[static_cast<std::size_t>(a)] = row[static_cast<std::size_t>(a)];
      if (scan.clears_halfplane(vert, empty, dir, threshold)) return true;
    }
  }
  (void)rng;
  return false;
}

inline bool ray_vertex_check(const Grid& body, const Vec& x, int k,
                             const ProjectionFamily& fam, bool supporting) {
  (void)k;
  return ray_vertex_check(make_ray_check_data(body, fam), x, supporting);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline void write_verdict_report(const ClassVerdict& v, std::ostream& os) {
  os << "class " << to_string(v.class_id) << "\n";
  os << "k " << v.k << "\n";
  if (v.eps) os << "eps " << detail::format_double(*v.eps) << "\n";
  os << "verdict " << (v.member ? "MEMBER" : "NO_CERTIFICATE") << "\n";
  os << "budget frames=" << v.frames_used << " dirs=" << v.dirs_used << "\n";
  os << "witnesses_checked " << v.witnesses_checked << "\n";
  os << "failures " << v.failures.size() << "\n";
  for (const auto& f : v.failures) {
    os << "  witness";
    for (int a = 0; a < f.witness.dim(); ++a)
      os << ' ' << detail::format_double(f.witness[a]);
    os << " : " << f.reason << "\n";
  }
  os << "certificates " << v.certificates.size() << "\n";
  for (const auto& c : v.certificates) {
    os << "  witness";
    for (int a = 0; a < c.witness.dim(); ++a)
      os << ' ' << detail::format_double(c.witness[a]);
    os << " -> " << object_kind(c.object) << "\n";
  }
}

} // namespace circon
