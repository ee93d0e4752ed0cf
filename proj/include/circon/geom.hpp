#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "circon/affine.hpp"

namespace circon {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Half-plane P^{k+1}_>= : a k-dimensional boundary plane swept along a unit
/// direction orthogonal to it. `radius` < inf restricts the sweep to the
/// solid cylinder B(boundary, radius); the default is the unrestricted form.
class HalfPlane {
public:
  HalfPlane(AffineSubspace boundary, Vec direction, double radius = kInf)
      : boundary_(std::move(boundary)),
        direction_(normalized(direction)),
        radius_(radius) {
    require_same_dim(direction_, boundary_.base());
    for (const Vec& e : boundary_.basis())
      if (std::abs(dot(direction_, e)) > 1e-12)
        throw BadParamsError("half-plane direction not orthogonal to boundary");
    if (radius_ <= 0) throw BadParamsError("half-plane radius must be positive");
  }

  const AffineSubspace& boundary() const { return boundary_; }
  const Vec& direction() const { return direction_; }
  double radius() const { return radius_; }
  int ambient_dim() const { return boundary_.ambient_dim(); }

  /// Distance from x to the half-plane as a point set. The boundary-plane
  /// coordinates are free; the direction coordinate is clamped to [0, radius].
  double distance_to(const Vec& x) const {
    Vec v = x - boundary_.base();
    double s = dot(v, direction_);
    Vec res = v - s * direction_;
    for (const Vec& e : boundary_.basis()) res -= dot(res, e) * e;
    double sc = std::min(std::max(s, 0.0), radius_);
    double ds = s - sc;
    return std::sqrt(norm2(res) + ds * ds);
  }

  bool contains(const Vec& x, double tol) const { return distance_to(x) <= tol; }

private:
  AffineSubspace boundary_;
  Vec direction_;
  double radius_;
};

inline bool halfplane_contains(const HalfPlane& H, const Vec& x, double tol) {
  if (tol < 0) throw BadParamsError("tolerance must be nonnegative");
  return H.contains(x, tol);
}

/// B(P^k, r): points within distance r of the axis plane. k = 0 is a ball.
class SolidCylinder {
public:
  SolidCylinder(AffineSubspace axis, double radius)
      : axis_(std::move(axis)), radius_(radius) {
    if (radius_ <= 0) throw BadParamsError("cylinder radius must be positive");
  }

  const AffineSubspace& axis() const { return axis_; }
  double radius() const { return radius_; }

  bool contains(const Vec& x, double tol = 0.0) const {
    return axis_.distance_to(x) <= radius_ + tol;
  }

  double distance_to(const Vec& x) const {
    return std::max(0.0, axis_.distance_to(x) - radius_);
  }

private:
  AffineSubspace axis_;
  double radius_;
};

/// S(C, r) ∩ carrier for a carrier plane through C: a (d-1)-sphere when the
/// carrier has dimension d.
class SphereSlice {
public:
  SphereSlice(Vec center, double radius, AffineSubspace carrier)
      : center_(std::move(center)), radius_(radius), carrier_(std::move(carrier)) {
    if (radius_ <= 0) throw BadParamsError("sphere radius must be positive");
    if (carrier_.distance_to(center_) > 1e-10)
      throw BadParamsError("sphere-slice carrier must pass through the center");
  }

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  const AffineSubspace& carrier() const { return carrier_; }

  double distance_to(const Vec& x) const {
    Vec v = x - center_;
    Vec p(center_.dim());
    for (const Vec& e : carrier_.basis()) p += dot(v, e) * e;
    Vec w = v - p;
    double dr = norm(p) - radius_;
    return std::sqrt(norm2(w) + dr * dr);
  }

private:
  Vec center_;
  double radius_;
  AffineSubspace carrier_;
};

/// Solid (k+1)-dimensional ball B^{k+1}(C, r) inside its carrier plane.
class DiskSlice {
public:
  DiskSlice(Vec center, double radius, AffineSubspace carrier)
      : center_(std::move(center)), radius_(radius), carrier_(std::move(carrier)) {
    if (radius_ <= 0) throw BadParamsError("disk radius must be positive");
    if (carrier_.distance_to(center_) > 1e-10)
      throw BadParamsError("disk carrier must pass through the center");
  }

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  const AffineSubspace& carrier() const { return carrier_; }

  double distance_to(const Vec& x) const {
    Vec v = x - center_;
    Vec p(center_.dim());
    for (const Vec& e : carrier_.basis()) p += dot(v, e) * e;
    Vec w = v - p;
    double dr = std::max(0.0, norm(p) - radius_);
    return std::sqrt(norm2(w) + dr * dr);
  }

private:
  Vec center_;
  double radius_;
  AffineSubspace carrier_;
};

/// Punctured (n-k)-plane P(C): target of a circular projection. Keeps the
/// orthonormal completion around so the complement plane P^perp(C) and the
/// in-plane/complement split of any vector are cheap.
class PuncturedPlane {
public:
  PuncturedPlane(AffineSubspace plane, Vec center)
      : plane_(std::move(plane)), center_(std::move(center)) {
    if (plane_.distance_to(center_) > 1e-10)
      throw BadParamsError("puncture center must lie on the plane");
    complement_basis_ = orthonormal_completion(plane_.basis(), plane_.ambient_dim());
  }

  const AffineSubspace& plane() const { return plane_; }
  const Vec& center() const { return center_; }
  const std::vector<Vec>& plane_basis() const { return plane_.basis(); }
  const std::vector<Vec>& complement_basis() const { return complement_basis_; }
  int ambient_dim() const { return plane_.ambient_dim(); }
  int plane_dim() const { return plane_.dim(); }
  int complement_dim() const { return ambient_dim() - plane_dim(); }

  /// P^perp(C): the punctured complement plane through the same center.
  AffineSubspace complement_plane() const {
    return AffineSubspace::from_orthonormal(center_, complement_basis_);
  }

  /// Splits x - C into the in-plane part and the complement part.
  void split(const Vec& x, Vec& in_plane, Vec& complement) const {
    Vec v = x - center_;
    in_plane = Vec(v.dim());
    for (const Vec& e : plane_.basis()) in_plane += dot(v, e) * e;
    complement = v - in_plane;
  }

private:
  AffineSubspace plane_;
  Vec center_;
  std::vector<Vec> complement_basis_;
};

/// Distance from y to the meridian S^perp(P(C), x): the fiber through x of the
/// circular projection, i.e. the set of points at distance |Cx| from C whose
/// in-plane direction matches x's. Reduced to 2-D (along-u, complement
/// magnitude) the fiber is the quarter arc {(a, sqrt(r^2 - a^2)) : a in [0, r]},
/// which admits a closed-form distance.
inline double meridian_distance(const PuncturedPlane& pp, const Vec& x,
                                const Vec& y, double tol = 1e-9) {
  Vec px(x.dim()), qx(x.dim());
  pp.split(x, px, qx);
  double rho_x = norm(px);
  if (rho_x <= tol)
    throw DegenerateFiberError("meridian undefined: point lies in P^perp(C)");
  double r = distance(x, pp.center());
  Vec u = px / rho_x;

  Vec py(y.dim()), qy(y.dim());
  pp.split(y, py, qy);
  double alpha = dot(py, u);                       // along x's in-plane direction
  double beta2 = std::max(0.0, norm2(py) - alpha * alpha);
  double qn = norm(qy);                            // complement magnitude

  double d2_reduced;
  if (alpha >= 0.0) {
    double rad = std::sqrt(alpha * alpha + qn * qn) - r;
    d2_reduced = rad * rad;
  } else {
    // Nearest arc point is the pole end (0, r).
    double dq = qn - r;
    d2_reduced = alpha * alpha + dq * dq;
  }
  return std::sqrt(d2_reduced + beta2);
}

} // namespace circon
