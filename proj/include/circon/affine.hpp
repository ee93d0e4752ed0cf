#pragma once

#include <cmath>
#include <vector>

#include "circon/vec.hpp"

namespace circon {

inline constexpr double kOrthoTol = 1e-12;
inline constexpr double kRankTol = 1e-10;

/// Gram-Schmidt with a rank check. Throws RankDeficientError when the inputs
/// are dependent (residual below tol after projection).
inline std::vector<Vec> orthonormalize(const std::vector<Vec>& vs,
                                       double tol = kRankTol) {
  std::vector<Vec> basis;
  basis.reserve(vs.size());
  for (const Vec& v : vs) {
    if (!basis.empty()) require_same_dim(v, basis.front());
    Vec r = v;
    // Re-orthogonalize once; plain Gram-Schmidt loses orthogonality for
    // near-dependent inputs.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& e : basis) r -= dot(r, e) * e;
    double n = norm(r);
    if (n <= tol * std::max(1.0, norm(v)))
      throw RankDeficientError("input vectors are linearly dependent");
    basis.push_back(r / n);
  }
  return basis;
}

/// Affine subspace of E^n: base point plus an orthonormal basis of the
/// direction space. d = 0 is a single point, d = n the whole space.
class AffineSubspace {
public:
  AffineSubspace(Vec base, std::vector<Vec> spanning)
      : base_(std::move(base)), basis_(orthonormalize(spanning)) {
    for (const Vec& e : basis_) require_same_dim(base_, e);
    if (static_cast<int>(basis_.size()) > base_.dim())
      throw WrongDimensionError("subspace dimension exceeds ambient dimension");
  }

  static AffineSubspace point(Vec p) { return AffineSubspace(std::move(p), {}); }

  /// Trusted constructor: callers certify the basis is orthonormal already.
  static AffineSubspace from_orthonormal(Vec base, std::vector<Vec> basis) {
    AffineSubspace s;
    s.base_ = std::move(base);
    s.basis_ = std::move(basis);
    return s;
  }

  const Vec& base() const { return base_; }
  const std::vector<Vec>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient_dim() const { return base_.dim(); }

  /// Chart coordinates of x: components of x - base along the basis.
  std::vector<double> coords(const Vec& x) const {
    require_same_dim(x, base_);
    Vec v = x - base_;
    std::vector<double> t(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) t[i] = dot(v, basis_[i]);
    return t;
  }

  Vec at(const std::vector<double>& t) const {
    Vec p = base_;
    for (size_t i = 0; i < basis_.size(); ++i) p += t[i] * basis_[i];
    return p;
  }

  bool contains(const Vec& x, double tol) const {
    return distance_to(x) <= tol;
  }

  Vec project(const Vec& x) const {
    require_same_dim(x, base_);
    Vec v = x - base_;
    Vec p = base_;
    for (const Vec& e : basis_) p += dot(v, e) * e;
    return p;
  }

  double distance_to(const Vec& x) const { return distance(x, project(x)); }

private:
  AffineSubspace() = default;

  Vec base_;
  std::vector<Vec> basis_;
};

inline Vec orthogonal_project_point(const Vec& x, const AffineSubspace& P) {
  return P.project(x);
}

inline double distance_to_subspace(const Vec& x, const AffineSubspace& P) {
  return P.distance_to(x);
}

/// Orthonormal basis of the orthogonal complement of `basis` in E^n.
/// Deterministic: repeatedly takes the coordinate axis with the largest
/// residual against everything accepted so far.
inline std::vector<Vec> orthonormal_completion(const std::vector<Vec>& basis,
                                               int ambient_dim) {
  std::vector<Vec> all = basis;
  std::vector<Vec> complement;
  int need = ambient_dim - static_cast<int>(basis.size());
  for (int pick = 0; pick < need; ++pick) {
    double best_norm = -1.0;
    Vec best(ambient_dim);
    for (int axis = 0; axis < ambient_dim; ++axis) {
      Vec r(ambient_dim);
      r[axis] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (const Vec& e : all) r -= dot(r, e) * e;
      double n = norm(r);
      if (n > best_norm) {
        best_norm = n;
        best = r;
      }
    }
    if (best_norm <= kRankTol)
      throw RankDeficientError("cannot complete basis: degenerate input");
    best = best / best_norm;
    all.push_back(best);
    complement.push_back(best);
  }
  return complement;
}

} // namespace circon
