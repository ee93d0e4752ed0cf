#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>

#include "circon/errors.hpp"

namespace circon {

inline constexpr int kMaxDim = 4;

/// Point/vector in E^n with runtime dimension n ≤ 4. Bodies live in
/// n ∈ {2,3,4}; 1-D vectors appear only as image-chart coordinates.
class Vec {
public:
  Vec() = default;

  explicit Vec(int dim) : dim_(dim) {
    check_dim(dim);
    coords_.fill(0.0);
  }

  Vec(std::initializer_list<double> cs) : dim_(static_cast<int>(cs.size())) {
    check_dim(dim_);
    coords_.fill(0.0);
    int i = 0;
    for (double c : cs) coords_[static_cast<size_t>(i++)] = c;
    require_finite();
  }

  static Vec zero(int dim) { return Vec(dim); }

  int dim() const { return dim_; }

  double operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return coords_[static_cast<size_t>(i)]; }

  Vec operator+(const Vec& o) const {
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = (*this)[i] + o[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = (*this)[i] - o[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = (*this)[i] * s;
    return r;
  }
  Vec operator/(double s) const { return (*this) * (1.0 / s); }
  Vec operator-() const { return (*this) * -1.0; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
    return *this;
  }

  bool finite() const {
    for (int i = 0; i < dim_; ++i)
      if (!std::isfinite((*this)[i])) return false;
    return true;
  }

  void require_finite() const {
    if (!finite()) throw BadParamsError("vector has non-finite coordinates");
  }

private:
  static void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim)
      throw WrongDimensionError("vector dimension must be in [1, 4], got " +
                                std::to_string(dim));
  }

  std::array<double, kMaxDim> coords_{};
  int dim_ = 0;
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& v) { return dot(v, v); }
inline double norm(const Vec& v) { return std::sqrt(norm2(v)); }
inline double distance(const Vec& a, const Vec& b) { return norm(a - b); }

inline Vec normalized(const Vec& v) {
  double n = norm(v);
  if (n == 0.0) throw RankDeficientError("cannot normalize zero vector");
  return v / n;
}

inline void require_same_dim(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim())
    throw WrongDimensionError("mixed vector dimensions: " +
                              std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()));
}

inline std::ostream& operator<<(std::ostream& os, const Vec& v) {
  os << '(';
  for (int i = 0; i < v.dim(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  return os << ')';
}

} // namespace circon
