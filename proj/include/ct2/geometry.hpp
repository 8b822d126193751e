#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ct2/errors.hpp"
#include "ct2/multi_index.hpp"
#include "ct2/scalar.hpp"

namespace ct2 {

template <Scalar T> struct Point2 {
  T x{}, y{};

  friend Point2 operator+(const Point2 &a, const Point2 &b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(const Point2 &a, const Point2 &b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(const T &s, const Point2 &p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point2 &a, const Point2 &b) { return a.x == b.x && a.y == b.y; }
};

/// Barycentric coordinates, or a barycentric direction when the components
/// sum to zero. Components may be negative.
template <Scalar T> struct Bary3 {
  std::array<T, 3> l{};

  Bary3() = default;
  Bary3(T l1, T l2, T l3) : l{std::move(l1), std::move(l2), std::move(l3)} {}

  const T &operator[](int k) const { return l[static_cast<std::size_t>(k)]; }
  T &operator[](int k) { return l[static_cast<std::size_t>(k)]; }
  T sum() const { return l[0] + l[1] + l[2]; }

  friend Bary3 operator-(const Bary3 &a, const Bary3 &b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  }
  friend bool operator==(const Bary3 &a, const Bary3 &b) = default;

  /// The k-th vertex, k in {0,1,2}.
  static Bary3 corner(int k) {
    Bary3 b(T(0), T(0), T(0));
    b[k] = T(1);
    return b;
  }
};

template <Scalar T> struct Triangle2 {
  std::array<Point2<T>, 3> v{};

  const Point2<T> &operator[](int k) const { return v[static_cast<std::size_t>(k)]; }
  friend bool operator==(const Triangle2 &a, const Triangle2 &b) = default;
};

/// Twice the signed area; positive for counter-clockwise triangles.
template <Scalar T> T signed_area2(const Triangle2<T> &t) {
  return (t[1].x - t[0].x) * (t[2].y - t[0].y) - (t[2].x - t[0].x) * (t[1].y - t[0].y);
}

/// Degenerate when |2 area| <= 1e-14 * (longest edge)^2; exact zero test for rationals.
template <Scalar T> bool is_degenerate(const Triangle2<T> &t) {
  const T a2 = signed_area2(t);
  if constexpr (is_exact_v<T>) {
    return a2 == 0;
  } else {
    double longest = 0.0;
    for (int k = 0; k < 3; ++k) {
      const auto e = t[(k + 1) % 3] - t[k];
      longest = std::max(longest, e.x * e.x + e.y * e.y);
    }
    return !(std::abs(a2) > 1e-14 * longest);
  }
}

template <Scalar T> void require_nondegenerate(const Triangle2<T> &t, const char *what) {
  if (is_degenerate(t))
    throw GeometryError(std::string(what) + ": degenerate triangle");
}

template <Scalar T> void require_ccw(const Triangle2<T> &t, const char *what) {
  require_nondegenerate(t, what);
  if (!(signed_area2(t) > 0))
    throw GeometryError(std::string(what) + ": triangle is not counter-clockwise");
}

template <Scalar T> Bary3<T> barycentric(const Triangle2<T> &t, const Point2<T> &p) {
  require_nondegenerate(t, "barycentric");
  const T det = signed_area2(t);
  const T l2 = ((p.x - t[0].x) * (t[2].y - t[0].y) - (t[2].x - t[0].x) * (p.y - t[0].y)) / det;
  const T l3 = ((t[1].x - t[0].x) * (p.y - t[0].y) - (p.x - t[0].x) * (t[1].y - t[0].y)) / det;
  return {T(1) - l2 - l3, l2, l3};
}

/// Barycentric direction (components summing to zero) of a plane vector.
template <Scalar T> Bary3<T> bary_direction(const Triangle2<T> &t, const Point2<T> &vec) {
  return barycentric(t, t[0] + vec) - Bary3<T>::corner(0);
}

template <Scalar T> Point2<T> point_at(const Triangle2<T> &t, const Bary3<T> &lam) {
  return {lam[0] * t[0].x + lam[1] * t[1].x + lam[2] * t[2].x,
          lam[0] * t[0].y + lam[1] * t[1].y + lam[2] * t[2].y};
}

/// Domain point (a1 v1 + a2 v2 + a3 v3) / d.
template <Scalar T>
Point2<T> domain_point(const Triangle2<T> &t, const MultiIndex3 &alpha, int d) {
  if (d < 1)
    throw ContractViolation("domain_point: degree must be >= 1");
  if (alpha.degree() != d || !alpha.valid())
    throw ContractViolation("domain_point: |alpha| != d");
  const T dd(d);
  return point_at(t, Bary3<T>(T(alpha.a1) / dd, T(alpha.a2) / dd, T(alpha.a3) / dd));
}

template <Scalar To, Scalar From> Point2<To> convert_point(const Point2<From> &p) {
  return {scalar_cast<To>(p.x), scalar_cast<To>(p.y)};
}

template <Scalar To, Scalar From> Triangle2<To> convert_triangle(const Triangle2<From> &t) {
  return {{convert_point<To>(t[0]), convert_point<To>(t[1]), convert_point<To>(t[2])}};
}

} // namespace ct2
