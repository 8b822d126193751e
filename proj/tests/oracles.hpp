#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's evaluation, reparameterization or solver code.

#include <array>
#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "ct2/ct_element.hpp"
#include "ct2/mesh.hpp"

namespace oracle {

using ct2::Rational;
using R = Rational;

inline R fr(long n, long d = 1) { return R(n) / R(d); }

/// Bivariate polynomial in monomial form with exact arithmetic.
struct Poly {
  std::map<std::pair<int, int>, R> c; // (i, j) -> coefficient of x^i y^j

  static Poly constant(const R &v) {
    Poly p;
    p.c[{0, 0}] = v;
    return p;
  }
  static Poly linear(const R &a, const R &bx, const R &by) {
    Poly p;
    p.c[{0, 0}] = a;
    p.c[{1, 0}] = bx;
    p.c[{0, 1}] = by;
    return p;
  }
  static Poly monomial(int i, int j) {
    Poly p;
    p.c[{i, j}] = R(1);
    return p;
  }

  friend Poly operator+(Poly a, const Poly &b) {
    for (const auto &[k, v] : b.c)
      a.c[k] += v;
    return a;
  }
  friend Poly operator*(const Poly &a, const Poly &b) {
    Poly r;
    for (const auto &[ka, va] : a.c)
      for (const auto &[kb, vb] : b.c)
        r.c[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
    return r;
  }
  friend Poly operator*(const R &s, Poly a) {
    for (auto &[k, v] : a.c)
      v *= s;
    return a;
  }

  Poly dx() const {
    Poly r;
    for (const auto &[k, v] : c)
      if (k.first > 0)
        r.c[{k.first - 1, k.second}] += R(k.first) * v;
    return r;
  }
  Poly dy() const {
    Poly r;
    for (const auto &[k, v] : c)
      if (k.second > 0)
        r.c[{k.first, k.second - 1}] += R(k.second) * v;
    return r;
  }

  R operator()(const R &x, const R &y) const {
    R s(0);
    for (const auto &[k, v] : c) {
      R t = v;
      for (int n = 0; n < k.first; ++n)
        t *= x;
      for (int n = 0; n < k.second; ++n)
        t *= y;
      s += t;
    }
    return s;
  }
  R operator()(const ct2::Point2<R> &p) const { return (*this)(p.x, p.y); }

  double value(double x, double y) const {
    double s = 0.0;
    for (const auto &[k, v] : c)
      s += v.convert_to<double>() * std::pow(x, k.first) * std::pow(y, k.second);
    return s;
  }

  template <class T> ct2::Jet2<T> jet(const ct2::Point2<T> &p) const {
    const auto ev = [&](const Poly &q) {
      if constexpr (std::is_same_v<T, R>)
        return q(p);
      else
        return q.value(p.x, p.y);
    };
    const Poly px = dx(), py = dy();
    return {ev(*this), ev(px), ev(py), ev(px.dx()), ev(px.dy()), ev(py.dy())};
  }

  ct2::AnalyticPolynomial analytic() const {
    ct2::AnalyticPolynomial a;
    for (const auto &[k, v] : c)
      a.terms.push_back({k.first, k.second, v});
    return a;
  }
};

/// Barycentric coordinates as affine polynomials of (x, y).
inline std::array<Poly, 3> barycentric_polys(const ct2::Triangle2<R> &t) {
  const auto &a = t[0], &b = t[1], &c = t[2];
  const R det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  // l2 = ((x-ax)(cy-ay) - (cx-ax)(y-ay)) / det, l3 = ((bx-ax)(y-ay) - (x-ax)(by-ay)) / det
  const Poly l2 = Poly::linear((-a.x * (c.y - a.y) + (c.x - a.x) * a.y) / det, (c.y - a.y) / det, -(c.x - a.x) / det);
  const Poly l3 = Poly::linear((-(b.x - a.x) * a.y + a.x * (b.y - a.y)) / det, -(b.y - a.y) / det, (b.x - a.x) / det);
  const Poly l1 = Poly::constant(R(1)) + R(-1) * (l2 + l3);
  return {l1, l2, l3};
}

inline long long fact(int n) {
  long long f = 1;
  for (int k = 2; k <= n; ++k)
    f *= k;
  return f;
}

/// Bernstein polynomial B^d_alpha on t in monomial form.
inline Poly bernstein_poly(const ct2::Triangle2<R> &t, const std::array<int, 3> &a) {
  const auto l = barycentric_polys(t);
  Poly p = Poly::constant(R(fact(a[0] + a[1] + a[2])) / R(fact(a[0]) * fact(a[1]) * fact(a[2])));
  for (int k = 0; k < 3; ++k)
    for (int n = 0; n < a[static_cast<std::size_t>(k)]; ++n)
      p = p * l[static_cast<std::size_t>(k)];
  return p;
}

/// Multi-indices of degree d, descending lexicographic on (a1, a2).
inline std::vector<std::array<int, 3>> indices(int d) {
  std::vector<std::array<int, 3>> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b)
      out.push_back({a, b, d - a - b});
  return out;
}

/// Dense exact solve by Gaussian elimination.
inline std::vector<R> solve(std::vector<std::vector<R>> a, std::vector<R> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0)
      ++piv;
    if (piv == n)
      throw std::runtime_error("oracle::solve: singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0)
        continue;
      const R f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k)
        a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<R> x(n);
  for (std::size_t i = n; i-- > 0;) {
    R s = b[i];
    for (std::size_t k = i + 1; k < n; ++k)
      s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Exact BB coefficients of f on t (degree d) by interpolation at the
/// domain points, canonical order.
inline std::vector<R> bb_by_interpolation(const Poly &f, const ct2::Triangle2<R> &t, int d) {
  const auto idx = indices(d);
  std::vector<Poly> basis;
  for (const auto &a : idx)
    basis.push_back(bernstein_poly(t, a));
  std::vector<std::vector<R>> m;
  std::vector<R> rhs;
  for (const auto &b : idx) {
    const R x = (R(b[0]) * t[0].x + R(b[1]) * t[1].x + R(b[2]) * t[2].x) / R(d);
    const R y = (R(b[0]) * t[0].y + R(b[1]) * t[1].y + R(b[2]) * t[2].y) / R(d);
    std::vector<R> row;
    for (const auto &p : basis)
      row.push_back(p(x, y));
    m.push_back(std::move(row));
    rhs.push_back(f(x, y));
  }
  return solve(std::move(m), std::move(rhs));
}

/// Direct Bernstein sum of a coefficient vector at barycentric lam.
inline R bernstein_sum(const std::vector<R> &coeffs, int d, const std::array<R, 3> &lam) {
  R s(0);
  const auto idx = indices(d);
  for (std::size_t n = 0; n < idx.size(); ++n) {
    R b = R(fact(d)) / R(fact(idx[n][0]) * fact(idx[n][1]) * fact(idx[n][2]));
    for (int k = 0; k < 3; ++k)
      for (int e = 0; e < idx[n][static_cast<std::size_t>(k)]; ++e)
        b *= lam[static_cast<std::size_t>(k)];
    s += coeffs[n] * b;
  }
  return s;
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  R rational(int range = 40, int den = 16) {
    return R(std::uniform_int_distribution<int>(-range, range)(gen_)) /
           R(std::uniform_int_distribution<int>(1, den)(gen_));
  }
  double real(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  /// CCW triangle with coordinates in [-range/den, range/den] and area not tiny.
  ct2::Triangle2<R> triangle(int range = 40, int den = 16) {
    for (;;) {
      ct2::Triangle2<R> t;
      for (auto &v : t.v)
        v = {rational(range, den), rational(range, den)};
      R a = ct2::signed_area2(t);
      if (a < 0) {
        std::swap(t.v[1], t.v[2]);
        a = -a;
      }
      R longest(0);
      for (int k = 0; k < 3; ++k) {
        const auto e = t[(k + 1) % 3] - t[k];
        longest = std::max(longest, e.x * e.x + e.y * e.y);
      }
      if (a > longest / R(20))
        return t;
    }
  }

  ct2::Triangle2<double> triangle_f() {
    for (;;) {
      ct2::Triangle2<double> t;
      for (auto &v : t.v)
        v = {real(-2, 2), real(-2, 2)};
      double a = ct2::signed_area2(t);
      if (a < 0) {
        std::swap(t.v[1], t.v[2]);
        a = -a;
      }
      double longest = 0;
      for (int k = 0; k < 3; ++k) {
        const auto e = t[(k + 1) % 3] - t[k];
        longest = std::max(longest, e.x * e.x + e.y * e.y);
      }
      if (a > longest / 20)
        return t;
    }
  }

  Poly poly(int degree, int range = 20, int den = 8) {
    Poly p;
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j)
        p.c[{i, j}] = rational(range, den);
    return p;
  }

  template <class T> ct2::ElementData<T> element_data() {
    ct2::ElementData<T> d;
    const auto v = [&] {
      if constexpr (std::is_same_v<T, R>)
        return rational();
      else
        return real(-3, 3);
    };
    for (auto &j : d.jets)
      j = {v(), v(), v(), v(), v(), v()};
    for (auto &e : d.edges)
      e = {v(), v(), v()};
    d.centroid = v();
    return d;
  }

  /// Barycentric point with components summing to 1; spread > 0 allows
  /// points outside the triangle.
  template <class T> ct2::Bary3<T> bary(double spread = 0.0) {
    if constexpr (std::is_same_v<T, R>) {
      const R a = rational(12, 10), b = rational(12, 10);
      return {a, b, R(1) - a - b};
    } else {
      double a = real(0, 1), b = real(0, 1);
      if (spread == 0.0 && a + b > 1) {
        a = 1 - a;
        b = 1 - b;
      }
      a = a * (1 + 2 * spread) - spread;
      b = b * (1 + 2 * spread) - spread;
      return {a, b, 1 - a - b};
    }
  }

  std::mt19937_64 &engine() { return gen_; }

private:
  std::mt19937_64 gen_;
};

/// Point at barycentric lam of t.
template <class T> ct2::Point2<T> at(const ct2::Triangle2<T> &t, const ct2::Bary3<T> &l) {
  return {l[0] * t[0].x + l[1] * t[1].x + l[2] * t[2].x, l[0] * t[0].y + l[1] * t[1].y + l[2] * t[2].y};
}

/// Closed-form subdivision of a cubic onto K~_i (rational sums written out
/// independently of the library): b_i(rho) = sum_{|a|=rho2} b(a + s^i(rho3, rho1, 0)) B_a(1/3,1/3,1/3).
inline std::vector<R> subdivision_formula(const std::vector<R> &cubic, int i) {
  const auto pos = [](const std::array<int, 3> &m) {
    const int head = 3 - m[0];
    return static_cast<std::size_t>(head * (head + 1) / 2 + (head - m[1]));
  };
  std::vector<R> out;
  for (const auto &rho : indices(3)) {
    std::array<int, 3> base{rho[2], rho[0], 0};
    for (int s = 0; s < i % 3; ++s)
      base = {base[2], base[0], base[1]};
    R sum(0);
    for (const auto &a : indices(rho[1])) {
      const R w = R(fact(rho[1])) / R(fact(a[0]) * fact(a[1]) * fact(a[2])) /
                  R(static_cast<long>(std::pow(3, rho[1])));
      sum += w * cubic[pos({a[0] + base[0], a[1] + base[1], a[2] + base[2]})];
    }
    out.push_back(sum);
  }
  return out;
}

/// Closed-form extension by 5/3 about the second vertex:
/// C(beta) = sum_mu q(mu) B^{beta1}_{mu1}(5/3) B^{beta3}_{mu3}(5/3).
inline std::vector<R> extension_formula(const std::vector<R> &q) {
  const auto b1 = [](int n, int m) {
    if (m > n)
      return R(0);
    R t = fr(5, 3), u = fr(-2, 3), v = R(fact(n)) / R(fact(m) * fact(n - m));
    for (int k = 0; k < m; ++k)
      v *= t;
    for (int k = 0; k < n - m; ++k)
      v *= u;
    return v;
  };
  const auto idx = indices(5);
  std::vector<R> out;
  for (const auto &beta : idx) {
    R sum(0);
    for (std::size_t n = 0; n < idx.size(); ++n)
      sum += q[n] * b1(beta[0], idx[n][0]) * b1(beta[2], idx[n][2]);
    out.push_back(sum);
  }
  return out;
}

} // namespace oracle
