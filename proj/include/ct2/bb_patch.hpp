#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ct2/errors.hpp"
#include "ct2/geometry.hpp"
#include "ct2/multi_index.hpp"
#include "ct2/scalar.hpp"

namespace ct2 {

/// A degree-d polynomial on a triangle, stored as its complete map of
/// Bernstein-Bezier coefficients in canonical multi-index order.
template <Scalar T> class BBPatch {
public:
  BBPatch() = default;

  BBPatch(int degree, Triangle2<T> domain, std::vector<T> coeffs)
      : degree_(degree), domain_(std::move(domain)), coeffs_(std::move(coeffs)) {
    if (degree_ < 0)
      throw ContractViolation("BBPatch: negative degree");
    if (coeffs_.size() != index_count(degree_))
      throw ContractViolation("BBPatch: expected " + std::to_string(index_count(degree_)) +
                              " coefficients, got " + std::to_string(coeffs_.size()));
  }

  static BBPatch constant(int degree, Triangle2<T> domain, const T &c) {
    return BBPatch(degree, std::move(domain), std::vector<T>(index_count(degree), c));
  }

  /// Builds the coefficient map from a generator over multi-indices.
  static BBPatch generate(int degree, Triangle2<T> domain,
                          const std::function<T(const MultiIndex3 &)> &gen) {
    std::vector<T> c;
    c.reserve(index_count(degree));
    for (const auto &m : enumerate_indices(degree))
      c.push_back(gen(m));
    return BBPatch(degree, std::move(domain), std::move(c));
  }

  int degree() const { return degree_; }
  const Triangle2<T> &domain() const { return domain_; }
  std::span<const T> coeffs() const { return coeffs_; }
  std::vector<T> &mutable_coeffs() { return coeffs_; }

  const T &operator[](const MultiIndex3 &m) const { return coeffs_[checked(m)]; }
  T &operator[](const MultiIndex3 &m) { return coeffs_[checked(m)]; }

  /// max |b(alpha)|, as a double.
  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto &c : coeffs_)
      m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  template <Scalar To> BBPatch<To> cast() const {
    std::vector<To> c;
    c.reserve(coeffs_.size());
    for (const auto &v : coeffs_)
      c.push_back(scalar_cast<To>(v));
    return BBPatch<To>(degree_, convert_triangle<To>(domain_), std::move(c));
  }

  friend bool operator==(const BBPatch &, const BBPatch &) = default;

private:
  std::size_t checked(const MultiIndex3 &m) const {
    if (m.degree() != degree_ || !m.valid())
      throw ContractViolation("BBPatch: multi-index of wrong degree");
    return canonical_position(m);
  }

  int degree_ = 0;
  Triangle2<T> domain_{};
  std::vector<T> coeffs_;
};

namespace detail {

template <Scalar T> T power(const T &base, int e) {
  T r(1);
  for (int i = 0; i < e; ++i)
    r *= base;
  return r;
}

inline long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i)
    r *= i;
  return r;
}

/// One de Casteljau step with weights `w` on a flat coefficient array of
/// degree d, giving degree d-1. Also serves as the difference operator when
/// the weights sum to zero.
template <Scalar T> std::vector<T> contract(std::span<const T> c, int d, const Bary3<T> &w) {
  std::vector<T> out;
  out.reserve(index_count(d - 1));
  for (const auto &m : enumerate_indices(d - 1)) {
    T s = w[0] * c[canonical_position(m + MultiIndex3::unit(0))];
    s += w[1] * c[canonical_position(m + MultiIndex3::unit(1))];
    s += w[2] * c[canonical_position(m + MultiIndex3::unit(2))];
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace detail

/// Bernstein polynomial (d!/alpha!) lambda^alpha. Arguments outside [0,1]
/// use the raw formula.
template <Scalar T> T bernstein(int d, const MultiIndex3 &alpha, const Bary3<T> &lam) {
  if (alpha.degree() != d || !alpha.valid())
    throw ContractViolation("bernstein: |alpha| != d");
  const long long multinomial = detail::factorial(d) / (detail::factorial(alpha.a1) *
                                                        detail::factorial(alpha.a2) *
                                                        detail::factorial(alpha.a3));
  return T(multinomial) * detail::power(lam[0], alpha.a1) * detail::power(lam[1], alpha.a2) *
         detail::power(lam[2], alpha.a3);
}

/// Univariate Bernstein polynomial C(n,m) t^m (1-t)^(n-m); zero unless 0 <= m <= n.
template <Scalar T> T bernstein1(int n, int m, const T &t) {
  if (m < 0 || m > n)
    return T(0);
  const long long binom = detail::factorial(n) / (detail::factorial(m) * detail::factorial(n - m));
  return T(binom) * detail::power(t, m) * detail::power(T(1) - t, n - m);
}

/// de Casteljau evaluation.
template <Scalar T> T evaluate(const BBPatch<T> &p, const Bary3<T> &lam) {
  std::vector<T> cur(p.coeffs().begin(), p.coeffs().end());
  for (int d = p.degree(); d > 0; --d)
    cur = detail::contract<T>(cur, d, lam);
  return cur.front();
}

template <Scalar T> T evaluate_at(const BBPatch<T> &p, const Point2<T> &x) {
  return evaluate(p, barycentric(p.domain(), x));
}

/// Direct Bernstein sum; cross-check path for `evaluate`.
template <Scalar T> T evaluate_direct(const BBPatch<T> &p, const Bary3<T> &lam) {
  T s(0);
  const auto idx = enumerate_indices(p.degree());
  for (std::size_t k = 0; k < idx.size(); ++k)
    s += p.coeffs()[k] * bernstein(p.degree(), idx[k], lam);
  return s;
}

/// Exact degree elevation: b1(mu) = (1/(d+1)) sum_k mu_k b(mu - e_k).
template <Scalar T> BBPatch<T> raise_degree(const BBPatch<T> &p) {
  const int d = p.degree();
  const T denom(d + 1);
  return BBPatch<T>::generate(d + 1, p.domain(), [&](const MultiIndex3 &mu) {
    T s(0);
    for (int k = 0; k < 3; ++k)
      if (mu[k] > 0)
        s += T(mu[k]) * p[mu - MultiIndex3::unit(k)];
    return s / denom;
  });
}

/// Two elevations in closed form:
/// b2(mu) = sum_{k,l} mu_k (mu_l - delta_kl) b(mu - e_k - e_l) / ((d+2)(d+1)).
template <Scalar T> BBPatch<T> raise_degree_twice(const BBPatch<T> &p) {
  const int d = p.degree();
  const T denom((d + 2) * (d + 1));
  return BBPatch<T>::generate(d + 2, p.domain(), [&](const MultiIndex3 &mu) {
    T s(0);
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        const MultiIndex3 src = mu - MultiIndex3::unit(k) - MultiIndex3::unit(l);
        if (!src.valid())
          continue;
        const int w = mu[k] * (mu[l] - (k == l ? 1 : 0));
        if (w != 0)
          s += T(w) * p[src];
      }
    return s / denom;
  });
}

/// Difference operator along a barycentric direction u:
/// (D_u b)(alpha) = sum_k u_k b(alpha + e_k), |alpha| = d-1.
/// For u = e_j - e_i this is the classical Delta_ij.
template <Scalar T>
std::vector<T> difference(std::span<const T> coeffs, int degree, const Bary3<T> &u) {
  if (degree < 1)
    throw ContractViolation("difference: degree must be >= 1");
  if (coeffs.size() != index_count(degree))
    throw ContractViolation("difference: coefficient count does not match degree");
  return detail::contract<T>(coeffs, degree, u);
}

/// Derivative patch d/du of degree d-1, u a barycentric direction.
template <Scalar T> BBPatch<T> derivative_patch(const BBPatch<T> &p, const Bary3<T> &u) {
  auto c = difference<T>(p.coeffs(), p.degree(), u);
  const T d(p.degree());
  for (auto &v : c)
    v *= d;
  return BBPatch<T>(p.degree() - 1, p.domain(), std::move(c));
}

/// A Cartesian direction vector with a derivative order.
template <Scalar T> struct DirectionPower {
  Point2<T> vec;
  int order = 1;
};

/// D^{r+s+...} P(lam) . (dir1^r, dir2^s, ...), via iterated differences:
/// d!/(d-n)! * (Delta^r Delta^s ... b) evaluated in degree d-n.
template <Scalar T>
T directional_derivative(const BBPatch<T> &p, const Bary3<T> &lam,
                         std::span<const DirectionPower<T>> dirs) {
  int total = 0;
  for (const auto &d : dirs) {
    if (d.order < 0)
      throw ContractViolation("directional_derivative: negative order");
    total += d.order;
  }
  if (total > p.degree())
    throw ContractViolation("directional_derivative: order exceeds degree");
  BBPatch<T> cur = p;
  for (const auto &d : dirs) {
    const Bary3<T> u = bary_direction(p.domain(), d.vec);
    for (int r = 0; r < d.order; ++r)
      cur = derivative_patch(cur, u);
  }
  return evaluate(cur, lam);
}

template <Scalar T>
T directional_derivative(const BBPatch<T> &p, const Bary3<T> &lam,
                         std::initializer_list<DirectionPower<T>> dirs) {
  return directional_derivative(p, lam, std::span<const DirectionPower<T>>(dirs.begin(), dirs.size()));
}

/// Blossom of a degree-d coefficient map at d barycentric arguments.
template <Scalar T>
T blossom(std::span<const T> coeffs, int degree, std::span<const Bary3<T>> args) {
  if (static_cast<int>(args.size()) != degree)
    throw ContractViolation("blossom: need exactly `degree` arguments");
  std::vector<T> cur(coeffs.begin(), coeffs.end());
  for (int d = degree; d > 0; --d)
    cur = detail::contract<T>(cur, d, args[static_cast<std::size_t>(degree - d)]);
  return cur.front();
}

/// Re-expresses the patch on the triangle whose vertices have barycentric
/// coordinates `corners` in the source triangle. Corners may lie outside the
/// source triangle. b'(beta) = blossom(c1^beta1, c2^beta2, c3^beta3).
template <Scalar T>
BBPatch<T> reparameterize(const BBPatch<T> &p, const std::array<Bary3<T>, 3> &corners) {
  const T det = corners[0][0] * (corners[1][1] * corners[2][2] - corners[1][2] * corners[2][1]) -
                corners[0][1] * (corners[1][0] * corners[2][2] - corners[1][2] * corners[2][0]) +
                corners[0][2] * (corners[1][0] * corners[2][1] - corners[1][1] * corners[2][0]);
  if (is_zero(det, 1e-14))
    throw GeometryError("reparameterize: target corners are affinely dependent");

  const Triangle2<T> target{{point_at(p.domain(), corners[0]), point_at(p.domain(), corners[1]),
                             point_at(p.domain(), corners[2])}};
  std::vector<Bary3<T>> args(static_cast<std::size_t>(p.degree()));
  return BBPatch<T>::generate(p.degree(), target, [&](const MultiIndex3 &beta) {
    std::size_t k = 0;
    for (int c = 0; c < 3; ++c)
      for (int r = 0; r < beta[c]; ++r)
        args[k++] = corners[static_cast<std::size_t>(c)];
    return blossom<T>(p.coeffs(), p.degree(), args);
  });
}

/// Reorders the triangle's vertices: new vertex k is old vertex perm[k].
/// Coefficients are relabeled accordingly, the polynomial is unchanged.
template <Scalar T> BBPatch<T> relabel_vertices(const BBPatch<T> &p, const std::array<int, 3> &perm) {
  const Triangle2<T> t{{p.domain()[perm[0]], p.domain()[perm[1]], p.domain()[perm[2]]}};
  return BBPatch<T>::generate(p.degree(), t, [&](const MultiIndex3 &m) {
    MultiIndex3 old;
    for (int k = 0; k < 3; ++k)
      old[perm[static_cast<std::size_t>(k)]] = m[k];
    return p[old];
  });
}

/// Value and Cartesian partials up to second order.
template <Scalar T> struct Jet2 {
  T f{}, fx{}, fy{}, fxx{}, fxy{}, fyy{};
};

/// Value and (depending on `order`) Cartesian partials of a patch at `lam`.
template <Scalar T> Jet2<T> evaluate_jet(const BBPatch<T> &p, const Bary3<T> &lam, int order) {
  Jet2<T> j;
  j.f = evaluate(p, lam);
  if (order >= 1 && p.degree() >= 1) {
    const auto ux = bary_direction(p.domain(), Point2<T>{T(1), T(0)});
    const auto uy = bary_direction(p.domain(), Point2<T>{T(0), T(1)});
    const auto px = derivative_patch(p, ux);
    const auto py = derivative_patch(p, uy);
    j.fx = evaluate(px, lam);
    j.fy = evaluate(py, lam);
    if (order >= 2 && p.degree() >= 2) {
      j.fxx = evaluate(derivative_patch(px, ux), lam);
      j.fxy = evaluate(derivative_patch(px, uy), lam);
      j.fyy = evaluate(derivative_patch(py, uy), lam);
    }
  }
  return j;
}

} // namespace ct2
