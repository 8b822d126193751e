#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "ct2/bb_patch.hpp"
#include "ct2/linalg.hpp"

namespace ct2 {

/// Two patches of equal degree on triangles sharing an edge, normalized to
/// the convention left = <A,B,C>, right = <C',B,A>. `opposite` holds the
/// barycentric coordinates of C' with respect to the left triangle.
template <Scalar T> struct SharedEdge {
  BBPatch<T> left;
  BBPatch<T> right;
  Bary3<T> opposite;

  /// Takes patches already in the <A,B,C> / <C',B,A> convention.
  static SharedEdge ordered(BBPatch<T> left, BBPatch<T> right, Bary3<T> opposite) {
    if (left.degree() != right.degree())
      throw ContractViolation("SharedEdge: patch degrees differ");
    return {std::move(left), std::move(right), std::move(opposite)};
  }

  /// Detects the shared edge geometrically and relabels both patches into the
  /// convention. Vertex matching is exact for rationals and relative 1e-12
  /// for floats.
  static SharedEdge detect(const BBPatch<T> &left, const BBPatch<T> &right) {
    if (left.degree() != right.degree())
      throw ContractViolation("SharedEdge: patch degrees differ");
    const auto &tl = left.domain();
    const auto &tr = right.domain();
    double scale = 0.0;
    for (int k = 0; k < 3; ++k)
      scale = std::max({scale, std::abs(to_double(tl[k].x)), std::abs(to_double(tl[k].y))});
    auto same = [&](const Point2<T> &p, const Point2<T> &q) {
      if constexpr (is_exact_v<T>)
        return p == q;
      else
        return std::abs(p.x - q.x) <= 1e-12 * std::max(1.0, scale) &&
               std::abs(p.y - q.y) <= 1e-12 * std::max(1.0, scale);
    };
    std::array<int, 3> match{-1, -1, -1}; // left vertex -> right vertex
    int shared = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (same(tl[i], tr[j])) {
          match[static_cast<std::size_t>(i)] = j;
          ++shared;
        }
    if (shared != 2)
      throw GeometryError("SharedEdge: triangles do not share exactly one edge");
    int c = 0;
    while (match[static_cast<std::size_t>(c)] != -1)
      ++c;
    // Cyclic rotation keeps the left orientation: A, B follow C.
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    const int ra = match[static_cast<std::size_t>(a)], rb = match[static_cast<std::size_t>(b)];
    const int rc = 3 - ra - rb;
    BBPatch<T> l = relabel_vertices(left, {a, b, c});
    BBPatch<T> r = relabel_vertices(right, {rc, rb, ra});
    Bary3<T> opp = barycentric(l.domain(), r.domain()[0]);
    return {std::move(l), std::move(r), std::move(opp)};
  }
};

/// b^k_mu(alpha), from b^0_mu = b_mu and b^k_mu = sum_i alpha_i b^{k-1}_{mu+e_i}.
template <Scalar T>
T recurrence_b(std::span<const T> coeffs, int degree, int k, const Bary3<T> &alpha,
               const MultiIndex3 &mu) {
  if (k < 0 || k > degree)
    throw ContractViolation("recurrence_b: k out of range");
  if (mu.degree() != degree - k || !mu.valid())
    throw ContractViolation("recurrence_b: |mu| != d - k");
  if (coeffs.size() != index_count(degree))
    throw ContractViolation("recurrence_b: coefficient count does not match degree");
  std::vector<T> cur(coeffs.begin(), coeffs.end());
  for (int d = degree; d > degree - k; --d)
    cur = detail::contract<T>(cur, d, alpha);
  return cur[canonical_position(mu)];
}

template <Scalar T> struct SmoothnessResidual {
  int k = 0;
  int rho = 0;
  T value{};
};

/// Residuals of the C^r conditions right_{k,rho,d-k-rho} = b^k_{d-k-rho,rho,0}(alpha).
template <Scalar T> struct SmoothnessReport {
  int order = 0;
  int degree = 0;
  std::vector<SmoothnessResidual<T>> residuals;
  std::vector<double> max_abs; ///< per k
  double scale = 1.0;          ///< max(1, max |coefficient|) over both patches

  std::size_t count(int k) const {
    return static_cast<std::size_t>(std::count_if(residuals.begin(), residuals.end(),
                                                  [k](const auto &r) { return r.k == k; }));
  }

  /// All residuals of order k vanish: exactly for rationals, within
  /// rel_tol * scale for floats.
  bool holds(int k, double rel_tol = 1e-10) const {
    for (const auto &r : residuals)
      if (r.k == k && !is_zero(r.value, rel_tol * scale))
        return false;
    return true;
  }

  /// Largest r' <= order with C^0..C^r' satisfied; -1 if even C^0 fails.
  int smooth_order(double rel_tol = 1e-10) const {
    int r = -1;
    while (r < order && holds(r + 1, rel_tol))
      ++r;
    return r;
  }

  double worst() const {
    double m = 0.0;
    for (double v : max_abs)
      m = std::max(m, v);
    return m;
  }
};

template <Scalar T> SmoothnessReport<T> smoothness_residuals(const SharedEdge<T> &edge, int r) {
  const int d = edge.left.degree();
  if (edge.right.degree() != d)
    throw ContractViolation("smoothness_residuals: degree mismatch");
  if (r < 0 || r > d)
    throw ContractViolation("smoothness_residuals: order out of range");
  SmoothnessReport<T> rep;
  rep.order = r;
  rep.degree = d;
  rep.scale = std::max({1.0, edge.left.max_abs_coeff(), edge.right.max_abs_coeff()});
  std::vector<T> level(edge.left.coeffs().begin(), edge.left.coeffs().end());
  for (int k = 0; k <= r; ++k) {
    if (k > 0)
      level = detail::contract<T>(level, d - k + 1, edge.opposite);
    double worst = 0.0;
    for (int rho = 0; rho <= d - k; ++rho) {
      const T lhs = edge.right[MultiIndex3{k, rho, d - k - rho}];
      const T rhs = level[canonical_position(MultiIndex3{d - k - rho, rho, 0})];
      T diff = lhs - rhs;
      worst = std::max(worst, std::abs(to_double(diff)));
      rep.residuals.push_back({k, rho, std::move(diff)});
    }
    rep.max_abs.push_back(worst);
  }
  return rep;
}

/// Finite-difference stencil family for the sampled audit.
enum class Stencil {
  SecondOrder,  ///< k+2 points for the k-th derivative
  QuinticExact, ///< 6 points, exact on polynomials of degree <= 5
};

/// Shared edge [a, b]; `toward_left` is any vector pointing into the left side.
struct EdgeGeometry {
  Point2<double> a, b, toward_left;
};

/// One-sided weights w_m, m = 0..points-1, for the k-th derivative at 0
/// from samples at m*h (to be scaled by 1/h^k).
std::vector<double> one_sided_weights(int k, int points);

using PointFunction = std::function<double(const Point2<double> &)>;

/// Compares one-sided transverse derivatives of orders 0..r from each side at
/// n interior points of the edge. Returns the max absolute mismatch per order.
/// Derivatives are taken along the unit normal.
std::vector<double> sampled_cross_derivative_audit(const PointFunction &left,
                                                   const PointFunction &right,
                                                   const EdgeGeometry &edge, int r, int n,
                                                   double h, Stencil stencil = Stencil::SecondOrder);

} // namespace ct2
