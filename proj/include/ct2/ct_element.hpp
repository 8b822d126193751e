#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ct2/bb_patch.hpp"
#include "ct2/continuity.hpp"
#include "ct2/linalg.hpp"

namespace ct2 {

/// Clough-Tocher split of a macro triangle <A1,A2,A3> about its centroid A0.
/// Subtriangle indices i are 1-based in the accessors and mod 3:
/// K_i = <A_{i+2}, A0, A_{i+1}>.
template <Scalar T> struct CTSplit {
  Triangle2<T> macro;
  Point2<T> centroid;
  std::array<Triangle2<T>, 3> sub;                     ///< sub[i-1] = K_i
  std::array<std::array<Point2<T>, 5>, 3> edge_nodes;  ///< [i-1][j] = A_ij
  std::array<Point2<T>, 3> inner;                      ///< inner[i-1] = B_i
  std::array<Triangle2<T>, 3> inner_sub;               ///< inner_sub[i-1] = K~_i = <B_{i+2}, A0, B_{i+1}>

  static int wrap(int i) { return ((i - 1) % 3 + 3) % 3; }

  const Point2<T> &vertex(int i) const { return macro[wrap(i)]; }
  const Triangle2<T> &subtriangle(int i) const { return sub[static_cast<std::size_t>(wrap(i))]; }
  const Point2<T> &edge_node(int i, int j) const {
    return edge_nodes[static_cast<std::size_t>(wrap(i))][static_cast<std::size_t>(j)];
  }
  const Point2<T> &b(int i) const { return inner[static_cast<std::size_t>(wrap(i))]; }
  /// Inner Lagrange node B_iij = 2/3 B_i + 1/3 B_j.
  Point2<T> inner_node(int i, int j) const { return frac<T>(2, 3) * b(i) + frac<T>(1, 3) * b(j); }
  /// The inner triangle K~ = <B1,B2,B3> carrying the recovered cubic.
  Triangle2<T> inner_triangle() const { return {{inner[0], inner[1], inner[2]}}; }
};

template <Scalar T> CTSplit<T> ct_split(const Triangle2<T> &tri) {
  require_ccw(tri, "ct_split");
  CTSplit<T> s;
  s.macro = tri;
  const T third = frac<T>(1, 3);
  s.centroid = third * tri[0] + third * tri[1] + third * tri[2];
  for (int i = 1; i <= 3; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    s.sub[k] = {{s.vertex(i + 2), s.centroid, s.vertex(i + 1)}};
    for (int j = 0; j <= 4; ++j)
      s.edge_nodes[k][static_cast<std::size_t>(j)] =
          (T(1) - frac<T>(j, 4)) * s.vertex(i + 1) + frac<T>(j, 4) * s.vertex(i + 2);
    s.edge_nodes[k][0] = s.vertex(i + 1);
    s.edge_nodes[k][4] = s.vertex(i + 2);
    s.inner[k] = frac<T>(2, 5) * s.centroid + frac<T>(3, 5) * s.vertex(i + 1);
  }
  for (int i = 1; i <= 3; ++i)
    s.inner_sub[static_cast<std::size_t>(i - 1)] = {{s.b(i + 2), s.centroid, s.b(i + 1)}};
  return s;
}

template <Scalar T> using VertexJet2 = Jet2<T>;

/// Samples on the exterior edge of K_i; directions are raw displacements:
/// s1 = D2f(A_i1).(A0->A_i4)^2, s3 = D2f(A_i3).(A0->A_i0)^2, t2 = Df(A_i2).(A0->A_i2).
template <Scalar T> struct EdgeData {
  T s1{}, s3{}, t2{};
  friend bool operator==(const EdgeData &, const EdgeData &) = default;
};

/// The 28 degrees of freedom of one macro triangle. jets[k] belongs to
/// macro vertex A_{k+1}; edges[i-1] to the exterior edge of K_i.
template <Scalar T> struct ElementData {
  std::array<VertexJet2<T>, 3> jets{};
  std::array<EdgeData<T>, 3> edges{};
  T centroid{};
};

template <Scalar T> T jet_d1(const Jet2<T> &j, const Point2<T> &v) { return j.fx * v.x + j.fy * v.y; }

template <Scalar T> T jet_d2(const Jet2<T> &j, const Point2<T> &v, const Point2<T> &w) {
  return j.fxx * v.x * w.x + j.fxy * (v.x * w.y + v.y * w.x) + j.fyy * v.y * w.y;
}

template <Scalar T> using JetProvider = std::function<Jet2<T>(const Point2<T> &)>;

template <Scalar T> ElementData<T> sample_dofs(const JetProvider<T> &jet, const CTSplit<T> &s) {
  ElementData<T> d;
  for (int k = 0; k < 3; ++k)
    d.jets[static_cast<std::size_t>(k)] = jet(s.macro[k]);
  for (int i = 1; i <= 3; ++i) {
    const auto to4 = s.edge_node(i, 4) - s.centroid;
    const auto to0 = s.edge_node(i, 0) - s.centroid;
    const auto to2 = s.edge_node(i, 2) - s.centroid;
    auto &e = d.edges[static_cast<std::size_t>(i - 1)];
    e.s1 = jet_d2(jet(s.edge_node(i, 1)), to4, to4);
    e.s3 = jet_d2(jet(s.edge_node(i, 3)), to0, to0);
    e.t2 = jet_d1(jet(s.edge_node(i, 2)), to2);
  }
  d.centroid = jet(s.centroid).f;
  return d;
}

/// The 16 positions of K_i fixed directly by the data, in the order used by
/// known_coefficients.
inline constexpr std::array<MultiIndex3, 16> kKnownPositions{{
    {5, 0, 0}, {4, 1, 0}, {4, 0, 1}, {3, 2, 0}, {3, 0, 2}, {3, 1, 1},
    {0, 0, 5}, {0, 1, 4}, {1, 0, 4}, {0, 2, 3}, {2, 0, 3}, {1, 1, 3},
    {2, 1, 2}, {1, 2, 2}, {2, 2, 1}, {0, 5, 0},
}};

/// The 5 positions of K_i produced by the inner-cubic pipeline.
inline constexpr std::array<MultiIndex3, 5> kUnknownPositions{{
    {2, 3, 0}, {1, 4, 0}, {1, 3, 1}, {0, 4, 1}, {0, 3, 2},
}};

/// Known coefficients of K_i (i = 1..3), aligned with kKnownPositions.
template <Scalar T>
std::array<T, 16> known_coefficients(const ElementData<T> &data, const CTSplit<T> &s, int i) {
  if (i < 1 || i > 3)
    throw ContractViolation("known_coefficients: subtriangle index must be 1..3");
  const auto &j4 = data.jets[static_cast<std::size_t>(CTSplit<T>::wrap(i + 2))];
  const auto &j0 = data.jets[static_cast<std::size_t>(CTSplit<T>::wrap(i + 1))];
  const auto &e = data.edges[static_cast<std::size_t>(i - 1)];
  const Point2<T> a4 = s.edge_node(i, 4), a0 = s.edge_node(i, 0);
  const auto f = [](int n, int d) { return frac<T>(n, d); };

  // Vertex rows: C(5-a-b, a, b) style Taylor expansions along the two edges of K_i.
  const auto vertex_rows = [&](const Jet2<T> &j, const Point2<T> &v, const Point2<T> &w) {
    return std::array<T, 6>{
        j.f,
        j.f + f(1, 5) * jet_d1(j, v),
        j.f + f(1, 5) * jet_d1(j, w),
        j.f + f(2, 5) * jet_d1(j, v) + f(1, 20) * jet_d2(j, v, v),
        j.f + f(2, 5) * jet_d1(j, w) + f(1, 20) * jet_d2(j, w, w),
        j.f + f(1, 5) * jet_d1(j, v) + f(1, 5) * jet_d1(j, w) + f(1, 20) * jet_d2(j, v, w),
    };
  };
  const auto r4 = vertex_rows(j4, s.centroid - a4, a0 - a4);
  const auto r0 = vertex_rows(j0, s.centroid - a0, a4 - a0);

  std::array<T, 16> c;
  std::copy(r4.begin(), r4.end(), c.begin());
  std::copy(r0.begin(), r0.end(), c.begin() + 6);
  const T &C500 = c[0], &C410 = c[1], &C401 = c[2], &C320 = c[3], &C302 = c[4], &C311 = c[5];
  const T &C005 = c[6], &C014 = c[7], &C104 = c[8], &C023 = c[9], &C203 = c[10], &C113 = c[11];

  c[12] = f(1, 12) * C005 - f(1, 6) * C014 + f(5, 12) * C104 - f(2, 3) * C113 + f(5, 6) * C203 +
          f(5, 6) * C302 - f(2, 3) * C311 + f(5, 12) * C401 - f(1, 6) * C410 + f(1, 12) * C500 -
          f(8, 15) * e.t2;
  c[13] = f(2, 15) * e.s1 - f(2, 45) * e.s3 - f(4, 5) * e.t2 + f(5, 36) * C005 - f(5, 18) * C014 -
          f(10, 9) * C023 + f(3, 4) * C104 + C113 + f(1, 2) * C203 + f(1, 2) * C302 - C311 +
          f(1, 3) * C320 + f(1, 4) * C401 - f(1, 6) * C410 + f(1, 12) * C500;
  c[14] = -f(2, 45) * e.s1 + f(2, 15) * e.s3 - f(4, 5) * e.t2 + f(1, 12) * C005 - f(1, 6) * C014 +
          f(1, 3) * C023 + f(1, 4) * C104 - C113 + f(1, 2) * C203 + f(1, 2) * C302 + C311 -
          f(10, 9) * C320 + f(3, 4) * C401 - f(5, 18) * C410 + f(5, 36) * C500;
  c[15] = data.centroid;
  return c;
}

/// Geometry-independent rational maps of the inner-cubic pipeline. Columns
/// are indexed by the cubic coefficients b~(alpha) in canonical order.
struct PipelineMaps {
  /// full[i-1] is 21 x 10: every coefficient of K_i from b~.
  std::array<Matrix<Rational>, 3> full;
  /// Rows C_i(0,2,3), C_i(1,2,2), C_i(2,2,1) for i = 1,2,3, then C(0,5,0).
  Matrix<Rational> forward10;
  Matrix<Rational> inverse10;
  /// unknown[i-1] is 5 x 10, rows at kUnknownPositions.
  std::array<Matrix<Rational>, 3> unknown;
};

/// Positions (subtriangle, multi-index) of the ten rows of forward10.
inline constexpr std::array<std::pair<int, MultiIndex3>, 10> kForwardRows{{
    {1, {0, 2, 3}}, {1, {1, 2, 2}}, {1, {2, 2, 1}},
    {2, {0, 2, 3}}, {2, {1, 2, 2}}, {2, {2, 2, 1}},
    {3, {0, 2, 3}}, {3, {1, 2, 2}}, {3, {2, 2, 1}},
    {1, {0, 5, 0}},
}};

/// Composes subdivision, double degree raising and outer extension for each
/// K_i; throws std::logic_error if forward10 is singular.
PipelineMaps build_pipeline_maps();

/// Built once, shared read-only.
const PipelineMaps &pipeline_maps();

/// Barycentric coordinates of the macro vertex A_j (1-based) with respect
/// to the inner triangle K~ = <B1,B2,B3>.
template <Scalar T> Bary3<T> macro_vertex_in_inner(int j) {
  Bary3<T> v(-frac<T>(2, 9), -frac<T>(2, 9), -frac<T>(2, 9));
  v[CTSplit<T>::wrap(j - 1)] += frac<T>(5, 3);
  return v;
}

/// Subdivision of the cubic on K~ onto K~_i about the centroid, in closed
/// form: b~_i(rho) = sum_{|a|=rho2} b~(a + sigma^i(rho3, rho1, 0)) B^{rho2}_a(1/3,1/3,1/3),
/// sigma(v) = (v3, v1, v2).
template <Scalar T> BBPatch<T> centroid_subdivision(const BBPatch<T> &cubic, int i) {
  if (cubic.degree() != 3)
    throw ContractViolation("centroid_subdivision: cubic patch required");
  const T third = frac<T>(1, 3);
  const Bary3<T> g(third, third, third);
  const auto &dom = cubic.domain();
  const auto bk = [&](int k) { return point_at(dom, Bary3<T>::corner(CTSplit<T>::wrap(k))); };
  const Triangle2<T> target{{bk(i + 2), point_at(dom, g), bk(i + 1)}};
  const int shifts = ((i % 3) + 3) % 3;
  return BBPatch<T>::generate(3, target, [&](const MultiIndex3 &rho) {
    MultiIndex3 base{rho.a3, rho.a1, 0};
    for (int s = 0; s < shifts; ++s)
      base = MultiIndex3{base.a3, base.a1, base.a2};
    T sum(0);
    for (const auto &a : enumerate_indices(rho.a2))
      sum += cubic[a + base] * bernstein(rho.a2, a, g);
    return sum;
  });
}

/// Extension of a patch on <P, Q, R> to the triangle obtained by scaling
/// about Q by 5/3: C(beta) = sum_mu q(mu) B^{beta1}_{mu1}(5/3) B^{beta3}_{mu3}(5/3).
template <Scalar T> BBPatch<T> outer_extension(const BBPatch<T> &q) {
  const int d = q.degree();
  const T t = frac<T>(5, 3);
  const auto &dom = q.domain();
  const Triangle2<T> target{{point_at(dom, Bary3<T>(t, T(1) - t, T(0))), dom[1],
                             point_at(dom, Bary3<T>(T(0), T(1) - t, t))}};
  return BBPatch<T>::generate(d, target, [&](const MultiIndex3 &beta) {
    T sum(0);
    for (const auto &mu : enumerate_indices(d)) {
      if (mu.a1 > beta.a1 || mu.a3 > beta.a3)
        continue;
      sum += q[mu] * bernstein1(beta.a1, mu.a1, t) * bernstein1(beta.a3, mu.a3, t);
    }
    return sum;
  });
}

struct BuildOptions {
  /// Highest smoothness order whose residuals must vanish at build time.
  int gate_order = 2;
  /// Float-mode tolerance, relative to max(1, |coeffs|_inf).
  double rel_tol = 1e-10;
};

/// Element construction failed the smoothness gate. Carries per-edge
/// residual reports (converted to double).
class ConstructionError : public std::runtime_error {
public:
  ConstructionError(const std::string &msg, std::vector<SmoothnessReport<double>> reports)
      : std::runtime_error(msg), reports_(std::move(reports)) {}
  const std::vector<SmoothnessReport<double>> &reports() const { return reports_; }

private:
  std::vector<SmoothnessReport<double>> reports_;
};

template <Scalar T> struct CTElement {
  CTSplit<T> split;
  std::array<BBPatch<T>, 3> patches; ///< patches[i-1] on K_i
  /// reports[i-1]: order-2 residuals across [A0, A_{i+2}], K_i left, K_{i+1} right.
  std::array<SmoothnessReport<T>, 3> reports;
  /// Largest residual per order k = 0..2 over the interior edges.
  std::array<double, 3> max_residual{};

  /// Highest order r with all interior residuals up to r vanishing.
  int smooth_order(double rel_tol = 1e-10) const {
    int r = 2;
    for (const auto &rep : reports)
      r = std::min(r, rep.smooth_order(rel_tol));
    return r;
  }
};

/// Interior edge [A0, A_{i+2}] between K_i and K_{i+1}, in the continuity
/// convention. A_{i+3} has coordinates (-1, 3, -1) in K_i.
template <Scalar T> SharedEdge<T> interior_edge(const CTElement<T> &el, int i) {
  const auto k = static_cast<std::size_t>(CTSplit<T>::wrap(i));
  const auto k1 = static_cast<std::size_t>(CTSplit<T>::wrap(i + 1));
  return SharedEdge<T>::ordered(el.patches[k], el.patches[k1], Bary3<T>(T(-1), T(3), T(-1)));
}

namespace detail {
template <Scalar T> struct TypedMaps {
  Matrix<T> inverse10;
  std::array<Matrix<T>, 3> unknown;
};

template <Scalar T> const TypedMaps<T> &typed_maps() {
  static const TypedMaps<T> maps = [] {
    const auto &m = pipeline_maps();
    return TypedMaps<T>{m.inverse10.cast<T>(),
                        {m.unknown[0].cast<T>(), m.unknown[1].cast<T>(), m.unknown[2].cast<T>()}};
  }();
  return maps;
}
} // namespace detail

/// Inner cubic on K~ = <B1,B2,B3> recovered from the ten selected knowns.
template <Scalar T>
BBPatch<T> recover_inner_cubic(const std::array<std::array<T, 16>, 3> &known, const CTSplit<T> &s) {
  const auto pos = [](const MultiIndex3 &m) {
    return static_cast<std::size_t>(std::find(kKnownPositions.begin(), kKnownPositions.end(), m) -
                                    kKnownPositions.begin());
  };
  std::vector<T> rhs;
  rhs.reserve(10);
  for (const auto &[i, m] : kForwardRows)
    rhs.push_back(known[static_cast<std::size_t>(i - 1)][pos(m)]);
  return BBPatch<T>(3, s.inner_triangle(), detail::typed_maps<T>().inverse10.apply(rhs));
}

template <Scalar T>
CTElement<T> complete_element(const ElementData<T> &data, const CTSplit<T> &s,
                              const BuildOptions &opt = {}) {
  if (opt.gate_order < -1 || opt.gate_order > 2)
    throw ContractViolation("complete_element: gate order must be in -1..2");
  std::array<std::array<T, 16>, 3> known;
  for (int i = 1; i <= 3; ++i)
    known[static_cast<std::size_t>(i - 1)] = known_coefficients(data, s, i);

  const BBPatch<T> cubic = recover_inner_cubic(known, s);
  std::vector<T> cubic_coeffs(cubic.coeffs().begin(), cubic.coeffs().end());

  CTElement<T> el;
  el.split = s;
  for (int i = 1; i <= 3; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    BBPatch<T> p = BBPatch<T>::constant(5, s.sub[k], T(0));
    for (std::size_t n = 0; n < kKnownPositions.size(); ++n)
      p[kKnownPositions[n]] = known[k][n];
    const auto unknowns = detail::typed_maps<T>().unknown[k].apply(cubic_coeffs);
    for (std::size_t n = 0; n < kUnknownPositions.size(); ++n)
      p[kUnknownPositions[n]] = unknowns[n];
    el.patches[k] = std::move(p);
  }

  bool ok = true;
  for (int i = 1; i <= 3; ++i) {
    auto rep = smoothness_residuals(interior_edge(el, i), 2);
    for (int k = 0; k <= 2; ++k)
      el.max_residual[static_cast<std::size_t>(k)] =
          std::max(el.max_residual[static_cast<std::size_t>(k)], rep.max_abs[static_cast<std::size_t>(k)]);
    for (int k = 0; k <= opt.gate_order; ++k)
      ok = ok && rep.holds(k, opt.rel_tol);
    el.reports[static_cast<std::size_t>(i - 1)] = std::move(rep);
  }
  if (!ok) {
    std::vector<SmoothnessReport<double>> reps;
    for (const auto &r : el.reports) {
      SmoothnessReport<double> c{r.order, r.degree, {}, r.max_abs, r.scale};
      for (const auto &x : r.residuals)
        c.residuals.push_back({x.k, x.rho, to_double(x.value)});
      reps.push_back(std::move(c));
    }
    throw ConstructionError("complete_element: interior smoothness residuals exceed tolerance (C0 " +
                                std::to_string(el.max_residual[0]) + ", C1 " +
                                std::to_string(el.max_residual[1]) + ", C2 " +
                                std::to_string(el.max_residual[2]) + ")",
                            std::move(reps));
  }
  return el;
}

template <Scalar T>
CTElement<T> build_element(const JetProvider<T> &jet, const Triangle2<T> &tri, const BuildOptions &opt = {}) {
  const auto s = ct_split(tri);
  return complete_element(sample_dofs(jet, s), s, opt);
}

/// Barycentric containment with tolerance `tol` (exact for rationals).
template <Scalar T> bool contains(const Bary3<T> &lam, double tol = 1e-12) {
  for (int k = 0; k < 3; ++k) {
    if constexpr (is_exact_v<T>) {
      if (lam[k] < 0)
        return false;
    } else if (lam[k] < -tol) {
      return false;
    }
  }
  return true;
}

/// Subtriangle containing p (1-based, smallest index on ties), 0 if none.
template <Scalar T> int locate_subtriangle(const CTSplit<T> &s, const Point2<T> &p, double tol = 1e-12) {
  for (int i = 1; i <= 3; ++i)
    if (contains(barycentric(s.subtriangle(i), p), tol))
      return i;
  return 0;
}

/// Value and Cartesian partials up to `order` at p.
template <Scalar T> Jet2<T> eval_element(const CTElement<T> &el, const Point2<T> &p, int order = 0) {
  if (order < 0 || order > 2)
    throw ContractViolation("eval_element: derivative order must be 0, 1 or 2");
  if (!contains(barycentric(el.split.macro, p)))
    throw DomainError("eval_element: point outside the macro triangle");
  int i = locate_subtriangle(el.split, p);
  if (i == 0) // inside the macro triangle within tolerance but just outside every K_i
    i = locate_subtriangle(el.split, p, 1e-9);
  if (i == 0)
    throw DomainError("eval_element: point location failed");
  const auto &patch = el.patches[static_cast<std::size_t>(i - 1)];
  return evaluate_jet(patch, barycentric(patch.domain(), p), order);
}

} // namespace ct2
