#pragma once

#include <array>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "ct2/ct_element.hpp"

namespace ct2 {

/// One use of an undirected edge: triangle index and local edge k, the
/// directed edge (tri[k], tri[k+1]).
struct EdgeUse {
  int triangle = 0;
  int local = 0;
};

/// Validated conforming triangulation. Vertices are kept exactly; float
/// callers convert on access.
class Triangulation {
public:
  /// Validates and builds adjacency; throws ValidationError naming the
  /// offending triangle, vertex or edge.
  Triangulation(std::vector<Point2<Rational>> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Point2<Rational>> &vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>> &triangles() const { return triangles_; }
  std::size_t size() const { return triangles_.size(); }

  /// Undirected edge (min, max) -> incident triangles (one or two).
  const std::map<std::pair<int, int>, std::vector<EdgeUse>> &edges() const { return edges_; }
  std::vector<std::pair<int, int>> interior_edges() const;
  std::vector<std::pair<int, int>> boundary_edges() const;

  template <Scalar T> Triangle2<T> triangle(std::size_t t) const {
    const auto &ix = triangles_.at(t);
    return {{convert_point<T>(vertices_[static_cast<std::size_t>(ix[0])]),
             convert_point<T>(vertices_[static_cast<std::size_t>(ix[1])]),
             convert_point<T>(vertices_[static_cast<std::size_t>(ix[2])])}};
  }

private:
  std::vector<Point2<Rational>> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::map<std::pair<int, int>, std::vector<EdgeUse>> edges_;
};

/// Sum of coef * x^dx * y^dy with exact differentiation.
struct AnalyticPolynomial {
  struct Term {
    int dx = 0;
    int dy = 0;
    Rational coef;
  };
  std::vector<Term> terms;

  int degree() const {
    int d = 0;
    for (const auto &t : terms)
      d = std::max(d, t.dx + t.dy);
    return d;
  }

  template <Scalar T> Jet2<T> jet(const Point2<T> &p) const {
    // d^a/dx^a of x^n at x, a <= 2.
    const auto dpow = [](const T &x, int n, int a) {
      if (n < a)
        return T(0);
      T c(1);
      for (int k = 0; k < a; ++k)
        c *= T(n - k);
      return c * detail::power(x, n - a);
    };
    Jet2<T> j;
    for (const auto &t : terms) {
      const T c = scalar_cast<T>(t.coef);
      std::array<T, 3> px, py;
      for (int a = 0; a < 3; ++a) {
        px[static_cast<std::size_t>(a)] = dpow(p.x, t.dx, a);
        py[static_cast<std::size_t>(a)] = dpow(p.y, t.dy, a);
      }
      j.f += c * px[0] * py[0];
      j.fx += c * px[1] * py[0];
      j.fy += c * px[0] * py[1];
      j.fxx += c * px[2] * py[0];
      j.fxy += c * px[1] * py[1];
      j.fyy += c * px[0] * py[2];
    }
    return j;
  }

  template <Scalar T> T value(const Point2<T> &p) const { return jet(p).f; }
};

/// Per-triangle degree-of-freedom tables, kept exact.
struct DofTables {
  std::map<int, ElementData<Rational>> elements;
};

using DataProvider = std::variant<AnalyticPolynomial, DofTables>;

template <Scalar T> ElementData<T> convert_data(const ElementData<Rational> &d) {
  ElementData<T> o;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto &j = d.jets[k];
    o.jets[k] = {scalar_cast<T>(j.f),   scalar_cast<T>(j.fx),  scalar_cast<T>(j.fy),
                 scalar_cast<T>(j.fxx), scalar_cast<T>(j.fxy), scalar_cast<T>(j.fyy)};
    o.edges[k] = {scalar_cast<T>(d.edges[k].s1), scalar_cast<T>(d.edges[k].s3), scalar_cast<T>(d.edges[k].t2)};
  }
  o.centroid = scalar_cast<T>(d.centroid);
  return o;
}

/// Element construction failed for one triangle.
class ElementBuildError : public std::runtime_error {
public:
  ElementBuildError(int triangle, const std::string &what)
      : std::runtime_error("triangle " + std::to_string(triangle) + ": " + what), triangle_(triangle) {}
  int triangle() const { return triangle_; }

private:
  int triangle_;
};

template <Scalar T> struct SplineSurface {
  Triangulation mesh;
  std::vector<CTElement<T>> elements; ///< elements[t] for triangle t
};

/// Worker count: CT2_THREADS if set and positive, else hardware concurrency.
inline unsigned build_threads() {
  if (const char *env = std::getenv("CT2_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0)
      return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <Scalar T>
CTElement<T> build_triangle(const Triangulation &mesh, const DataProvider &data, std::size_t t,
                            const BuildOptions &opt) {
  const auto split = ct_split(mesh.triangle<T>(t));
  ElementData<T> d;
  if (const auto *poly = std::get_if<AnalyticPolynomial>(&data)) {
    d = sample_dofs<T>([poly](const Point2<T> &p) { return poly->jet(p); }, split);
  } else {
    const auto &tables = std::get<DofTables>(data).elements;
    const auto it = tables.find(static_cast<int>(t));
    if (it == tables.end())
      throw ValidationError("no degrees of freedom for triangle " + std::to_string(t));
    d = convert_data<T>(it->second);
  }
  return complete_element(d, split, opt);
}

/// One element per triangle, built independently; parallel over triangles
/// with results stored by index, so output does not depend on thread count.
template <Scalar T>
SplineSurface<T> build_spline(const Triangulation &mesh, const DataProvider &data, const BuildOptions &opt = {},
                              unsigned threads = 0) {
  const std::size_t n = mesh.size();
  std::vector<std::optional<CTElement<T>>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(n, threads == 0 ? build_threads() : threads));
  auto work = [&](std::size_t first) {
    for (std::size_t t = first; t < n; t += std::max(1u, workers)) {
      try {
        slots[t] = build_triangle<T>(mesh, data, t, opt);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work, w);
    for (auto &th : pool)
      th.join();
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (!errors[t])
      continue;
    try {
      std::rethrow_exception(errors[t]);
    } catch (const ValidationError &) {
      throw;
    } catch (const std::exception &e) {
      throw ElementBuildError(static_cast<int>(t), e.what());
    }
  }
  SplineSurface<T> s{mesh, {}};
  s.elements.reserve(n);
  for (auto &e : slots)
    s.elements.push_back(std::move(*e));
  return s;
}

/// First triangle containing p within 1e-12 barycentric, or -1.
template <Scalar T> int locate_triangle(const SplineSurface<T> &s, const Point2<T> &p) {
  for (std::size_t t = 0; t < s.elements.size(); ++t)
    if (contains(barycentric(s.elements[t].split.macro, p)))
      return static_cast<int>(t);
  return -1;
}

template <Scalar T> Jet2<T> eval_spline(const SplineSurface<T> &s, const Point2<T> &p, int order = 0) {
  const int t = locate_triangle(s, p);
  if (t < 0)
    throw DomainError("eval_spline: point outside the triangulation");
  return eval_element(s.elements[static_cast<std::size_t>(t)], p, order);
}

struct EdgeAudit {
  enum class Kind { Macro, Interior };
  Kind kind = Kind::Macro;
  /// Macro: the two triangles. Interior: the element twice.
  int left_triangle = 0, right_triangle = 0;
  /// Subtriangle (1-based) on each side.
  int left_sub = 0, right_sub = 0;
  Point2<double> a, b;
  std::vector<double> mismatch; ///< per derivative order 0..r
};

struct ContinuityAudit {
  int order = 0;
  int samples = 0;
  std::vector<EdgeAudit> edges;

  double max_mismatch(int k, std::optional<EdgeAudit::Kind> kind = std::nullopt) const {
    double m = 0.0;
    for (const auto &e : edges)
      if (!kind || e.kind == *kind)
        m = std::max(m, e.mismatch.at(static_cast<std::size_t>(k)));
    return m;
  }
};

/// Sampled audit across every interior macro edge and the three interior
/// CT edges of every element. Each side evaluates its own patch polynomial;
/// stencils are exact for quintics, so mismatches are rounding-level unless
/// the pieces genuinely differ. `step` is relative to the edge length.
template <Scalar T>
ContinuityAudit audit_global_continuity(const SplineSurface<T> &s, int order, int samples, double step = 0.05) {
  if (samples < 2)
    throw ContractViolation("audit_global_continuity: need at least 2 samples per edge");
  if (order < 0 || order > 2)
    throw ContractViolation("audit_global_continuity: order must be 0, 1 or 2");
  ContinuityAudit rep{order, samples, {}};
  std::vector<BBPatch<double>> patches;
  for (const auto &el : s.elements)
    for (const auto &p : el.patches)
      patches.push_back(p.template cast<double>());
  const auto fn = [&](int tri, int sub) -> PointFunction {
    const BBPatch<double> *p = &patches[static_cast<std::size_t>(tri * 3 + sub - 1)];
    return [p](const Point2<double> &x) { return evaluate_at(*p, x); };
  };
  const auto run = [&](EdgeAudit e, const Point2<double> &inside_left) {
    const double len = std::hypot(e.b.x - e.a.x, e.b.y - e.a.y);
    e.mismatch = sampled_cross_derivative_audit(fn(e.left_triangle, e.left_sub), fn(e.right_triangle, e.right_sub),
                                                EdgeGeometry{e.a, e.b, inside_left - e.a}, order, samples,
                                                step * len, Stencil::QuinticExact);
    rep.edges.push_back(std::move(e));
  };

  for (const auto &[key, uses] : s.mesh.edges()) {
    if (uses.size() != 2)
      continue;
    const auto &l = uses[0], &r = uses[1];
    const auto tl = s.mesh.template triangle<double>(static_cast<std::size_t>(l.triangle));
    EdgeAudit e;
    e.kind = EdgeAudit::Kind::Macro;
    e.left_triangle = l.triangle;
    e.right_triangle = r.triangle;
    // Directed edge (k, k+1) is opposite local vertex k+2, whose exterior edge belongs to K_{k+3} = K_k.
    e.left_sub = (l.local + 2) % 3 + 1;
    e.right_sub = (r.local + 2) % 3 + 1;
    e.a = tl[l.local];
    e.b = tl[(l.local + 1) % 3];
    run(std::move(e), tl[(l.local + 2) % 3]);
  }
  for (std::size_t t = 0; t < s.elements.size(); ++t) {
    const auto split = ct_split(s.mesh.template triangle<double>(t));
    for (int i = 1; i <= 3; ++i) {
      const auto &k = split.subtriangle(i);
      EdgeAudit e;
      e.kind = EdgeAudit::Kind::Interior;
      e.left_triangle = e.right_triangle = static_cast<int>(t);
      e.left_sub = i;
      e.right_sub = CTSplit<double>::wrap(i + 1) + 1;
      e.a = k[0];
      e.b = k[1];
      run(std::move(e), k[2]);
    }
  }
  return rep;
}

} // namespace ct2
