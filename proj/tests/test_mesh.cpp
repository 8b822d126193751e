#include <doctest.h>

#include <string>

#include "ct2/io.hpp"
#include "mesh_fixtures.hpp"

using namespace ct2;
using fixture::R;
using oracle::fr;

namespace {

std::string validation_message(std::vector<Point2<R>> v, std::vector<std::array<int, 3>> t) {
  try {
    Triangulation m(std::move(v), std::move(t));
  } catch (const ValidationError &e) {
    return e.what();
  }
  return "";
}

bool has(const std::string &s, const std::string &part) { return s.find(part) != std::string::npos; }

} // namespace

TEST_CASE("mesh loading examples") {
  const Triangulation one({{R(0), R(0)}, {R(1), R(0)}, {R(0), R(1)}}, {{{0, 1, 2}}});
  CHECK(one.boundary_edges().size() == 3);
  CHECK(one.interior_edges().empty());

  const auto two = fixture::two_triangles();
  REQUIRE(two.interior_edges() == std::vector<std::pair<int, int>>{{0, 2}});
  const auto &uses = two.edges().at({0, 2});
  REQUIRE(uses.size() == 2);
  CHECK(uses[0].triangle == 0);
  CHECK(uses[1].triangle == 1);
  CHECK(two.boundary_edges().size() == 4);

  const std::vector<Point2<R>> sq{{R(0), R(0)}, {R(1), R(0)}, {R(1), R(1)}, {R(0), R(1)}};
  const auto cw = validation_message(sq, {{{0, 2, 1}}});
  CHECK(has(cw, "triangle 0"));
  CHECK(has(cw, "clockwise"));
}

TEST_CASE("mesh validation errors name the offending entity") {
  const std::vector<Point2<R>> sq{{R(0), R(0)}, {R(1), R(0)}, {R(1), R(1)}, {R(0), R(1)}};
  CHECK(has(validation_message(sq, {}), "no triangles"));
  CHECK(has(validation_message(sq, {{{0, 1, 7}}}), "out of range"));
  CHECK(has(validation_message(sq, {{{0, 1, 1}}}), "repeated"));
  CHECK(has(validation_message({{R(0), R(0)}, {R(1), R(1)}, {R(2), R(2)}}, {{{0, 1, 2}}}), "degenerate"));
  CHECK(has(validation_message(sq, {{{0, 1, 2}}, {{1, 2, 0}}}), "triangle 1: duplicate"));
  CHECK(has(validation_message(sq, {{{0, 1, 2}}, {{0, 1, 3}}}), "same orientation"));
  CHECK(has(validation_message({{R(0), R(0)}, {R(1), R(0)}, {R(0), R(1)}, {R(1), R(0)}, {R(1), R(1)}},
                               {{{0, 1, 2}}, {{3, 4, 2}}}),
            "vertex 3 duplicates"));
  // hanging vertex 4 on edge (0, 2) of triangle 0
  const std::vector<Point2<R>> hang{{R(0), R(0)}, {R(2), R(0)}, {R(2), R(2)}, {R(0), R(2)}, {R(1), R(1)}};
  const auto nc = validation_message(hang, {{{0, 1, 2}}, {{0, 4, 3}}, {{4, 2, 3}}});
  CHECK(has(nc, "vertex 4 lies on edge (0, 2)"));
  // three triangles on one edge
  const std::vector<Point2<R>> fan{{R(0), R(0)}, {R(1), R(0)}, {R(0), R(1)}, {R(0), R(-1)}, {R(1), R(1)}};
  CHECK(has(validation_message(fan, {{{0, 1, 2}}, {{1, 0, 3}}, {{0, 1, 4}}}), "edge (0, 1)"));
}

TEST_CASE("constant data over a mesh gives constant coefficients") {
  oracle::Rng rng(61);
  const auto m = fixture::grid(3, &rng);
  const auto s = build_spline<R>(m, oracle::Poly::constant(fr(7, 3)).analytic());
  REQUIRE(s.elements.size() == 18);
  for (const auto &el : s.elements)
    for (const auto &p : el.patches)
      for (const auto &v : p.coeffs())
        CHECK(v == fr(7, 3));
}

TEST_CASE("quadratic over two triangles: audit clean at all orders") {
  const auto f = oracle::Poly::monomial(2, 0) + oracle::Poly::monomial(0, 1);
  const auto s = build_spline<double>(fixture::two_triangles(), f.analytic());
  const auto a = audit_global_continuity(s, 2, 16);
  CHECK(a.edges.size() == 1 + 2 * 3);
  for (int k = 0; k <= 2; ++k)
    CHECK(a.max_mismatch(k) <= 1e-8);
  const auto one = build_spline<double>(Triangulation({{R(0), R(0)}, {R(1), R(0)}, {R(0), R(1)}}, {{{0, 1, 2}}}),
                                        oracle::Poly::monomial(1, 1).analytic());
  const auto a1 = audit_global_continuity(one, 2, 10);
  CHECK(a1.edges.size() == 3);
  for (const auto &e : a1.edges)
    CHECK(e.kind == EdgeAudit::Kind::Interior);
  for (int k = 0; k <= 2; ++k)
    CHECK(a1.max_mismatch(k) <= 1e-10);
}

TEST_CASE("inconsistent shared-vertex gradient is reported by the audit") {
  const auto m = fixture::two_triangles();
  const auto f = oracle::Poly::monomial(1, 1);
  auto tables = fixture::sampled_tables(m, f);
  // vertex 2 = (1,1) is local 2 of triangle 0 and local 1 of triangle 1; the
  // gradient change is normal to the shared edge, so values still agree
  tables.elements[1].jets[1].fx += R(1, 2);
  tables.elements[1].jets[1].fy -= R(1, 2);
  const auto s = build_spline<double>(m, tables, BuildOptions{1});
  const auto a = audit_global_continuity(s, 1, 16);
  CHECK(a.max_mismatch(0, EdgeAudit::Kind::Macro) <= 1e-8);
  CHECK(a.max_mismatch(1, EdgeAudit::Kind::Macro) > 1e-3);
  CHECK(a.max_mismatch(1, EdgeAudit::Kind::Interior) <= 1e-10);
}

TEST_CASE("quintic data on a jittered grid: exact rational evaluation everywhere") {
  oracle::Rng rng(62);
  const auto m = fixture::grid(2, &rng);
  const auto f = rng.poly(5);
  const auto s = build_spline<R>(m, f.analytic());
  for (std::size_t t = 0; t < m.size(); ++t)
    for (int n = 0; n < 4; ++n) {
      const auto p = fixture::point_in(m, t, rng);
      const auto j = eval_spline(s, p, 2);
      const auto e = f.jet(p);
      CHECK(j.f == e.f);
      CHECK(j.fx == e.fx);
      CHECK(j.fyy == e.fyy);
    }
  // shared vertices and a point on a macro edge
  for (const auto &v : m.vertices())
    CHECK(eval_spline(s, v).f == f(v));
}

TEST_CASE("evaluation at vertices and on shared edges with non-reproduced data") {
  oracle::Rng rng(63);
  const auto m = fixture::grid(3, &rng);
  const auto f = rng.poly(7, 4, 4);
  const auto s = build_spline<double>(m, f.analytic(), BuildOptions{-1});
  for (const auto &v : m.vertices()) {
    const Point2<double> p{to_double(v.x), to_double(v.y)};
    CHECK(std::abs(eval_spline(s, p).f - f.value(p.x, p.y)) <= 1e-10 * std::max(1.0, std::abs(f.value(p.x, p.y))));
  }
  for (const auto &[e, uses] : m.edges()) {
    if (uses.size() != 2)
      continue;
    const auto a = convert_point<double>(m.vertices()[static_cast<std::size_t>(e.first)]);
    const auto b = convert_point<double>(m.vertices()[static_cast<std::size_t>(e.second)]);
    for (double t : {0.25, 0.5, 0.75}) {
      const Point2<double> p{(1 - t) * a.x + t * b.x, (1 - t) * a.y + t * b.y};
      const double l = eval_element(s.elements[static_cast<std::size_t>(uses[0].triangle)], p).f;
      const double r = eval_element(s.elements[static_cast<std::size_t>(uses[1].triangle)], p).f;
      CHECK(std::abs(l - r) <= 1e-10 * std::max(1.0, std::abs(l)));
    }
  }
  CHECK_THROWS_AS(eval_spline(s, Point2<double>{1.5, 0.5}), DomainError);
  CHECK_NOTHROW(eval_spline(s, Point2<double>{1.0, 0.5}));
}

TEST_CASE("cubic reproduction at 200 random domain points") {
  oracle::Rng rng(64);
  const auto m = fixture::grid(3, &rng);
  for (int deg = 0; deg <= 3; ++deg) {
    const auto f = rng.poly(deg);
    const auto sr = build_spline<R>(m, f.analytic());
    const auto sf = build_spline<double>(m, f.analytic());
    double scale = 1.0;
    for (const auto &el : sf.elements)
      for (const auto &p : el.patches)
        scale = std::max(scale, p.max_abs_coeff());
    for (int n = 0; n < 200; ++n) {
      const auto t = static_cast<std::size_t>(rng.integer(0, static_cast<int>(m.size()) - 1));
      const auto p = fixture::point_in(m, t, rng);
      CHECK(eval_spline(sr, p).f == f(p));
      const Point2<double> q{to_double(p.x), to_double(p.y)};
      CHECK(std::abs(eval_spline(sf, q).f - to_double(f(p))) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("local support: changing one table changes only that element") {
  oracle::Rng rng(65);
  const auto m = fixture::grid(2, &rng);
  const auto f = rng.poly(4);
  auto tables = fixture::sampled_tables(m, f);
  const auto before = build_spline<R>(m, tables, BuildOptions{1});
  for (int t : {0, 3, 7}) {
    auto changed = tables;
    changed.elements[t] = rng.element_data<R>();
    const auto after = build_spline<R>(m, changed, BuildOptions{1});
    for (std::size_t u = 0; u < m.size(); ++u) {
      bool same = true;
      for (std::size_t k = 0; k < 3; ++k)
        same = same && before.elements[u].patches[k] == after.elements[u].patches[k];
      CHECK(same == (static_cast<int>(u) != t));
    }
    // evaluations outside triangle t are unchanged
    for (std::size_t u = 0; u < m.size(); ++u) {
      if (static_cast<int>(u) == t)
        continue;
      const auto p = fixture::point_in(m, u, rng);
      if (contains(barycentric(m.triangle<R>(static_cast<std::size_t>(t)), p)))
        continue;
      CHECK(eval_spline(before, p).f == eval_spline(after, p).f);
    }
  }
}

TEST_CASE("builds are bit-identical across thread counts") {
  oracle::Rng rng(66);
  const auto m = fixture::grid(4, &rng);
  const auto f = rng.poly(7, 4, 4);
  const auto ref = dump_to_json(build_spline<double>(m, f.analytic(), BuildOptions{-1}, 1)).dump();
  for (unsigned th : {2u, 3u, 8u, 32u})
    CHECK(dump_to_json(build_spline<double>(m, f.analytic(), BuildOptions{-1}, th)).dump() == ref);
  const auto rref = dump_to_json(build_spline<R>(m, f.analytic(), BuildOptions{-1}, 1)).dump();
  CHECK(dump_to_json(build_spline<R>(m, f.analytic(), BuildOptions{-1}, 5)).dump() == rref);
}

TEST_CASE("element errors carry the triangle index") {
  oracle::Rng rng(67);
  const auto m = fixture::grid(2, &rng);
  auto tables = fixture::sampled_tables(m, rng.poly(3));
  tables.elements[5] = rng.element_data<R>();
  try {
    build_spline<R>(m, tables);
    FAIL("expected an element build error");
  } catch (const ElementBuildError &e) {
    CHECK(e.triangle() == 5);
  }
  tables.elements.erase(2);
  CHECK_THROWS_AS(build_spline<R>(m, tables, BuildOptions{1}), ValidationError);
}

TEST_CASE("smooth non-polynomial-degree data: observed macro-edge behaviour") {
  // Shared edge data come from one function, yet the edge datum t2 is taken
  // toward each triangle's own centroid. Once the quintic edge trace differs
  // from the function's, the two sides' first cross derivatives disagree.
  oracle::Rng rng(68);
  const auto m = fixture::grid(3, &rng);
  const auto six = build_spline<double>(m, rng.poly(6).analytic(), BuildOptions{1});
  CHECK(audit_global_continuity(six, 1, 16).max_mismatch(1, EdgeAudit::Kind::Macro) <= 1e-8);
  const auto seven = build_spline<double>(m, rng.poly(7).analytic(), BuildOptions{1});
  const auto a = audit_global_continuity(seven, 1, 16);
  CHECK(a.max_mismatch(0) <= 1e-8);
  CHECK(a.max_mismatch(1, EdgeAudit::Kind::Interior) <= 1e-8);
  CHECK(a.max_mismatch(1, EdgeAudit::Kind::Macro) > 1e-6);
}
