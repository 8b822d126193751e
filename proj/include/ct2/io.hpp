#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ct2/mesh.hpp"

namespace ct2 {

using json = nlohmann::json;

json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

/// A JSON number or a "p/q" / decimal string, read exactly. JSON floats go
/// through their shortest decimal form.
Rational json_scalar(const json &j, const std::string &what);

template <Scalar T> json scalar_json(const T &v) {
  if constexpr (is_exact_v<T>)
    return to_string(v);
  else
    return v;
}

/// {"vertices": [[x,y],...], "triangles": [[i,j,k],...]}
Triangulation mesh_from_json(const json &doc);
json mesh_to_json(const Triangulation &mesh, bool exact);

/// {"polynomial": {"terms": [{"dx","dy","coef"}]}} or {"dofs": {"<t>": {...}}}.
DataProvider data_from_json(const json &doc);
json dofs_to_json(const DofTables &tables);
json element_data_to_json(const ElementData<Rational> &d);

/// Coefficient dump: mode, mesh, and per triangle the 3 x 21 coefficients
/// of K_1..K_3 in canonical order.
template <Scalar T> json dump_to_json(const SplineSurface<T> &s) {
  json doc;
  doc["mode"] = ScalarTraits<T>::name;
  doc["degree"] = 5;
  doc["mesh"] = mesh_to_json(s.mesh, is_exact_v<T>);
  json elements = json::array();
  for (std::size_t t = 0; t < s.elements.size(); ++t) {
    json subs = json::array();
    for (const auto &p : s.elements[t].patches) {
      json c = json::array();
      for (const auto &v : p.coeffs())
        c.push_back(scalar_json(v));
      subs.push_back(std::move(c));
    }
    elements.push_back({{"triangle", t}, {"subtriangles", std::move(subs)}});
  }
  doc["elements"] = std::move(elements);
  return doc;
}

/// Mode recorded in a dump ("float" or "rational").
std::string dump_mode(const json &doc);

template <Scalar T> T dump_scalar(const json &j) {
  if constexpr (is_exact_v<T>) {
    return json_scalar(j, "coefficient");
  } else {
    if (j.is_number())
      return j.get<double>();
    if (j.is_string())
      return parse_scalar<double>(j.get<std::string>());
    throw ValidationError("coefficient must be a number or string");
  }
}

/// Reloads a dump; splits are recomputed from the mesh and the interior
/// residual reports re-derived from the stored coefficients.
template <Scalar T> SplineSurface<T> surface_from_dump(const json &doc) {
  if (dump_mode(doc) != ScalarTraits<T>::name)
    throw ValidationError("coefficient dump mode is '" + dump_mode(doc) + "', expected '" +
                          ScalarTraits<T>::name + "'");
  if (!doc.contains("mesh") || !doc.contains("elements") || !doc["elements"].is_array())
    throw ValidationError("coefficient dump needs 'mesh' and 'elements'");
  SplineSurface<T> s{mesh_from_json(doc["mesh"]), {}};
  const auto &els = doc["elements"];
  if (els.size() != s.mesh.size())
    throw ValidationError("coefficient dump has " + std::to_string(els.size()) + " elements for " +
                          std::to_string(s.mesh.size()) + " triangles");
  s.elements.resize(s.mesh.size());
  std::vector<bool> filled(s.mesh.size(), false);
  for (const auto &e : els) {
    if (!e.contains("triangle") || !e["triangle"].is_number_integer())
      throw ValidationError("dump element without integer 'triangle'");
    const auto t = e["triangle"].get<long long>();
    if (t < 0 || static_cast<std::size_t>(t) >= s.mesh.size() || filled[static_cast<std::size_t>(t)])
      throw ValidationError("dump element has invalid or repeated triangle " + std::to_string(t));
    filled[static_cast<std::size_t>(t)] = true;
    const auto &subs = e.value("subtriangles", json());
    if (!subs.is_array() || subs.size() != 3)
      throw ValidationError("dump element " + std::to_string(t) + " needs 3 subtriangles");
    CTElement<T> el;
    el.split = ct_split(s.mesh.template triangle<T>(static_cast<std::size_t>(t)));
    for (std::size_t k = 0; k < 3; ++k) {
      if (!subs[k].is_array() || subs[k].size() != index_count(5))
        throw ValidationError("dump element " + std::to_string(t) + " subtriangle " + std::to_string(k + 1) +
                              " needs 21 coefficients");
      std::vector<T> c;
      for (const auto &v : subs[k])
        c.push_back(dump_scalar<T>(v));
      el.patches[k] = BBPatch<T>(5, el.split.sub[k], std::move(c));
    }
    for (int i = 1; i <= 3; ++i) {
      auto rep = smoothness_residuals(interior_edge(el, i), 2);
      for (std::size_t k = 0; k <= 2; ++k)
        el.max_residual[k] = std::max(el.max_residual[k], rep.max_abs[k]);
      el.reports[static_cast<std::size_t>(i - 1)] = std::move(rep);
    }
    s.elements[static_cast<std::size_t>(t)] = std::move(el);
  }
  return s;
}

/// Per-element interior residual maxima and smoothness order.
template <Scalar T> json build_report_json(const SplineSurface<T> &s, const BuildOptions &opt) {
  json doc;
  doc["mode"] = ScalarTraits<T>::name;
  doc["gate_order"] = opt.gate_order;
  doc["tolerance"] = opt.rel_tol;
  json els = json::array();
  std::array<double, 3> worst{};
  for (std::size_t t = 0; t < s.elements.size(); ++t) {
    const auto &el = s.elements[t];
    for (std::size_t k = 0; k < 3; ++k)
      worst[k] = std::max(worst[k], el.max_residual[k]);
    els.push_back({{"triangle", t},
                   {"max_residual", {{"c0", el.max_residual[0]}, {"c1", el.max_residual[1]}, {"c2", el.max_residual[2]}}},
                   {"smooth_order", el.smooth_order(opt.rel_tol)}});
  }
  doc["elements"] = std::move(els);
  doc["max_residual"] = {{"c0", worst[0]}, {"c1", worst[1]}, {"c2", worst[2]}};
  return doc;
}

json audit_to_json(const ContinuityAudit &a);

/// CSV with a header row; the first two columns are x and y. Cells are kept
/// as text so rational mode can parse them exactly.
std::vector<std::pair<std::string, std::string>> read_points_csv(std::istream &in);

/// Header "x,y,value[,dx,dy[,dxx,dxy,dyy]]".
std::string csv_header(int order);

template <Scalar T> std::string csv_row(const Point2<T> &p, const Jet2<T> &j, int order) {
  std::string r = to_string(p.x) + "," + to_string(p.y) + "," + to_string(j.f);
  if (order >= 1)
    r += "," + to_string(j.fx) + "," + to_string(j.fy);
  if (order >= 2)
    r += "," + to_string(j.fxx) + "," + to_string(j.fxy) + "," + to_string(j.fyy);
  return r;
}

/// Uniform barycentric grid of resolution n on every subtriangle: CSV of
/// x,y,value, or an OBJ triangle mesh of the graph.
template <Scalar T> std::string sample_csv(const SplineSurface<T> &s, int n) {
  std::string out = csv_header(0) + "\n";
  for (const auto &el : s.elements)
    for (const auto &p : el.patches)
      for (int a = n; a >= 0; --a)
        for (int b = n - a; b >= 0; --b) {
          const Bary3<T> lam(frac<T>(a, n), frac<T>(b, n), frac<T>(n - a - b, n));
          out += csv_row(point_at(p.domain(), lam), Jet2<T>{evaluate(p, lam)}, 0) + "\n";
        }
  return out;
}

template <Scalar T> std::string sample_obj(const SplineSurface<T> &s, int n) {
  std::string verts, faces;
  std::size_t base = 1;
  const auto id = [n](int a, int b) {
    // position of (a, b, n-a-b) in descending order
    const int head = n - a;
    return static_cast<std::size_t>(head * (head + 1) / 2 + (head - b));
  };
  for (const auto &el : s.elements)
    for (const auto &p : el.patches) {
      for (int a = n; a >= 0; --a)
        for (int b = n - a; b >= 0; --b) {
          const Bary3<T> lam(frac<T>(a, n), frac<T>(b, n), frac<T>(n - a - b, n));
          const auto x = point_at(p.domain(), lam);
          verts += "v " + ScalarTraits<double>::to_string(to_double(x.x)) + " " +
                   ScalarTraits<double>::to_string(to_double(x.y)) + " " +
                   ScalarTraits<double>::to_string(to_double(evaluate(p, lam))) + "\n";
        }
      for (int a = n - 1; a >= 0; --a)
        for (int b = n - 1 - a; b >= 0; --b) {
          // upward cell (a+1,b),(a,b+1),(a,b); orientation follows the CCW domain
          const auto v0 = base + id(a + 1, b), v1 = base + id(a, b + 1), v2 = base + id(a, b);
          faces += "f " + std::to_string(v0) + " " + std::to_string(v1) + " " + std::to_string(v2) + "\n";
          if (a + b <= n - 2) {
            const auto w0 = base + id(a + 1, b), w1 = base + id(a + 1, b + 1), w2 = base + id(a, b + 1);
            faces += "f " + std::to_string(w0) + " " + std::to_string(w1) + " " + std::to_string(w2) + "\n";
          }
        }
      base += static_cast<std::size_t>((n + 1) * (n + 2) / 2);
    }
  return "# spline surface sample, " + std::to_string(s.elements.size() * 3) + " patches\n" + verts + faces;
}

} // namespace ct2
