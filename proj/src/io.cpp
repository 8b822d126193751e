#include "ct2/io.hpp"

#include <fstream>
#include <sstream>

namespace ct2 {

json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out)
    throw ValidationError("failed writing '" + path + "'");
}

Rational json_scalar(const json &j, const std::string &what) {
  if (j.is_number_integer())
    return Rational(j.get<long long>());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v))
      throw ValidationError(what + ": non-finite number");
    return ScalarTraits<Rational>::from_double(v);
  }
  if (j.is_string())
    return parse_scalar<Rational>(j.get<std::string>());
  throw ValidationError(what + ": expected a number or a numeric string");
}

namespace {

const json &field(const json &obj, const char *key, const std::string &where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ValidationError(where + ": missing field '" + key + "'");
  return obj[key];
}

int json_int(const json &j, const std::string &what) {
  if (!j.is_number_integer())
    throw ValidationError(what + ": expected an integer");
  return j.get<int>();
}

ElementData<Rational> element_data_from_json(const json &d, const std::string &where) {
  ElementData<Rational> out;
  const auto &jets = field(d, "jets", where);
  if (!jets.is_array() || jets.size() != 3)
    throw ValidationError(where + ": 'jets' must list 3 vertex jets");
  static constexpr const char *kJet[] = {"f", "fx", "fy", "fxx", "fxy", "fyy"};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string w = where + " jet " + std::to_string(k);
    std::array<Rational, 6> v;
    for (std::size_t n = 0; n < 6; ++n)
      v[n] = json_scalar(field(jets[k], kJet[n], w), w + "." + kJet[n]);
    out.jets[k] = {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  const auto &edges = field(d, "edges", where);
  for (int i = 1; i <= 3; ++i) {
    const std::string w = where + " edge " + std::to_string(i);
    const json *e = nullptr;
    if (edges.is_object()) {
      e = &field(edges, std::to_string(i).c_str(), where + " edges");
    } else if (edges.is_array() && edges.size() == 3) {
      e = &edges[static_cast<std::size_t>(i - 1)];
    } else {
      throw ValidationError(where + ": 'edges' must be an object keyed 1..3 or a list of 3");
    }
    auto &ed = out.edges[static_cast<std::size_t>(i - 1)];
    ed.s1 = json_scalar(field(*e, "s1", w), w + ".s1");
    ed.s3 = json_scalar(field(*e, "s3", w), w + ".s3");
    ed.t2 = json_scalar(field(*e, "t2", w), w + ".t2");
  }
  out.centroid = json_scalar(field(d, "centroid", where), where + ".centroid");
  return out;
}

} // namespace

Triangulation mesh_from_json(const json &doc) {
  const auto &vs = field(doc, "vertices", "mesh");
  const auto &ts = field(doc, "triangles", "mesh");
  if (!vs.is_array() || !ts.is_array())
    throw ValidationError("mesh: 'vertices' and 'triangles' must be lists");
  std::vector<Point2<Rational>> vertices;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const std::string w = "mesh vertex " + std::to_string(v);
    if (!vs[v].is_array() || vs[v].size() != 2)
      throw ValidationError(w + ": expected [x, y]");
    vertices.push_back({json_scalar(vs[v][0], w), json_scalar(vs[v][1], w)});
  }
  std::vector<std::array<int, 3>> triangles;
  for (std::size_t t = 0; t < ts.size(); ++t) {
    const std::string w = "triangle " + std::to_string(t);
    if (!ts[t].is_array() || ts[t].size() != 3)
      throw ValidationError(w + ": expected [i, j, k]");
    triangles.push_back({json_int(ts[t][0], w), json_int(ts[t][1], w), json_int(ts[t][2], w)});
  }
  return Triangulation(std::move(vertices), std::move(triangles));
}

json mesh_to_json(const Triangulation &mesh, bool exact) {
  json vs = json::array();
  for (const auto &p : mesh.vertices()) {
    if (exact)
      vs.push_back({to_string(p.x), to_string(p.y)});
    else
      vs.push_back({to_double(p.x), to_double(p.y)});
  }
  json ts = json::array();
  for (const auto &t : mesh.triangles())
    ts.push_back({t[0], t[1], t[2]});
  return {{"vertices", std::move(vs)}, {"triangles", std::move(ts)}};
}

DataProvider data_from_json(const json &doc) {
  if (!doc.is_object())
    throw ValidationError("data document must be an object");
  if (doc.contains("polynomial")) {
    AnalyticPolynomial poly;
    const auto &terms = field(doc["polynomial"], "terms", "polynomial");
    if (!terms.is_array())
      throw ValidationError("polynomial: 'terms' must be a list");
    for (std::size_t n = 0; n < terms.size(); ++n) {
      const std::string w = "polynomial term " + std::to_string(n);
      AnalyticPolynomial::Term t;
      t.dx = json_int(field(terms[n], "dx", w), w + ".dx");
      t.dy = json_int(field(terms[n], "dy", w), w + ".dy");
      if (t.dx < 0 || t.dy < 0)
        throw ValidationError(w + ": negative exponent");
      t.coef = json_scalar(field(terms[n], "coef", w), w + ".coef");
      poly.terms.push_back(std::move(t));
    }
    return poly;
  }
  if (doc.contains("dofs")) {
    const auto &dofs = doc["dofs"];
    if (!dofs.is_object())
      throw ValidationError("dofs: expected an object keyed by triangle index");
    DofTables tables;
    for (const auto &[key, value] : dofs.items()) {
      int t = -1;
      try {
        std::size_t used = 0;
        t = std::stoi(key, &used);
        if (used != key.size())
          t = -1;
      } catch (const std::exception &) {
      }
      if (t < 0)
        throw ValidationError("dofs: invalid triangle key '" + key + "'");
      tables.elements[t] = element_data_from_json(value, "dofs triangle " + key);
    }
    return tables;
  }
  throw ValidationError("data document needs 'polynomial' or 'dofs'");
}

json element_data_to_json(const ElementData<Rational> &d) {
  json jets = json::array();
  for (const auto &j : d.jets)
    jets.push_back({{"f", to_string(j.f)},
                    {"fx", to_string(j.fx)},
                    {"fy", to_string(j.fy)},
                    {"fxx", to_string(j.fxx)},
                    {"fxy", to_string(j.fxy)},
                    {"fyy", to_string(j.fyy)}});
  json edges = json::object();
  for (int i = 1; i <= 3; ++i) {
    const auto &e = d.edges[static_cast<std::size_t>(i - 1)];
    edges[std::to_string(i)] = {{"s1", to_string(e.s1)}, {"s3", to_string(e.s3)}, {"t2", to_string(e.t2)}};
  }
  return {{"jets", std::move(jets)}, {"edges", std::move(edges)}, {"centroid", to_string(d.centroid)}};
}

json dofs_to_json(const DofTables &tables) {
  json dofs = json::object();
  for (const auto &[t, d] : tables.elements)
    dofs[std::to_string(t)] = element_data_to_json(d);
  return {{"dofs", std::move(dofs)}};
}

std::string dump_mode(const json &doc) {
  if (!doc.is_object() || !doc.contains("mode") || !doc["mode"].is_string())
    throw ValidationError("coefficient dump needs a string 'mode'");
  const auto m = doc["mode"].get<std::string>();
  if (m != "float" && m != "rational")
    throw ValidationError("coefficient dump has unknown mode '" + m + "'");
  return m;
}

json audit_to_json(const ContinuityAudit &a) {
  json edges = json::array();
  for (const auto &e : a.edges) {
    json m = json::array();
    for (double v : e.mismatch)
      m.push_back(v);
    edges.push_back({{"kind", e.kind == EdgeAudit::Kind::Macro ? "macro" : "interior"},
                     {"left", {{"triangle", e.left_triangle}, {"subtriangle", e.left_sub}}},
                     {"right", {{"triangle", e.right_triangle}, {"subtriangle", e.right_sub}}},
                     {"a", {e.a.x, e.a.y}},
                     {"b", {e.b.x, e.b.y}},
                     {"max_mismatch", std::move(m)}});
  }
  json worst = json::object();
  for (int k = 0; k <= a.order; ++k) {
    worst["macro"].push_back(a.max_mismatch(k, EdgeAudit::Kind::Macro));
    worst["interior"].push_back(a.max_mismatch(k, EdgeAudit::Kind::Interior));
  }
  return {{"order", a.order}, {"samples_per_edge", a.samples}, {"edges", std::move(edges)}, {"max_mismatch", worst}};
}

std::vector<std::pair<std::string, std::string>> read_points_csv(std::istream &in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string x, y;
    if (!std::getline(ss, x, ',') || !std::getline(ss, y, ','))
      throw ValidationError("points CSV line " + std::to_string(lineno) + ": expected x,y");
    out.emplace_back(x, y);
  }
  if (header)
    throw ValidationError("points CSV is empty (a header row is required)");
  return out;
}

std::string csv_header(int order) {
  std::string h = "x,y,value";
  if (order >= 1)
    h += ",dx,dy";
  if (order >= 2)
    h += ",dxx,dxy,dyy";
  return h;
}

} // namespace ct2
