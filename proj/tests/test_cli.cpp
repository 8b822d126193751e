#include <doctest.h>

#include <unistd.h>

#include "cli_fixtures.hpp"
#include "ct2/io.hpp"
#include "mesh_fixtures.hpp"

using namespace ct2;
using fixture::invoke;
using fixture::put;
using fixture::R;

namespace {

const char *kSquare = R"({"vertices": [[0,0],[1,0],[1,1],[0,1]], "triangles": [[0,1,2],[0,2,3]]})";
const char *kQuadratic = R"({"polynomial": {"terms": [{"dx":2,"dy":0,"coef":1}, {"dx":0,"dy":1,"coef":1}]}})";

std::vector<std::string> lines(const std::string &s) {
  std::vector<std::string> r;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    r.push_back(l);
  return r;
}

} // namespace

TEST_CASE("build then eval: float and rational") {
  const auto dir = fixture::scratch("cli-build");
  const auto mesh = put(dir / "mesh.json", kSquare);
  const auto data = put(dir / "data.json", kQuadratic);
  const auto pts = put(dir / "pts.csv", "x,y\n0.2,0.3\n1/5,3/10\n1,1\n");

  auto b = invoke({"build", "--mesh", mesh, "--data", data, "--out", (dir / "s.json").string()});
  REQUIRE(b.code == cli::kOk);
  CHECK(std::filesystem::exists(dir / "s.json.report.json"));
  const auto report = read_json_file((dir / "s.json.report.json").string());
  CHECK(report["elements"].size() == 2);
  CHECK(report["max_residual"]["c2"].get<double>() <= 1e-12);

  auto e = invoke({"eval", "--coeffs", (dir / "s.json").string(), "--points", pts, "--deriv", "1"});
  REQUIRE(e.code == cli::kOk);
  const auto rows = lines(e.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "x,y,value,dx,dy");

  auto br = invoke({"build", "--mode", "rational", "--mesh", mesh, "--data", data, "--out", (dir / "r.json").string()});
  REQUIRE(br.code == cli::kOk);
  auto er = invoke({"eval", "--coeffs", (dir / "r.json").string(), "--points", pts});
  REQUIRE(er.code == cli::kOk);
  const auto rr = lines(er.out);
  CHECK(rr[1] == "1/5,3/10,17/50");
  CHECK(rr[2] == "1/5,3/10,17/50");
  CHECK(rr[3] == "1,1,2");
  // mode mismatch with the dump
  CHECK(invoke({"eval", "--mode", "float", "--coeffs", (dir / "r.json").string(), "--points", pts}).code == cli::kInvalid);
}

TEST_CASE("dump round trip is bit-identical") {
  oracle::Rng rng(71);
  const auto m = fixture::grid(2, &rng);
  const auto f = rng.poly(7, 4, 4);
  const auto s = build_spline<double>(m, f.analytic(), BuildOptions{-1});
  const auto back = surface_from_dump<double>(json::parse(dump_to_json(s).dump(1)));
  for (std::size_t t = 0; t < m.size(); ++t)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(back.elements[t].patches[k] == s.elements[t].patches[k]);
  CHECK(dump_to_json(back).dump() == dump_to_json(s).dump());

  const auto sr = build_spline<R>(m, f.analytic(), BuildOptions{-1});
  const auto br = surface_from_dump<R>(json::parse(dump_to_json(sr).dump()));
  for (std::size_t t = 0; t < m.size(); ++t)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(br.elements[t].patches[k] == sr.elements[t].patches[k]);
  CHECK_THROWS_AS(surface_from_dump<double>(dump_to_json(sr)), ValidationError);
}

TEST_CASE("sample writes csv and obj") {
  const auto dir = fixture::scratch("cli-sample");
  const auto mesh = put(dir / "mesh.json", kSquare);
  const auto data = put(dir / "data.json", kQuadratic);
  REQUIRE(invoke({"build", "--mesh", mesh, "--data", data, "--out", (dir / "s.json").string()}).code == cli::kOk);
  auto c = invoke({"sample", "--coeffs", (dir / "s.json").string(), "--grid", "4"});
  REQUIRE(c.code == cli::kOk);
  CHECK(lines(c.out).size() == 1 + 6 * 15);
  REQUIRE(invoke({"sample", "--coeffs", (dir / "s.json").string(), "--grid", "4", "--out", (dir / "s.obj").string()})
              .code == cli::kOk);
  const auto obj = lines(fixture::slurp(dir / "s.obj"));
  std::size_t v = 0, f = 0;
  for (const auto &l : obj) {
    v += l.rfind("v ", 0) == 0;
    f += l.rfind("f ", 0) == 0;
  }
  CHECK(v == 6 * 15);
  CHECK(f == 6 * 16);
}

TEST_CASE("audit exit codes") {
  const auto dir = fixture::scratch("cli-audit");
  const auto mesh = put(dir / "mesh.json", kSquare);
  const auto good = put(dir / "good.json", kQuadratic);
  auto a = invoke({"audit", "--mesh", mesh, "--data", good, "--deriv", "2"});
  CHECK(a.code == cli::kOk);
  const auto doc = json::parse(a.out);
  CHECK(doc["edges"].size() == 7);

  auto tables = fixture::sampled_tables(fixture::two_triangles(), oracle::Poly::monomial(1, 1));
  tables.elements[1].jets[1].fx += R(1, 2);
  tables.elements[1].jets[1].fy -= R(1, 2);
  const auto bad = put(dir / "bad.json", dofs_to_json(tables).dump());
  auto f = invoke({"audit", "--mesh", mesh, "--data", bad, "--gate", "1", "--deriv", "1"});
  CHECK(f.code == cli::kFailed);
  CHECK(f.err.find("order 1 mismatch") != std::string::npos);
  CHECK(invoke({"audit", "--mesh", mesh, "--data", bad, "--gate", "1", "--deriv", "0"}).code == cli::kOk);
}

TEST_CASE("construction gate failure exits 2, invalid input exits 1") {
  const auto dir = fixture::scratch("cli-errors");
  const auto mesh = put(dir / "mesh.json", kSquare);
  oracle::Rng rng(72);
  DofTables t;
  t.elements[0] = rng.element_data<R>();
  t.elements[1] = rng.element_data<R>();
  const auto generic = put(dir / "generic.json", dofs_to_json(t).dump());
  auto g = invoke({"build", "--mesh", mesh, "--data", generic});
  CHECK(g.code == cli::kFailed);
  CHECK(g.err.find("triangle 0") != std::string::npos);
  CHECK(invoke({"build", "--mesh", mesh, "--data", generic, "--gate", "1"}).code == cli::kOk);

  const auto data = put(dir / "data.json", kQuadratic);
  CHECK(invoke({"build", "--mesh", (dir / "missing.json").string(), "--data", data}).code == cli::kInvalid);
  const auto broken = put(dir / "broken.json", "{\"vertices\": [");
  CHECK(invoke({"build", "--mesh", broken, "--data", data}).code == cli::kInvalid);
  const auto cw = put(dir / "cw.json", R"({"vertices": [[0,0],[1,0],[0,1]], "triangles": [[0,2,1]]})");
  auto c = invoke({"build", "--mesh", cw, "--data", data});
  CHECK(c.code == cli::kInvalid);
  CHECK(c.err.find("clockwise") != std::string::npos);
  CHECK(invoke({"frobnicate"}).code == cli::kInvalid);
  CHECK(invoke({}).code == cli::kInvalid);
  CHECK(invoke({"eval", "--mesh", mesh, "--data", data}).code == cli::kInvalid);
  const auto outside = put(dir / "out.csv", "x,y\n2,2\n");
  auto o = invoke({"eval", "--mesh", mesh, "--data", data, "--points", outside});
  CHECK(o.code == cli::kInvalid);
  CHECK(o.err.find("outside") != std::string::npos);
  CHECK(invoke({"verify", "--mode", "float"}).code == cli::kInvalid);
  CHECK(invoke({"build", "--help"}).code == cli::kOk);
}

TEST_CASE("verify exits 0 and prints one line per check") {
  auto v = invoke({"verify"});
  CHECK(v.code == cli::kOk);
  CHECK(v.err.empty());
  for (const auto &l : lines(v.out))
    CHECK((l.rfind("PASS", 0) == 0 || l.rfind("INFO", 0) == 0));
}
