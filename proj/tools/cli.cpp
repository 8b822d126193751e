#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "ct2/io.hpp"
#include "ct2/verify.hpp"

namespace ct2::cli {

namespace {

struct Config {
  std::string mesh, data, coeffs, points, out, report, format;
  std::string mode;
  int grid = 16;
  int deriv = 0;
  int order = 2;
  int edge_samples = 16;
  int gate = 2;
  double tol = 1e-8;
};

std::string resolved_mode(const Config &c, const std::string &fallback) {
  return c.mode.empty() ? fallback : c.mode;
}

void emit(const Config &c, const std::string &text, std::ostream &out) {
  if (c.out.empty() || c.out == "-")
    out << text;
  else
    write_text_file(c.out, text);
}

template <Scalar T> SplineSurface<T> surface_from_inputs(const Config &c, const BuildOptions &opt) {
  if (!c.coeffs.empty())
    return surface_from_dump<T>(read_json_file(c.coeffs));
  if (c.mesh.empty() || c.data.empty())
    throw ValidationError("need --coeffs, or --mesh together with --data");
  return build_spline<T>(mesh_from_json(read_json_file(c.mesh)), data_from_json(read_json_file(c.data)), opt);
}

std::string input_mode(const Config &c) {
  if (!c.coeffs.empty()) {
    const auto m = dump_mode(read_json_file(c.coeffs));
    if (!c.mode.empty() && c.mode != m)
      throw ValidationError("--mode " + c.mode + " does not match the dump mode '" + m + "'");
    return m;
  }
  return resolved_mode(c, "float");
}

template <Scalar T> int do_build(const Config &c, std::ostream &out) {
  if (c.mesh.empty() || c.data.empty())
    throw ValidationError("build needs --mesh and --data");
  const BuildOptions opt{c.gate, 1e-10};
  const auto mesh = mesh_from_json(read_json_file(c.mesh));
  const auto data = data_from_json(read_json_file(c.data));
  const auto s = build_spline<T>(mesh, data, opt);
  const json report = build_report_json(s, opt);
  const std::string dump = dump_to_json(s).dump(1) + "\n";
  emit(c, dump, out);
  const std::string report_path = !c.report.empty() ? c.report : (c.out.empty() || c.out == "-" ? "" : c.out + ".report.json");
  if (!report_path.empty())
    write_text_file(report_path, report.dump(2) + "\n");
  if (!c.out.empty() && c.out != "-")
    out << "built " << s.elements.size() << " element(s), mode " << ScalarTraits<T>::name
        << ", max interior residual C0 " << report["max_residual"]["c0"].get<double>() << " C1 "
        << report["max_residual"]["c1"].get<double>() << " C2 " << report["max_residual"]["c2"].get<double>()
        << "\n";
  return kOk;
}

template <Scalar T> int do_eval(const Config &c, std::ostream &out) {
  if (c.points.empty())
    throw ValidationError("eval needs --points");
  const auto s = surface_from_inputs<T>(c, BuildOptions{c.gate, 1e-10});
  std::ifstream in(c.points);
  if (!in)
    throw ValidationError("cannot open '" + c.points + "'");
  const auto pts = read_points_csv(in);
  std::string text = csv_header(c.deriv) + "\n";
  for (std::size_t n = 0; n < pts.size(); ++n) {
    Point2<T> p;
    try {
      p = {parse_scalar<T>(pts[n].first), parse_scalar<T>(pts[n].second)};
    } catch (const ValidationError &e) {
      throw ValidationError("points row " + std::to_string(n + 1) + ": " + e.what());
    }
    try {
      text += csv_row(p, eval_spline(s, p, c.deriv), c.deriv) + "\n";
    } catch (const DomainError &) {
      throw ValidationError("points row " + std::to_string(n + 1) + " (" + pts[n].first + ", " + pts[n].second +
                            ") lies outside the triangulation");
    }
  }
  emit(c, text, out);
  return kOk;
}

template <Scalar T> int do_sample(const Config &c, std::ostream &out) {
  const auto s = surface_from_inputs<T>(c, BuildOptions{c.gate, 1e-10});
  std::string fmt = c.format;
  if (fmt.empty())
    fmt = std::filesystem::path(c.out).extension() == ".obj" ? "obj" : "csv";
  emit(c, fmt == "obj" ? sample_obj(s, c.grid) : sample_csv(s, c.grid), out);
  return kOk;
}

template <Scalar T> int do_audit(const Config &c, std::ostream &out, std::ostream &err) {
  const auto s = surface_from_inputs<T>(c, BuildOptions{c.gate, 1e-10});
  const auto a = audit_global_continuity(s, c.order, c.edge_samples);
  emit(c, audit_to_json(a).dump(2) + "\n", out);
  double scale = 1.0;
  for (const auto &el : s.elements)
    for (const auto &p : el.patches)
      scale = std::max(scale, p.max_abs_coeff());
  bool ok = true;
  for (int k = 0; k <= c.order; ++k) {
    const double m = a.max_mismatch(k);
    if (m > c.tol * scale) {
      ok = false;
      err << "audit: order " << k << " mismatch " << m << " exceeds " << c.tol * scale << "\n";
    }
  }
  return ok ? kOk : kFailed;
}

int do_verify(const Config &c, std::ostream &out, std::ostream &err) {
  if (resolved_mode(c, "rational") != "rational")
    throw ValidationError("verify runs in rational mode only");
  const auto rows = run_verification();
  bool ok = true;
  std::size_t width = 0;
  for (const auto &r : rows)
    width = std::max(width, r.name.size());
  for (const auto &r : rows) {
    const char *tag = !r.gating ? "INFO" : (r.passed ? "PASS" : "FAIL");
    out << std::left << std::setw(6) << tag << std::setw(static_cast<int>(width) + 2) << r.name << r.detail << "\n";
    if (r.gating && !r.passed) {
      ok = false;
      err << "verify: " << r.name << " failed: " << r.detail << "\n";
    }
  }
  return ok ? kOk : kFailed;
}

template <Scalar T> int dispatch(const std::string &cmd, const Config &c, std::ostream &out, std::ostream &err) {
  if (cmd == "build")
    return do_build<T>(c, out);
  if (cmd == "eval")
    return do_eval<T>(c, out);
  if (cmd == "sample")
    return do_sample<T>(c, out);
  return do_audit<T>(c, out, err);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Quintic C2 Clough-Tocher splines: build, evaluate, sample, audit, verify", "ct2"};
  app.require_subcommand(1);
  Config c;

  const auto modes = CLI::IsMember({"float", "rational"});
  auto *build = app.add_subcommand("build", "build a spline from a mesh and data; write a coefficient dump");
  auto *eval = app.add_subcommand("eval", "evaluate a coefficient dump at CSV points");
  auto *sample = app.add_subcommand("sample", "sample the surface on a barycentric grid (CSV or OBJ)");
  auto *audit = app.add_subcommand("audit", "sampled continuity audit across macro and interior edges");
  auto *verify = app.add_subcommand("verify", "exact checks of the element construction");

  for (auto *sc : {build, eval, sample, audit}) {
    sc->add_option("--mesh", c.mesh, "mesh document")->check(CLI::ExistingFile);
    sc->add_option("--data", c.data, "data document")->check(CLI::ExistingFile);
    sc->add_option("--mode", c.mode, "float or rational")->check(modes);
    sc->add_option("--out", c.out, "output path (stdout if omitted)");
    sc->add_option("--gate", c.gate, "smoothness order enforced at build time")->check(CLI::Range(-1, 2));
  }
  for (auto *sc : {eval, sample, audit})
    sc->add_option("--coeffs", c.coeffs, "coefficient dump")->check(CLI::ExistingFile);
  build->add_option("--report", c.report, "build report path (default <out>.report.json)");
  eval->add_option("--points", c.points, "CSV of points with header x,y")->check(CLI::ExistingFile);
  eval->add_option("--deriv", c.deriv, "derivative order 0, 1 or 2")->check(CLI::Range(0, 2));
  sample->add_option("--grid", c.grid, "grid resolution per subtriangle")->check(CLI::Range(2, 4096));
  sample->add_option("--format", c.format, "csv or obj (default from --out extension)")
      ->check(CLI::IsMember({"csv", "obj"}));
  audit->add_option("--edge-samples", c.edge_samples, "samples per edge")->check(CLI::Range(2, 100000));
  audit->add_option("--deriv,--order", c.order, "highest derivative order audited")->check(CLI::Range(0, 2));
  audit->add_option("--tol", c.tol, "failure threshold relative to max(1, |coeffs|)");
  verify->add_option("--mode", c.mode, "rational")->check(modes);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  const auto *sc = app.get_subcommands().front();
  const std::string cmd = sc->get_name();
  try {
    if (cmd == "verify")
      return do_verify(c, out, err);
    const std::string mode = cmd == "build" ? resolved_mode(c, "float") : input_mode(c);
    return mode == "rational" ? dispatch<Rational>(cmd, c, out, err) : dispatch<double>(cmd, c, out, err);
  } catch (const ElementBuildError &e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const ConstructionError &e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

} // namespace ct2::cli
