// Command-line front end: build/inspect the surface, compute geodesics and
// vertex fans, emit the two triangulations, run the verifier and the
// minimality certificates, and render SVG unfoldings.
//
// Exit codes: 0 all requested verdicts hold, 1 a verdict failed or was
// inconclusive, 2 usage error. Errors go to stderr as {"error": ...}.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cuboct/json_io.hpp"
#include "cuboct/svg.hpp"

using namespace cuboct;
using nlohmann::json;

namespace {

struct RunConfig {
  double tolerance = 1e-9;
  double snap = 1e-6;
  int max_faces = 8;
  double edge_length = 1.0;
  bool quiet = false;

  Tolerances tol() const { return {tolerance, tolerance, snap}; }
  void validate() const {
    if (!(tolerance > 0.0 && tolerance <= 1e-6))
      throw CLI::ValidationError("--tolerance must be in (0, 1e-6]");
    if (!(snap >= tolerance))
      throw CLI::ValidationError("--snap must be at least the tolerance");
    if (max_faces < 1) throw CLI::ValidationError("--max-faces must be >= 1");
    if (edge_length <= 0.0)
      throw CLI::ValidationError("--edge-length must be positive");
  }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tolerance", cfg.tolerance,
                  "length/angle tolerance (default 1e-9)");
  cmd->add_option("--snap", cfg.snap, "pi/12 snapping tolerance (default 1e-6)");
  cmd->add_option("--max-faces", cfg.max_faces,
                  "face budget for geodesic search (default 8)");
  cmd->add_flag("--quiet", cfg.quiet, "suppress stdout summaries");
}

void emit(const json& j, const std::string& path, bool quiet) {
  std::string text = j.dump(2) + "\n";
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
  } else if (!quiet) {
    std::cout << text;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

json fan_to_json(const PolyhedralSurface& s, int vertex,
                 const std::vector<FanEntry>& fan) {
  json dirs = json::array();
  for (const FanEntry& fe : fan)
    dirs.push_back({{"target", fe.target},
                    {"phi", fe.phi},
                    {"gap_after", fe.gap_after},
                    {"length", fe.seg.length},
                    {"faces", fe.seg.faces}});
  return {{"vertex", vertex},
          {"count", fan.size()},
          {"cone_angle", s.vertices[vertex].cone_angle},
          {"directions", dirs}};
}

// Lemma-1 style check over every vertex: 20 directions, equal gaps,
// multiplicities (4x1, 2x1, 4x2, 1x6) by target.
json fan_check(const PolyhedralSurface& s, const Tolerances& tol,
               bool& all_good) {
  double max_gap_err = 0.0;
  bool counts_ok = true, mult_ok = true;
  for (int u = 0; u < s.vertex_count(); ++u) {
    auto fan = vertex_fan(s, u, tol);
    counts_ok = counts_ok && fan.size() == 20;
    std::map<int, int> mult;
    for (const FanEntry& fe : fan) {
      max_gap_err = std::max(max_gap_err,
                             std::abs(fe.gap_after - kPi / 12.0));
      mult[fe.target]++;
    }
    std::map<int, int> hist;
    for (auto& [v, m] : mult) hist[m]++;
    mult_ok = mult_ok && hist[1] == 6 && hist[2] == 4 && hist[6] == 1;
  }
  bool ok = counts_ok && mult_ok && max_gap_err < 1e-9;
  all_good = all_good && ok;
  return {{"vertices_checked", s.vertex_count()},
          {"all_counts_20", counts_ok},
          {"multiplicities_ok", mult_ok},
          {"max_gap_error", max_gap_err},
          {"holds", ok}};
}

int run_minimality(const PolyhedralSurface& s, const RunConfig& cfg,
                   const std::string& check, const std::string& json_path,
                   const std::string& svg_dir) {
  Tolerances tol = cfg.tol();
  json results = json::array();
  bool all_hold = true;
  auto push = [&](const Certificate& c) {
    results.push_back(certificate_to_json(c));
    all_hold = all_hold && c.verdict == "holds";
  };

  if (check == "parity" || check == "all") {
    push(check_size_parity(9));
    push(check_size_parity(11));
  }
  if (check == "nonobtuse-lb" || check == "all")
    push(check_nonobtuse_lower_bound(s, tol));
  if (check == "acute8" || check == "all") push(check_no_acute_8(s, tol));
  if (check == "acute10" || check == "all") push(check_no_acute_10(s, tol));
  if (check == "all") push(main_theorem_report(s, tol));

  if (!svg_dir.empty()) {
    std::filesystem::create_directories(svg_dir);
    // Case panels: a skeleton edge and an antipodal strip geodesic.
    int v1 = 0;
    int v2 = s.neighbors(0).front();
    write_file(svg_dir + "/case_d1.svg", render_case_svg(s, v1, v2, 0, +1, tol));
    write_file(svg_dir + "/case_d3.svg",
               render_case_svg(s, 0, antipode(s, 0), 0, +1, tol));
    auto orbits = enumerate_c5(s, tol);
    if (!orbits.empty()) {
      write_file(svg_dir + "/c5.svg",
                 render_c5_svg(s, orbits.front().front(), 4, tol));
    }
  }

  emit(results, json_path, cfg.quiet);
  return all_hold ? 0 : 1;
}

int run_paper_check(const PolyhedralSurface& s, const RunConfig& cfg,
                    const std::string& json_path, const std::string& svg_dir) {
  Tolerances tol = cfg.tol();
  bool all_hold = true;
  json summary;
  summary["surface"] = {{"vertices", s.vertex_count()},
                        {"edges", s.edge_count()},
                        {"faces", s.face_count()}};
  double max_cone_err = 0.0;
  for (const VertexStar& st : s.vertices)
    max_cone_err =
        std::max(max_cone_err, std::abs(st.cone_angle - 5.0 * kPi / 3.0));
  summary["surface"]["max_cone_angle_error"] = max_cone_err;
  all_hold = all_hold && max_cone_err < 1e-12;

  summary["fan_check"] = fan_check(s, tol, all_hold);

  auto run_construction = [&](const std::string& name,
                              GeodesicTriangulation (*build)(
                                  const PolyhedralSurface&,
                                  const Tolerances&),
                              const std::string& want) {
    GeodesicTriangulation T = build(s, tol);
    VerificationReport R = verify(s, T, tol);
    summary["constructions"][name] = report_to_json(R);
    all_hold = all_hold && R.valid() && R.classification == want;
    if (!svg_dir.empty())
      write_file(svg_dir + "/" + name + ".svg",
                 render_triangulation_svg(s, T, tol));
  };
  run_construction("nonobtuse8", &construct_nonobtuse8, "non-obtuse");
  run_construction("acute12", &construct_acute12, "acute");

  json certs;
  auto add_cert = [&](const std::string& key, const Certificate& c) {
    certs[key] = certificate_to_json(c);
    all_hold = all_hold && c.verdict == "holds";
  };
  add_cert("parity-9", check_size_parity(9));
  add_cert("parity-11", check_size_parity(11));
  add_cert("thm1-lb", check_nonobtuse_lower_bound(s, tol));
  add_cert("acute8", check_no_acute_8(s, tol));
  add_cert("acute10", check_no_acute_10(s, tol));
  summary["certificates"] = certs;

  Certificate main = main_theorem_report(s, tol);
  summary["main_theorem"] = certificate_to_json(main);
  all_hold = all_hold && main.verdict == "holds";

  summary["acute_minimum"] = 12;
  summary["nonobtuse_minimum"] = 8;
  summary["all_hold"] = all_hold;

  if (!svg_dir.empty()) {
    std::filesystem::create_directories(svg_dir);
    write_file(svg_dir + "/fan_v0.svg", render_fan_svg(s, 0, tol));
  }
  emit(summary, json_path, cfg.quiet);
  return all_hold ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intrinsic geodesics and minimal acute triangulations of the "
               "cuboctahedral surface"};
  app.require_subcommand(1);
  RunConfig cfg;

  // surface
  auto* c_surface = app.add_subcommand("surface", "emit the surface JSON");
  std::string surface_out;
  c_surface->add_option("--edge-length", cfg.edge_length, "side length");
  c_surface->add_option("--out", surface_out, "output file (default stdout)");
  add_common(c_surface, cfg);

  // geodesics
  auto* c_geo = app.add_subcommand("geodesics",
                                   "shortest geodesics between two points");
  std::string geo_from, geo_to, geo_out;
  bool geo_all = false;
  c_geo->add_option("--from", geo_from, "point (v3 | e5:0.25 | f2:0.3,0.4)")
      ->required();
  c_geo->add_option("--to", geo_to, "point")->required();
  c_geo->add_flag("--all", geo_all, "emit every tied shortest geodesic");
  c_geo->add_option("--out", geo_out, "output file (default stdout)");
  add_common(c_geo, cfg);

  // fan
  auto* c_fan = app.add_subcommand("fan", "all geodesics out of a vertex");
  int fan_vertex = 0;
  std::string fan_svg, fan_out;
  c_fan->add_option("--vertex", fan_vertex, "vertex id")->required();
  c_fan->add_option("--svg", fan_svg, "write an unfolded-fan SVG");
  c_fan->add_option("--out", fan_out, "output file (default stdout)");
  add_common(c_fan, cfg);

  // triangulate
  auto* c_tri = app.add_subcommand("triangulate", "build a triangulation");
  std::string tri_kind, tri_out, tri_svg;
  c_tri->add_option("--construction", tri_kind, "nonobtuse8 | acute12")
      ->required()
      ->check(CLI::IsMember({"nonobtuse8", "acute12"}));
  c_tri->add_option("--out", tri_out, "triangulation JSON file");
  c_tri->add_option("--svg", tri_svg, "write a net SVG");
  add_common(c_tri, cfg);

  // verify
  auto* c_verify = app.add_subcommand("verify", "verify a triangulation JSON");
  std::string verify_in, verify_out;
  c_verify->add_option("--in", verify_in, "triangulation JSON file")
      ->required();
  c_verify->add_option("--out", verify_out, "report file (default stdout)");
  add_common(c_verify, cfg);

  // minimality
  auto* c_min = app.add_subcommand("minimality", "run lower-bound certificates");
  std::string min_check = "all", min_json, min_svg_dir;
  c_min->add_option("--check", min_check,
                    "parity | nonobtuse-lb | acute8 | acute10 | all")
      ->check(CLI::IsMember({"parity", "nonobtuse-lb", "acute8", "acute10",
                             "all"}));
  c_min->add_option("--json", min_json, "certificate JSON file");
  c_min->add_option("--svg-dir", min_svg_dir, "write evidence SVGs here");
  add_common(c_min, cfg);

  // paper-check
  auto* c_paper = app.add_subcommand(
      "paper-check", "full pipeline: fans, constructions, certificates");
  std::string paper_json, paper_svg_dir;
  c_paper->add_option("--json", paper_json, "summary JSON file");
  c_paper->add_option("--svg-dir", paper_svg_dir, "write figure SVGs here");
  add_common(c_paper, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    PolyhedralSurface s = build_cuboctahedron(cfg.edge_length);
    Tolerances tol = cfg.tol();

    if (app.got_subcommand(c_surface)) {
      emit(surface_to_json(s), surface_out, cfg.quiet);
      return 0;
    }
    if (app.got_subcommand(c_geo)) {
      SurfacePoint p, q;
      try {
        p = parse_point(s, geo_from);
        q = parse_point(s, geo_to);
      } catch (const Error& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
      }
      auto segs = shortest_geodesics(s, p, q, cfg.max_faces, tol);
      json out = json::array();
      for (const auto& g : segs) {
        out.push_back(geodesic_to_json(s, g));
        if (!geo_all) break;
      }
      emit(geo_all ? out : out[0], geo_out, cfg.quiet);
      return 0;
    }
    if (app.got_subcommand(c_fan)) {
      if (fan_vertex < 0 || fan_vertex >= s.vertex_count()) {
        std::cerr << json{{"error", "vertex id out of range"}}.dump() << "\n";
        return 2;
      }
      auto fan = vertex_fan(s, fan_vertex, tol);
      if (!fan_svg.empty())
        write_file(fan_svg, render_fan_svg(s, fan_vertex, tol));
      emit(fan_to_json(s, fan_vertex, fan), fan_out, cfg.quiet);
      return 0;
    }
    if (app.got_subcommand(c_tri)) {
      GeodesicTriangulation T = tri_kind == "nonobtuse8"
                                    ? construct_nonobtuse8(s, tol)
                                    : construct_acute12(s, tol);
      if (!tri_svg.empty())
        write_file(tri_svg, render_triangulation_svg(s, T, tol));
      emit(triangulation_to_json(T), tri_out, cfg.quiet);
      return 0;
    }
    if (app.got_subcommand(c_verify)) {
      std::ifstream in(verify_in);
      if (!in) {
        std::cerr << json{{"error", "cannot read " + verify_in}}.dump()
                  << "\n";
        return 2;
      }
      json j = json::parse(in, nullptr, true, true);
      GeodesicTriangulation T = triangulation_from_json(s, j, tol);
      VerificationReport R = verify(s, T, tol);
      emit(report_to_json(R), verify_out, cfg.quiet);
      if (!R.valid()) {
        std::cerr << json{{"error", "verification failed"},
                          {"failures", R.failures}}
                         .dump()
                  << "\n";
        return 1;
      }
      return 0;
    }
    if (app.got_subcommand(c_min))
      return run_minimality(s, cfg, min_check, min_json, min_svg_dir);
    if (app.got_subcommand(c_paper))
      return run_paper_check(s, cfg, paper_json, paper_svg_dir);
  } catch (const json::exception& e) {
    std::cerr << json{{"error", std::string("json: ") + e.what()}}.dump()
              << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}
