#include "cuboct/json_io.hpp"

#include <set>
#include <sstream>

namespace cuboct {

using nlohmann::json;

json surface_to_json(const PolyhedralSurface& s) {
  json faces = json::array();
  for (const Face& f : s.faces)
    faces.push_back(
        {{"id", f.id}, {"vertices", f.vertices}, {"shape", f.shape}});
  return {{"faces", faces}, {"edge_length", s.edge_length}};
}

PolyhedralSurface surface_from_json(const json& j) {
  if (!j.contains("faces") || !j.contains("edge_length"))
    throw Error("surface JSON: missing faces or edge_length");
  std::vector<std::vector<int>> cycles;
  std::vector<std::pair<int, std::vector<int>>> listed;
  for (const auto& f : j["faces"])
    listed.push_back({f["id"].get<int>(), f["vertices"].get<std::vector<int>>()});
  std::sort(listed.begin(), listed.end());
  for (size_t i = 0; i < listed.size(); ++i) {
    if (listed[i].first != int(i))
      throw Error("surface JSON: face ids must be 0..n-1");
    cycles.push_back(listed[i].second);
  }
  return build_from_faces(cycles, j["edge_length"].get<double>());
}

json point_to_json(const SurfacePoint& p) {
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex:
      return {{"kind", "vertex"}, {"id", p.id}};
    case SurfacePoint::Kind::Edge:
      return {{"kind", "edge"}, {"id", p.id}, {"t", p.t}};
    case SurfacePoint::Kind::Face:
      return {{"kind", "face"}, {"id", p.id}, {"xy", {p.uv.x, p.uv.y}}};
  }
  throw Error("point_to_json: bad kind");
}

SurfacePoint point_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  int id = j.at("id").get<int>();
  if (kind == "vertex") return SurfacePoint::vertex(id);
  if (kind == "edge") return SurfacePoint::edge(id, j.at("t").get<double>());
  if (kind == "face") {
    auto xy = j.at("xy");
    return SurfacePoint::face(id, {xy[0].get<double>(), xy[1].get<double>()});
  }
  throw Error("point JSON: unknown kind '" + kind + "'");
}

json geodesic_to_json(const PolyhedralSurface& s, const GeodesicSegment& g) {
  (void)s;
  json polyline = json::array();
  for (size_t k = 0; k < g.faces.size(); ++k) {
    const Seg2& ls = g.local_segments[k];
    polyline.push_back({g.faces[k], ls.a.x, ls.a.y});
    polyline.push_back({g.faces[k], ls.b.x, ls.b.y});
  }
  return {{"from", point_to_json(g.from)},
          {"to", point_to_json(g.to)},
          {"faces", g.faces},
          {"length", g.length},
          {"polyline", polyline}};
}

json triangulation_to_json(const GeodesicTriangulation& T) {
  json verts = json::array();
  for (const SurfacePoint& p : T.vertices) verts.push_back(point_to_json(p));
  json edges = json::array();
  for (const TriEdge& e : T.edges)
    edges.push_back({{"a", e.a}, {"b", e.b}, {"witness_face", e.witness_face}});
  json tris = json::array();
  for (const auto& t : T.triangles) tris.push_back({t[0], t[1], t[2]});
  return {{"vertices", verts}, {"edges", edges}, {"triangles", tris}};
}

GeodesicTriangulation triangulation_from_json(const PolyhedralSurface& s,
                                              const json& j,
                                              const Tolerances& tol) {
  std::vector<SurfacePoint> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(point_from_json(v));
  std::vector<EdgeSpec> specs;
  for (const auto& e : j.at("edges"))
    specs.push_back({e.at("a").get<int>(), e.at("b").get<int>(),
                     e.at("witness_face").get<int>()});
  // Triangles arrive as edge-index triples; derive the vertex triples the
  // resolver expects, then restore the file's edge order so emit/ingest
  // round trips are byte-identical.
  std::vector<std::array<int, 3>> triples;
  std::vector<std::array<int, 3>> edge_triples;
  for (const auto& t : j.at("triangles")) {
    std::array<int, 3> eids{};
    for (int k = 0; k < 3; ++k) eids[k] = t.at(k).get<int>();
    edge_triples.push_back(eids);
    std::map<int, int> count;
    for (int ei : eids) {
      const EdgeSpec& e = specs.at(ei);
      count[e.a]++;
      count[e.b]++;
    }
    std::array<int, 3> tri{};
    int k = 0;
    for (auto& [v, c] : count) {
      if (c != 2 || k >= 3)
        throw Error("triangulation JSON: triangle is not an edge cycle");
      tri[k++] = v;
    }
    if (k != 3) throw Error("triangulation JSON: malformed triangle");
    triples.push_back(tri);
  }
  GeodesicTriangulation T =
      resolve_triangulation(s, verts, specs, triples, 8, tol);
  for (size_t t = 0; t < edge_triples.size(); ++t) {
    std::set<int> got(T.triangles[t].begin(), T.triangles[t].end());
    std::set<int> want(edge_triples[t].begin(), edge_triples[t].end());
    if (got != want)
      throw Error("triangulation JSON: triangle edges are inconsistent");
  }
  T.triangles = edge_triples;
  return T;
}

json report_to_json(const VerificationReport& R) {
  json angles = json::array();
  for (const CornerAngle& ca : R.angles)
    angles.push_back(
        {{"triangle", ca.triangle}, {"vertex", ca.vertex}, {"angle", ca.angle}});
  return {{"checks",
           {{"complex", R.complex_ok},
            {"edge_intersections", R.intersections_ok},
            {"corner_angles", R.angles_ok},
            {"vertex_closure", R.closure_ok},
            {"gauss_bonnet", R.gauss_bonnet_ok}}},
          {"valid", R.valid()},
          {"classification", R.classification},
          {"margin", R.margin},
          {"angles", angles},
          {"triangle_excess", R.triangle_excess},
          {"total_excess", R.total_excess},
          {"failures", R.failures}};
}

json certificate_to_json(const Certificate& c) {
  return {{"claim", c.claim},
          {"verdict", c.verdict},
          {"evidence", c.evidence},
          {"params",
           {{"eps_len", c.params.eps_len},
            {"eps_ang", c.params.eps_ang},
            {"snap", c.params.snap}}}};
}

SurfacePoint parse_point(const PolyhedralSurface& s, const std::string& text) {
  if (text.size() < 2) throw Error("point literal too short: '" + text + "'");
  char kind = text[0];
  std::istringstream rest(text.substr(1));
  auto fail = [&]() -> SurfacePoint {
    throw Error("bad point literal '" + text +
                "' (expected v<id>, e<id>:<t> or f<id>:<x>,<y>)");
  };
  if (kind == 'v') {
    int id;
    char extra;
    if (!(rest >> id) || rest >> extra) return fail();
    if (id < 0 || id >= s.vertex_count())
      throw Error("vertex id out of range: " + text);
    return SurfacePoint::vertex(id);
  }
  if (kind == 'e') {
    int id;
    char colon;
    double t;
    if (!(rest >> id >> colon >> t) || colon != ':') return fail();
    if (id < 0 || id >= s.edge_count())
      throw Error("edge id out of range: " + text);
    if (t <= 0.0 || t >= 1.0)
      throw Error("edge parameter must be strictly inside (0,1): " + text);
    return SurfacePoint::edge(id, t);
  }
  if (kind == 'f') {
    int id;
    char colon, comma;
    double x, y;
    if (!(rest >> id >> colon >> x >> comma >> y) || colon != ':' ||
        comma != ',')
      return fail();
    if (id < 0 || id >= s.face_count())
      throw Error("face id out of range: " + text);
    return canonical_point(s, id, {x, y});
  }
  return fail();
}

}  // namespace cuboct
