#include "cuboct/json_io.hpp"

#include "doctest.h"

using namespace cuboct;
using nlohmann::json;

namespace {
const PolyhedralSurface& cubocta() {
  static PolyhedralSurface s = build_cuboctahedron(1.0);
  return s;
}
}  // namespace

TEST_CASE("surface JSON round trip is byte-identical") {
  const auto& s = cubocta();
  json j1 = surface_to_json(s);
  PolyhedralSurface s2 = surface_from_json(j1);
  json j2 = surface_to_json(s2);
  CHECK(j1.dump() == j2.dump());
  CHECK(s2.vertex_count() == 12);
  CHECK(s2.edge_count() == 24);
  for (const VertexStar& st : s2.vertices)
    CHECK(std::abs(st.cone_angle - 5 * kPi / 3) < 1e-12);
}

TEST_CASE("point JSON round trips for all kinds") {
  const auto& s = cubocta();
  std::vector<SurfacePoint> pts = {
      SurfacePoint::vertex(7), SurfacePoint::edge(3, 0.25),
      SurfacePoint::face(2, {0.3, 0.4})};
  for (const SurfacePoint& p : pts) {
    SurfacePoint q = point_from_json(point_to_json(p));
    CHECK(points_equal(s, p, q));
  }
  CHECK_THROWS_AS(point_from_json(json{{"kind", "nope"}, {"id", 0}}), Error);
}

TEST_CASE("triangulation JSON round trip re-resolves the same geodesics") {
  const auto& s = cubocta();
  GeodesicTriangulation T = construct_acute12(s);
  json j1 = triangulation_to_json(T);
  GeodesicTriangulation T2 = triangulation_from_json(s, j1);
  json j2 = triangulation_to_json(T2);
  CHECK(j1.dump() == j2.dump());
  REQUIRE(T2.edges.size() == T.edges.size());
  for (size_t e = 0; e < T.edges.size(); ++e)
    CHECK(std::abs(T2.edges[e].geo.length - T.edges[e].geo.length) < 1e-12);
}

TEST_CASE("geodesic JSON carries faces, length and polyline") {
  const auto& s = cubocta();
  auto segs = shortest_geodesics(s, SurfacePoint::vertex(0),
                                 SurfacePoint::vertex(antipode(s, 0)));
  json j = geodesic_to_json(s, segs[0]);
  CHECK(j["faces"].size() == 3);
  CHECK(j["length"].get<double>() ==
        doctest::Approx(1 + std::sqrt(3.0)).epsilon(1e-12));
  CHECK(j["polyline"].size() == 6);  // two points per face
  CHECK(j["from"]["kind"] == "vertex");
}

TEST_CASE("report and certificate JSON mirror their structs") {
  const auto& s = cubocta();
  VerificationReport R = verify(s, construct_nonobtuse8(s));
  json jr = report_to_json(R);
  CHECK(jr["valid"] == true);
  CHECK(jr["classification"] == "non-obtuse");
  CHECK(jr["angles"].size() == 24);
  CHECK(jr["checks"]["gauss_bonnet"] == true);

  Certificate c = check_size_parity(9);
  json jc = certificate_to_json(c);
  CHECK(jc["claim"] == "parity-odd");
  CHECK(jc["verdict"] == "holds");
  CHECK(jc["params"]["eps_len"].get<double>() == doctest::Approx(1e-9));
}

TEST_CASE("point literals parse and reject garbage") {
  const auto& s = cubocta();
  SurfacePoint v = parse_point(s, "v3");
  CHECK(v.kind == SurfacePoint::Kind::Vertex);
  CHECK(v.id == 3);
  SurfacePoint e = parse_point(s, "e5:0.25");
  CHECK(e.kind == SurfacePoint::Kind::Edge);
  CHECK(e.t == doctest::Approx(0.25));
  SurfacePoint f = parse_point(s, "f2:0.3,0.4");
  CHECK(owning_faces(s, f) == std::vector<int>{2});

  for (const std::string bad :
       {"x1", "v99", "e5", "e5:1.5", "f2:0.3", "v3junk", ""})
    CHECK_THROWS_AS(parse_point(s, bad), Error);
}
