#include "cuboct/surface.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"

using namespace cuboct;

namespace {
const PolyhedralSurface& cubocta() {
  static PolyhedralSurface s = build_cuboctahedron(1.0);
  return s;
}
}  // namespace

TEST_CASE("cuboctahedron counts: 12 vertices, 24 edges, 14 faces") {
  const auto& s = cubocta();
  CHECK(s.vertex_count() == 12);
  CHECK(s.edge_count() == 24);
  CHECK(s.face_count() == 14);
  int tris = 0, squares = 0;
  for (const Face& f : s.faces) (f.shape == "triangle" ? tris : squares)++;
  CHECK(tris == 8);
  CHECK(squares == 6);
}

TEST_CASE("every cone angle equals 5*pi/3") {
  const auto& s = cubocta();
  for (const VertexStar& st : s.vertices) {
    CHECK(std::abs(st.cone_angle - 5.0 * kPi / 3.0) < 1e-12);
    CHECK(st.fan.size() == 4);
    // Alternating square/triangle corners around each vertex.
    std::multiset<std::string> shapes;
    for (const FanEntryRef& fe : st.fan) shapes.insert(s.faces[fe.face].shape);
    CHECK(shapes.count("triangle") == 2);
    CHECK(shapes.count("square") == 2);
  }
}

TEST_CASE("total curvature is 4*pi (Gauss-Bonnet)") {
  const auto& s = cubocta();
  double defect_sum = 0.0;
  for (const VertexStar& st : s.vertices) defect_sum += 2.0 * kPi - st.cone_angle;
  CHECK(std::abs(defect_sum - 4.0 * kPi) < 1e-9);
}

TEST_CASE("surface area scales as edge_length^2") {
  // Oracle: 6 unit squares + 8 equilateral triangles, edge length 2.
  PolyhedralSurface s = build_cuboctahedron(2.0);
  double area = 0.0;
  for (const Face& f : s.faces) area += polygon_area(f.chart);
  double expected = 6.0 * 4.0 + 8.0 * (std::sqrt(3.0) / 4.0) * 4.0;
  CHECK(area == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(4.0 * (6.0 + 2.0 * std::sqrt(3.0))));
}

TEST_CASE("glued edges have matching lengths and valid involution") {
  const auto& s = cubocta();
  for (const EdgeInfo& e : s.edges) {
    CHECK(e.length == doctest::Approx(1.0));
    CHECK(s.twin(e.half[0]) == e.half[1]);
    CHECK(s.twin(e.half[1]) == e.half[0]);
    // Gluing maps the shared edge onto itself pointwise.
    Seg2 a = s.edge_chart_segment(e.half[0]);
    Seg2 b = s.edge_chart_segment(e.half[1]);
    const Iso2& glue = s.gluing(e.half[0]);
    CHECK(dist(glue.apply(b.a), a.b) < 1e-12);
    CHECK(dist(glue.apply(b.b), a.a) < 1e-12);
  }
}

TEST_CASE("skeleton distances") {
  const auto& s = cubocta();
  CHECK(skeleton_distance(s, 0, 0) == 0);
  // Adjacent corners of any square face are at distance 1.
  const Face* sq = nullptr;
  for (const Face& f : s.faces)
    if (f.shape == "square") {
      sq = &f;
      break;
    }
  REQUIRE(sq != nullptr);
  CHECK(skeleton_distance(s, sq->vertices[0], sq->vertices[1]) == 1);

  // Every pair is within distance 3; exactly one vertex at distance 3,
  // and shells have sizes (4, 6, 1).
  for (int v = 0; v < s.vertex_count(); ++v) {
    std::map<int, int> shell;
    for (int w = 0; w < s.vertex_count(); ++w) {
      if (w == v) continue;
      int d = skeleton_distance(s, v, w);
      CHECK(d <= 3);
      shell[d]++;
    }
    CHECK(shell[1] == 4);
    CHECK(shell[2] == 6);
    CHECK(shell[3] == 1);
  }
  CHECK_THROWS_AS(skeleton_distance(s, 0, 99), Error);
}

TEST_CASE("builder rejects a non-positive edge length") {
  CHECK_THROWS_AS(build_cuboctahedron(0.0), Error);
  CHECK_THROWS_AS(build_cuboctahedron(-1.0), Error);
}

TEST_CASE("antipode requires central symmetry") {
  // Tetrahedron: all vertices pairwise adjacent, no distance-3 partner.
  PolyhedralSurface tetra =
      build_from_faces({{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}, 1.0);
  CHECK_THROWS_AS(antipode(tetra, 0), Error);
}

TEST_CASE("antipode is the distance-3 involution") {
  const auto& s = cubocta();
  std::set<int> images;
  for (int v = 0; v < s.vertex_count(); ++v) {
    int a = antipode(s, v);
    CHECK(skeleton_distance(s, v, a) == 3);
    CHECK(antipode(s, a) == v);
    images.insert(a);
  }
  CHECK(int(images.size()) == s.vertex_count());
}

TEST_CASE("skeleton degree is 4 everywhere") {
  const auto& s = cubocta();
  for (int v = 0; v < s.vertex_count(); ++v)
    CHECK(s.neighbors(v).size() == 4);
}

TEST_CASE("isometry group has order 48 and preserves face types") {
  const auto& s = cubocta();
  auto group = isometry_group(s);
  CHECK(group.size() == 48);

  std::vector<int> identity(s.vertex_count());
  for (int i = 0; i < s.vertex_count(); ++i) identity[i] = i;
  CHECK(std::find(group.begin(), group.end(), identity) != group.end());

  // Closed under composition, and squares map to squares.
  std::set<std::vector<int>> members(group.begin(), group.end());
  std::set<std::vector<int>> square_sets;
  for (const Face& f : s.faces)
    if (f.shape == "square") {
      auto vs = f.vertices;
      std::sort(vs.begin(), vs.end());
      square_sets.insert(vs);
    }
  for (size_t i = 0; i < group.size(); i += 7) {
    for (size_t j = 0; j < group.size(); j += 5) {
      std::vector<int> comp(s.vertex_count());
      for (int v = 0; v < s.vertex_count(); ++v) comp[v] = group[i][group[j][v]];
      CHECK(members.count(comp) == 1);
    }
    for (const auto& sq : square_sets) {
      std::vector<int> img;
      for (int v : sq) img.push_back(group[i][v]);
      std::sort(img.begin(), img.end());
      CHECK(square_sets.count(img) == 1);
    }
  }
}

TEST_CASE("fan walk closes with wedge angles summing to the cone angle") {
  const auto& s = cubocta();
  for (const VertexStar& st : s.vertices) {
    double acc = 0.0;
    for (const FanEntryRef& fe : st.fan) acc += fe.wedge_angle;
    CHECK(std::abs(acc - st.cone_angle) < 1e-12);
    CHECK(st.fan.front().wedge_start == 0.0);
    CHECK(st.fan.front().out_edge == st.reference_edge);
    for (const FanEntryRef& fe : st.fan)
      CHECK(st.reference_edge <= fe.out_edge);
  }
}

TEST_CASE("surface point canonicalization") {
  const auto& s = cubocta();
  const Face& f = s.faces[0];

  SurfacePoint v = canonical_point(s, 0, f.chart[1]);
  CHECK(v.kind == SurfacePoint::Kind::Vertex);
  CHECK(v.id == f.vertices[1]);

  Vec2 mid = 0.5 * (f.chart[0] + f.chart[1]);
  SurfacePoint e = canonical_point(s, 0, mid);
  CHECK(e.kind == SurfacePoint::Kind::Edge);
  CHECK(std::abs(e.t - 0.5) < 1e-12);
  // Same point expressed from the twin face canonicalizes identically.
  const EdgeInfo& einfo = s.edges[e.id];
  int other = einfo.half[0].face == 0 ? einfo.half[1].face : einfo.half[0].face;
  SurfacePoint e2 = canonical_point(s, other, point_in_face(s, e, other));
  CHECK(points_equal(s, e, e2));

  Vec2 inside = polygon_centroid(f.chart);
  SurfacePoint fp = canonical_point(s, 0, inside);
  CHECK(fp.kind == SurfacePoint::Kind::Face);
  CHECK(owning_faces(s, fp) == std::vector<int>{0});
  CHECK(owning_faces(s, e).size() == 2);
  CHECK(owning_faces(s, v).size() == 4);

  CHECK(total_angle_at(s, v) == doctest::Approx(5.0 * kPi / 3.0));
  CHECK(total_angle_at(s, fp) == doctest::Approx(2.0 * kPi));
}

TEST_CASE("map_point under an isometry preserves structure") {
  const auto& s = cubocta();
  auto group = isometry_group(s);
  const auto& perm = group[13 % group.size()];

  SurfacePoint v = SurfacePoint::vertex(3);
  SurfacePoint mv = map_point(s, perm, v);
  CHECK(mv.kind == SurfacePoint::Kind::Vertex);
  CHECK(mv.id == perm[3]);

  const Face& f = s.faces[2];
  Vec2 mid = 0.5 * (f.chart[0] + f.chart[1]);
  SurfacePoint e = canonical_point(s, 2, mid);
  SurfacePoint me = map_point(s, perm, e);
  CHECK(me.kind == SurfacePoint::Kind::Edge);
  // Midpoints map to midpoints.
  CHECK(std::abs(me.t - 0.5) < 1e-12);
}
