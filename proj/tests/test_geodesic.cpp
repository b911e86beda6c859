#include "cuboct/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

using namespace cuboct;

namespace {

const PolyhedralSurface& cubocta() {
  static PolyhedralSurface s = build_cuboctahedron(1.0);
  return s;
}

// A cube exercises the generic builder (square-square gluings).
const PolyhedralSurface& cube() {
  static PolyhedralSurface s = build_from_faces(
      {{0, 3, 2, 1},
       {4, 5, 6, 7},
       {0, 1, 5, 4},
       {1, 2, 6, 5},
       {2, 3, 7, 6},
       {3, 0, 4, 7}},
      1.0);
  return s;
}

// Pair classification by skeleton distance and tie count.
struct PairInfo {
  int dist;
  std::vector<GeodesicSegment> segs;
};

PairInfo pair_info(const PolyhedralSurface& s, int u, int v) {
  return {skeleton_distance(s, u, v),
          shortest_geodesics(s, SurfacePoint::vertex(u),
                             SurfacePoint::vertex(v))};
}

constexpr double kEdgeLen = 1.0;
const double kDiagLen = std::sqrt(2.0);
const double kBentLen = std::sqrt(2.0 + std::sqrt(3.0));
const double kAntipodalLen = 1.0 + std::sqrt(3.0);

FaceEdgeRef shared_edge_probe(const PolyhedralSurface& s, int from, int to) {
  const Face& f = s.faces[from];
  for (int i = 0; i < f.size(); ++i)
    if (s.twin({from, i}).face == to) return {from, i};
  throw Error("not glued");
}

}  // namespace

TEST_CASE("unfold: single face is placed identically") {
  const auto& s = cubocta();
  UnfoldedChart chart = unfold(s, {0});
  REQUIRE(chart.placement.size() == 1);
  for (const Vec2& c : s.faces[0].chart)
    CHECK(dist(chart.placement[0].apply(c), c) < 1e-15);
}

TEST_CASE("unfold: triangle-square-triangle strip puts the apexes 1+sqrt(3) apart") {
  const auto& s = cubocta();
  // Find a square and the triangles across a pair of opposite edges.
  int sq = -1;
  for (const Face& f : s.faces)
    if (f.shape == "square") sq = f.id;
  REQUIRE(sq >= 0);
  int tri_a = s.twin({sq, 0}).face;
  int tri_b = s.twin({sq, 2}).face;
  REQUIRE(s.faces[tri_a].shape == "triangle");
  REQUIRE(s.faces[tri_b].shape == "triangle");

  UnfoldedChart chart = unfold(s, {tri_a, sq, tri_b});

  // The apex of each strip triangle is the corner off its shared edge.
  auto apex = [&](int k, int tri) {
    FaceEdgeRef tref = s.twin(shared_edge_probe(s, sq, tri));
    int off = (tref.index + 2) % 3;
    return chart.placement[k].apply(s.faces[tri].chart[off]);
  };
  // Oracle: explicit planar strip; square [0,1]^2 with apexes at
  // (1/2, -sqrt(3)/2) and (1/2, 1+sqrt(3)/2), so apex distance = 1+sqrt(3).
  Vec2 a0 = apex(0, tri_a);
  Vec2 a2 = apex(2, tri_b);
  CHECK(dist(a0, a2) == doctest::Approx(kAntipodalLen).epsilon(1e-12));
}

TEST_CASE("unfold: two cube squares form a 1x2 rectangle") {
  const auto& s = cube();
  int nb = s.twin({0, 0}).face;
  UnfoldedChart chart = unfold(s, {0, nb});
  double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
  for (int k = 0; k < 2; ++k)
    for (const Vec2& c : s.faces[chart.face_sequence[k]].chart) {
      Vec2 p = chart.placement[k].apply(c);
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  double w = xmax - xmin, h = ymax - ymin;
  CHECK(std::min(w, h) == doctest::Approx(1.0));
  CHECK(std::max(w, h) == doctest::Approx(2.0));
}

TEST_CASE("unfold rejects bad sequences") {
  const auto& s = cubocta();
  int nb = s.twin({0, 0}).face;
  CHECK_THROWS_AS(unfold(s, {0, nb, 0}), Error);  // immediate backtrack
  // Two faces that are not glued.
  int far = -1;
  for (const Face& f : s.faces) {
    bool adjacent = false;
    for (int i = 0; i < s.faces[0].size(); ++i)
      if (s.twin({0, i}).face == f.id) adjacent = true;
    if (!adjacent && f.id != 0) far = f.id;
  }
  REQUIRE(far >= 0);
  CHECK_THROWS_AS(unfold(s, {0, far}), Error);
}

TEST_CASE("shortest geodesics by pair type: 1, 1, 2 and 6 ties") {
  const auto& s = cubocta();
  int u = 0;
  std::map<int, std::vector<int>> by_tie_count;
  for (int v = 1; v < s.vertex_count(); ++v) {
    PairInfo info = pair_info(s, u, v);
    by_tie_count[int(info.segs.size())].push_back(v);
    for (const auto& g : info.segs) CHECK(g.length > 0);
    if (info.dist == 1) {
      REQUIRE(info.segs.size() == 1);
      CHECK(info.segs[0].length == doctest::Approx(kEdgeLen).epsilon(1e-12));
      CHECK(info.segs[0].faces.size() == 1);
    } else if (info.dist == 3) {
      // Antipode: six geodesics, all of length 1+sqrt(3).
      REQUIRE(info.segs.size() == 6);
      for (const auto& g : info.segs) {
        CHECK(g.length == doctest::Approx(kAntipodalLen).epsilon(1e-12));
        CHECK(g.faces.size() == 3);
      }
    } else {
      REQUIRE(info.dist == 2);
      if (info.segs.size() == 1) {
        // Square diagonal.
        CHECK(info.segs[0].length == doctest::Approx(kDiagLen).epsilon(1e-12));
        CHECK(info.segs[0].faces.size() == 1);
        CHECK(s.faces[info.segs[0].faces[0]].shape == "square");
      } else {
        // Bent pair: two tied geodesics through triangle+square.
        REQUIRE(info.segs.size() == 2);
        for (const auto& g : info.segs) {
          CHECK(g.length == doctest::Approx(kBentLen).epsilon(1e-12));
          CHECK(g.faces.size() == 2);
        }
      }
    }
  }
  CHECK(by_tie_count[1].size() == 6);  // 4 edges + 2 diagonals
  CHECK(by_tie_count[2].size() == 4);  // bent pairs
  CHECK(by_tie_count[6].size() == 1);  // antipode
}

TEST_CASE("shortest geodesics: basic contracts") {
  const auto& s = cubocta();
  CHECK_THROWS_AS(shortest_geodesics(s, SurfacePoint::vertex(0),
                                     SurfacePoint::vertex(0)),
                  Error);
  int a = antipode(s, 0);
  CHECK_THROWS_AS(shortest_geodesics(s, SurfacePoint::vertex(0),
                                     SurfacePoint::vertex(a), 2),
                  MaxFacesError);
}

TEST_CASE("geodesic_between selects ties by witness face") {
  const auto& s = cubocta();
  // A bent pair: two ties with distinct middle faces.
  int u = 0, v = -1;
  for (int w = 1; w < s.vertex_count(); ++w) {
    PairInfo info = pair_info(s, u, w);
    if (info.dist == 2 && info.segs.size() == 2) {
      v = w;
      break;
    }
  }
  REQUIRE(v >= 0);
  auto segs = shortest_geodesics(s, SurfacePoint::vertex(u),
                                 SurfacePoint::vertex(v));
  // Pick a face traversed by exactly one of the two.
  int witness = -1;
  for (int f : segs[0].faces)
    if (std::find(segs[1].faces.begin(), segs[1].faces.end(), f) ==
        segs[1].faces.end())
      witness = f;
  REQUIRE(witness >= 0);
  GeodesicSegment g = geodesic_between(s, SurfacePoint::vertex(u),
                                       SurfacePoint::vertex(v), witness);
  CHECK(g.faces == segs[0].faces);

  // A face traversed by neither ties.
  int bad = -1;
  for (const Face& f : s.faces) {
    bool used = false;
    for (const auto& g2 : segs)
      if (std::find(g2.faces.begin(), g2.faces.end(), f.id) != g2.faces.end())
        used = true;
    if (!used) bad = f.id;
  }
  REQUIRE(bad >= 0);
  CHECK_THROWS_AS(geodesic_between(s, SurfacePoint::vertex(u),
                                   SurfacePoint::vertex(v), bad),
                  Error);

  // Unique-geodesic pair: any traversed face works as witness.
  int d1 = s.neighbors(u)[0];
  auto edge_segs = shortest_geodesics(s, SurfacePoint::vertex(u),
                                      SurfacePoint::vertex(d1));
  REQUIRE(edge_segs.size() == 1);
  GeodesicSegment ge = geodesic_between(s, SurfacePoint::vertex(u),
                                        SurfacePoint::vertex(d1),
                                        edge_segs[0].faces[0]);
  CHECK(ge.length == doctest::Approx(edge_segs[0].length));
}

TEST_CASE("direction_at: skeleton edge direction matches its fan coordinate") {
  const auto& s = cubocta();
  for (int u : {0, 5, 11}) {
    const VertexStar& star = s.vertices[u];
    for (const FanEntryRef& fe : star.fan) {
      const EdgeInfo& e = s.edges[fe.out_edge];
      int v = e.u == u ? e.v : e.u;
      auto segs = shortest_geodesics(s, SurfacePoint::vertex(u),
                                     SurfacePoint::vertex(v));
      REQUIRE(segs.size() == 1);
      DirectionCoordinate d = direction_at(s, segs[0], true);
      CHECK(std::abs(wrap_angle(d.phi - fe.wedge_start, star.cone_angle)) <
            1e-12);
    }
  }
}

TEST_CASE("direction_at: reversal differs by pi inside one face") {
  const auto& s = cubocta();
  SurfacePoint p = SurfacePoint::face(0, polygon_centroid(s.faces[0].chart));
  Vec2 q_uv = polygon_centroid(s.faces[0].chart) + Vec2{0.2, 0.1};
  SurfacePoint q = canonical_point(s, 0, q_uv);
  auto segs = shortest_geodesics(s, p, q);
  REQUIRE(segs.size() == 1);
  DirectionCoordinate df = direction_at(s, segs[0], true);
  DirectionCoordinate dt = direction_at(s, segs[0], false);
  CHECK(std::abs(wrap_angle(df.phi - dt.phi, 2 * kPi) - kPi) < 1e-12);
}

TEST_CASE("direction_at: square diagonal sits pi/4 from both bounding edges") {
  const auto& s = cubocta();
  int sq = -1;
  for (const Face& f : s.faces)
    if (f.shape == "square") sq = f.id;
  const Face& f = s.faces[sq];
  int u = f.vertices[0], w = f.vertices[2];
  auto segs =
      shortest_geodesics(s, SurfacePoint::vertex(u), SurfacePoint::vertex(w));
  REQUIRE(segs.size() == 1);
  DirectionCoordinate d = direction_at(s, segs[0], true);
  const FanEntryRef& fe = s.fan_entry(u, sq);
  double off = wrap_angle(d.phi - fe.wedge_start, s.vertices[u].cone_angle);
  CHECK(off == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(fe.wedge_angle - off == doctest::Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("angle_between basics") {
  const auto& s = cubocta();
  int u = 0;
  auto fan = vertex_fan(s, u);
  DirectionCoordinate d0 = direction_at(s, fan[0].seg, true);
  CHECK(angle_between(s, d0, d0) == doctest::Approx(0.0));

  // Two adjacent skeleton edges bounding a square corner: pi/2.
  const VertexStar& star = s.vertices[u];
  for (const FanEntryRef& fe : star.fan) {
    if (s.faces[fe.face].shape != "square") continue;
    // Fan directions at the wedge boundaries of this square.
    DirectionCoordinate a{SurfacePoint::vertex(u), fe.wedge_start,
                          star.cone_angle};
    DirectionCoordinate b{SurfacePoint::vertex(u),
                          wrap_angle(fe.wedge_start + fe.wedge_angle,
                                     star.cone_angle),
                          star.cone_angle};
    CHECK(angle_between(s, a, b) == doctest::Approx(kPi / 2).epsilon(1e-12));
  }

  DirectionCoordinate other{SurfacePoint::vertex(1), 0.0,
                            s.vertices[1].cone_angle};
  CHECK_THROWS_AS(angle_between(s, d0, other), Error);
}

TEST_CASE("vertex fan: 20 directions, gaps pi/12, target multiplicities") {
  const auto& s = cubocta();
  for (int u = 0; u < s.vertex_count(); ++u) {
    auto fan = vertex_fan(s, u);
    REQUIRE(fan.size() == 20);
    double gap_sum = 0.0;
    for (const FanEntry& fe : fan) {
      CHECK(std::abs(fe.gap_after - kPi / 12) < 1e-9);
      gap_sum += fe.gap_after;
    }
    CHECK(std::abs(gap_sum - 5 * kPi / 3) < 1e-9);

    std::map<int, int> multiplicity;
    for (const FanEntry& fe : fan) multiplicity[fe.target]++;
    std::map<int, int> hist;  // tie count -> number of targets
    for (auto& [v, m] : multiplicity) hist[m]++;
    CHECK(hist[1] == 6);
    CHECK(hist[2] == 4);
    CHECK(hist[6] == 1);
  }
}

TEST_CASE("fan angles are multiples of pi/12") {
  const auto& s = cubocta();
  for (int u : {0, 3, 7}) {
    auto fan = vertex_fan(s, u);
    for (size_t i = 0; i < fan.size(); ++i)
      for (size_t j = i + 1; j < fan.size(); ++j) {
        DirectionCoordinate di{SurfacePoint::vertex(u), fan[i].phi,
                               s.vertices[u].cone_angle};
        DirectionCoordinate dj{SurfacePoint::vertex(u), fan[j].phi,
                               s.vertices[u].cone_angle};
        double ang = angle_between(s, di, dj);
        auto snapped = snap_to_pi12(ang, 1e-9);
        REQUIRE(snapped.has_value());
        CHECK(*snapped >= 1);
        CHECK(*snapped <= 20);
      }
  }
}

TEST_CASE("interior_angle: square diagonal splits the corner into pi/4 wedges") {
  const auto& s = cubocta();
  int sq = -1;
  for (const Face& f : s.faces)
    if (f.shape == "square") sq = f.id;
  const Face& f = s.faces[sq];
  int u = f.vertices[0], v = f.vertices[1], w = f.vertices[2];
  auto diag =
      shortest_geodesics(s, SurfacePoint::vertex(u), SurfacePoint::vertex(w));
  auto side =
      shortest_geodesics(s, SurfacePoint::vertex(u), SurfacePoint::vertex(v));
  REQUIRE(diag.size() == 1);
  REQUIRE(side.size() == 1);
  // Witness strictly inside the wedge between the diagonal and the side
  // containing corner v.
  Vec2 wit_uv = 0.25 * (f.chart[0] + f.chart[2]) + 0.5 * f.chart[1];
  SurfacePoint witness = canonical_point(s, sq, wit_uv);
  double ang = interior_angle(s, diag[0], side[0], SurfacePoint::vertex(u),
                              witness);
  CHECK(ang == doctest::Approx(kPi / 4).epsilon(1e-9));
}

TEST_CASE("interior_angle: opposite directions at a flat point give pi") {
  const auto& s = cubocta();
  int sq = -1;
  for (const Face& f : s.faces)
    if (f.shape == "square") sq = f.id;
  Vec2 c = polygon_centroid(s.faces[sq].chart);
  SurfacePoint m = SurfacePoint::face(sq, c);
  SurfacePoint x = SurfacePoint::face(sq, c + Vec2{0.3, 0});
  SurfacePoint y = SurfacePoint::face(sq, c - Vec2{0.3, 0});
  auto gx = shortest_geodesics(s, m, x);
  auto gy = shortest_geodesics(s, m, y);
  REQUIRE(gx.size() == 1);
  REQUIRE(gy.size() == 1);
  SurfacePoint above = SurfacePoint::face(sq, c + Vec2{0, 0.2});
  SurfacePoint below = SurfacePoint::face(sq, c - Vec2{0, 0.2});
  CHECK(interior_angle(s, gx[0], gy[0], m, above) ==
        doctest::Approx(kPi).epsilon(1e-12));
  CHECK(interior_angle(s, gx[0], gy[0], m, below) ==
        doctest::Approx(kPi).epsilon(1e-12));
  // A witness on the wedge boundary is rejected.
  SurfacePoint on_line = SurfacePoint::face(sq, c + Vec2{0.15, 0});
  CHECK_THROWS_AS(interior_angle(s, gx[0], gy[0], m, on_line), Error);
}

TEST_CASE("segments_intersect: overlap, shared endpoint, crossing") {
  const auto& s = cubocta();
  auto fan = vertex_fan(s, 0);
  CHECK(segments_intersect(s, fan[0].seg, fan[0].seg).kind ==
        IntersectKind::Overlap);
  CHECK(segments_intersect(s, fan[0].seg, fan[1].seg).kind ==
        IntersectKind::SharedEndpoint);

  // Two crossing diagonals of one square.
  int sq = -1;
  for (const Face& f : s.faces)
    if (f.shape == "square") sq = f.id;
  const Face& f = s.faces[sq];
  auto d1 = shortest_geodesics(s, SurfacePoint::vertex(f.vertices[0]),
                               SurfacePoint::vertex(f.vertices[2]));
  auto d2 = shortest_geodesics(s, SurfacePoint::vertex(f.vertices[1]),
                               SurfacePoint::vertex(f.vertices[3]));
  Intersection isec = segments_intersect(s, d1[0], d2[0]);
  REQUIRE(isec.kind == IntersectKind::Crossing);
  REQUIRE(isec.points.size() == 1);
  Vec2 center = polygon_centroid(f.chart);
  CHECK(points_equal(s, isec.points[0], canonical_point(s, sq, center), 1e-9));

  // Disjoint: edges of two far-apart faces.
  auto far1 = shortest_geodesics(s, SurfacePoint::vertex(f.vertices[0]),
                                 SurfacePoint::vertex(f.vertices[1]));
  int a0 = antipode(s, f.vertices[0]), a1 = antipode(s, f.vertices[1]);
  auto far2 = shortest_geodesics(s, SurfacePoint::vertex(a0),
                                 SurfacePoint::vertex(a1));
  CHECK(segments_intersect(s, far1[0], far2[0]).kind ==
        IntersectKind::Disjoint);
}

TEST_CASE("trace_ray: in-face, to the antipode, zero length, cone hit") {
  const auto& s = cubocta();
  // Within one face.
  Vec2 c = polygon_centroid(s.faces[0].chart);
  SurfacePoint m = SurfacePoint::face(0, c);
  DirectionCoordinate d{m, 0.3, 2 * kPi};
  TracedPath path = trace_ray(s, m, d, 0.2);
  CHECK(path.faces == std::vector<int>{0});
  CHECK(path.length == doctest::Approx(0.2));

  // Zero length stays put.
  TracedPath zero = trace_ray(s, m, d, 0.0);
  CHECK(points_equal(s, zero.endpoint, m));

  // Along a fan direction to the antipode.
  int u = 0, a = antipode(s, 0);
  auto fan = vertex_fan(s, u);
  for (const FanEntry& fe : fan) {
    if (fe.target != a) continue;
    DirectionCoordinate dir{SurfacePoint::vertex(u), fe.phi,
                            s.vertices[u].cone_angle};
    TracedPath to_a = trace_ray(s, SurfacePoint::vertex(u), dir,
                                fe.seg.length);
    CHECK(to_a.endpoint.kind == SurfacePoint::Kind::Vertex);
    CHECK(to_a.endpoint.id == a);
  }

  // Tracing along a skeleton edge past the far endpoint hits a cone point.
  DirectionCoordinate along{SurfacePoint::vertex(u), 0.0,
                            s.vertices[u].cone_angle};
  try {
    trace_ray(s, SurfacePoint::vertex(u), along, 2.0);
    FAIL("expected ConePointHit");
  } catch (const ConePointHit& hit) {
    CHECK(hit.arc_length == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("property: shortest-path symmetry") {
  const auto& s = cubocta();
  for (int v = 1; v < s.vertex_count(); ++v) {
    auto fwd = shortest_geodesics(s, SurfacePoint::vertex(0),
                                  SurfacePoint::vertex(v));
    auto bwd = shortest_geodesics(s, SurfacePoint::vertex(v),
                                  SurfacePoint::vertex(0));
    REQUIRE(fwd.size() == bwd.size());
    for (const auto& g : fwd) {
      bool matched = false;
      for (const auto& h : bwd) {
        if (std::abs(g.length - h.length) > 1e-12) continue;
        if (g.crossings.size() != h.crossings.size()) continue;
        bool same = true;
        for (size_t i = 0; i < g.crossings.size() && same; ++i)
          same = points_equal(s, g.crossings[i],
                              h.crossings[h.crossings.size() - 1 - i], 1e-9);
        if (same) matched = true;
      }
      CHECK(matched);
    }
  }
}

TEST_CASE("property: triangle inequality over skeleton vertices") {
  const auto& s = cubocta();
  int n = s.vertex_count();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      auto segs =
          shortest_geodesics(s, SurfacePoint::vertex(u), SurfacePoint::vertex(v));
      d[u][v] = d[v][u] = segs[0].length;
    }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        if (u == v || v == w || u == w) continue;
        CHECK(d[u][w] <= d[u][v] + d[v][w] + 1e-9);
      }
}

TEST_CASE("property: geodesic interiors keep clear of cone points") {
  const auto& s = cubocta();
  for (int u : {0, 4}) {
    auto fan = vertex_fan(s, u);
    for (const FanEntry& fe : fan) {
      for (size_t k = 0; k < fe.seg.faces.size(); ++k) {
        const Face& f = s.faces[fe.seg.faces[k]];
        const Seg2& ls = fe.seg.local_segments[k];
        for (int c = 0; c < f.size(); ++c) {
          double dd = point_segment_distance(f.chart[c], ls.a, ls.b);
          bool at_end = (k == 0 && f.vertices[c] == u) ||
                        (k + 1 == fe.seg.faces.size() &&
                         f.vertices[c] == fe.target);
          if (!at_end) CHECK(dd > 1e-9);
        }
      }
    }
  }
}
