#include "cuboct/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"

using namespace cuboct;

namespace {

const PolyhedralSurface& cubocta() {
  static PolyhedralSurface s = build_cuboctahedron(1.0);
  return s;
}

const GeodesicTriangulation& thm1() {
  static GeodesicTriangulation T = construct_nonobtuse8(cubocta());
  return T;
}

const GeodesicTriangulation& thm2() {
  static GeodesicTriangulation T = construct_acute12(cubocta());
  return T;
}

std::vector<double> sorted_angles(const PolyhedralSurface& s,
                                  const GeodesicTriangulation& T) {
  std::vector<double> out;
  for (const CornerAngle& ca : corner_angles(s, T)) out.push_back(ca.angle);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("nonobtuse8: octahedral combinatorics 6,12,8") {
  const auto& T = thm1();
  CHECK(T.vertices.size() == 6);
  CHECK(T.edges.size() == 12);
  CHECK(T.triangles.size() == 8);
  CHECK(int(T.vertices.size()) - int(T.edges.size()) +
            int(T.triangles.size()) ==
        2);
}

TEST_CASE("nonobtuse8: crossing points are flat interior points") {
  const auto& s = cubocta();
  const auto& T = thm1();
  // c and c' are modeled as flat points (four right angles force total
  // angle 2*pi, so they cannot be cone vertices).
  for (int v : {4, 5}) {
    CHECK(T.vertices[v].kind == SurfacePoint::Kind::Face);
    CHECK(total_angle_at(s, T.vertices[v]) == doctest::Approx(2 * kPi));
  }
}

TEST_CASE("nonobtuse8: angle multiset is 8 x {pi/2, 5pi/12, 5pi/12}") {
  const auto& s = cubocta();
  const auto& T = thm1();
  auto angles = sorted_angles(s, T);
  REQUIRE(angles.size() == 24);
  for (int i = 0; i < 16; ++i)
    CHECK(std::abs(angles[i] - 5 * kPi / 12) < 1e-9);
  for (int i = 16; i < 24; ++i)
    CHECK(std::abs(angles[i] - kPi / 2) < 1e-9);

  // Angle table contains exactly 8 right angles, all at c or c'.
  int rights = 0;
  for (const CornerAngle& ca : corner_angles(s, T))
    if (std::abs(ca.angle - kPi / 2) < 1e-9) {
      ++rights;
      CHECK(ca.vertex >= 4);
    }
  CHECK(rights == 8);
}

TEST_CASE("nonobtuse8: verifier passes, classification non-obtuse, margin 0") {
  const auto& s = cubocta();
  const auto& T = thm1();
  VerificationReport R = verify(s, T);
  CHECK(R.complex_ok);
  CHECK(R.intersections_ok);
  CHECK(R.angles_ok);
  CHECK(R.closure_ok);
  CHECK(R.gauss_bonnet_ok);
  CHECK(R.valid());
  CHECK(R.classification == "non-obtuse");
  CHECK(std::abs(R.margin) < 1e-9);
  CHECK(std::abs(R.total_excess - 8 * kPi / 3) < 1e-8);
}

TEST_CASE("nonobtuse8: the eight triangles are congruent") {
  const auto& s = cubocta();
  const auto& T = thm1();
  auto table = corner_angles(s, T);
  double diag = std::sqrt(2.0);
  double half_antipodal = (1.0 + std::sqrt(3.0)) / 2.0;
  for (size_t t = 0; t < T.triangles.size(); ++t) {
    std::vector<double> angs;
    for (const CornerAngle& ca : table)
      if (ca.triangle == int(t)) angs.push_back(ca.angle);
    std::sort(angs.begin(), angs.end());
    REQUIRE(angs.size() == 3);
    CHECK(std::abs(angs[0] - 5 * kPi / 12) < 1e-9);
    CHECK(std::abs(angs[1] - 5 * kPi / 12) < 1e-9);
    CHECK(std::abs(angs[2] - kPi / 2) < 1e-9);

    std::vector<double> lens;
    for (int e : T.triangles[t]) lens.push_back(T.edges[e].geo.length);
    std::sort(lens.begin(), lens.end());
    CHECK(std::abs(lens[0] - half_antipodal) < 1e-9);
    CHECK(std::abs(lens[1] - half_antipodal) < 1e-9);
    CHECK(std::abs(lens[2] - diag) < 1e-9);
  }
}

TEST_CASE("nonobtuse8: isometry equivariance of the angle table") {
  const auto& s = cubocta();
  auto base = sorted_angles(s, thm1());
  auto group = isometry_group(s);

  int sq0 = -1;
  for (const Face& f : s.faces)
    if (f.shape == "square") {
      sq0 = f.id;
      break;
    }
  int a = s.faces[sq0].vertices[0], b = s.faces[sq0].vertices[2];

  for (size_t gi = 0; gi < group.size(); gi += 9) {
    const auto& perm = group[gi];
    std::set<int> img = {perm[a], perm[b]};
    auto [fimg, iso] = map_face(s, perm, sq0);
    (void)iso;
    const Face& f2 = s.faces[fimg];
    int dchoice = -1;
    for (int d = 0; d < 2; ++d)
      if (img == std::set<int>{f2.vertices[d], f2.vertices[d + 2]})
        dchoice = d;
    REQUIRE(dchoice >= 0);
    auto relabeled = construct_nonobtuse8_at(s, fimg, dchoice);
    auto angles = sorted_angles(s, relabeled);
    REQUIRE(angles.size() == base.size());
    for (size_t i = 0; i < angles.size(); ++i)
      CHECK(std::abs(angles[i] - base[i]) < 1e-9);
  }
}

TEST_CASE("acute12 frame: diagonal 4-cycle of length sqrt(2) diagonals") {
  const auto& s = cubocta();
  Acute12Frame fr = acute12_frame(s);
  for (int i = 0; i < 4; ++i) {
    int x = fr.cycle[i], y = fr.cycle[(i + 1) % 4];
    CHECK(skeleton_distance(s, x, y) == 2);
    auto segs =
        shortest_geodesics(s, SurfacePoint::vertex(x), SurfacePoint::vertex(y));
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(segs[0].faces == std::vector<int>{fr.cycle_square[i]});
  }
  // Named vertices alternate between the two regions.
  CHECK(fr.region_faces[0].size() == 5);
  CHECK(fr.region_faces[1].size() == 5);
}

TEST_CASE("acute12 frame: star point position matches the planar oracle") {
  // Oracle: right isosceles chart, a at the origin, legs of length 1 to a'
  // and b'; the ray at pi/6 from the leg to a' meets the hypotenuse
  // x + y = 1 at distance sqrt(3)-1 from a and (sqrt(6)-sqrt(2))/2 from a'.
  Vec2 a{0, 0}, ap{1, 0}, bp{0, 1};
  Vec2 dir = rotate(Vec2{1, 0}, kPi / 6);
  double t = 1.0 / (dir.x + dir.y);
  Vec2 star = a + t * dir;
  double len_a = dist(star, a);
  double len_ap = dist(star, ap);
  CHECK(len_a == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-14));
  CHECK(len_ap ==
        doctest::Approx((std::sqrt(6.0) - std::sqrt(2.0)) / 2).epsilon(1e-14));
  (void)bp;

  const auto& s = cubocta();
  Acute12Frame fr = acute12_frame(s);
  for (int i = 0; i < 4; ++i) {
    const Face& sq = s.faces[fr.cycle_square[i]];
    Vec2 star_uv = fr.star[i].uv;
    Vec2 named_uv = sq.chart[sq.corner_of(fr.named[i])];
    Vec2 cyc_uv = sq.chart[sq.corner_of(fr.cycle[i])];
    CHECK(dist(star_uv, named_uv) == doctest::Approx(len_a).epsilon(1e-12));
    CHECK(dist(star_uv, cyc_uv) == doctest::Approx(len_ap).epsilon(1e-12));
  }
}

TEST_CASE("acute12: combinatorics 8,18,12 and verifier all green") {
  const auto& s = cubocta();
  const auto& T = thm2();
  CHECK(T.vertices.size() == 8);
  CHECK(T.edges.size() == 18);
  CHECK(T.triangles.size() == 12);

  VerificationReport R = verify(s, T);
  CHECK(R.complex_ok);
  CHECK(R.intersections_ok);
  CHECK(R.angles_ok);
  CHECK(R.closure_ok);
  CHECK(R.gauss_bonnet_ok);
  CHECK(R.classification == "acute");
  CHECK(R.margin > 1e-3);
  // Frozen regression value; closed form pi/2 - acos(d1.d2/|d1||d2|) with
  // d1 = ((2-s3)/2, 3/2), d2 = (-(2 s3 - 1)/2, (2-s3)/2), s3 = sqrt(3).
  CHECK(std::abs(R.margin - 0.019235513703663) < 1e-12);
  CHECK(std::abs(R.total_excess - 8 * kPi / 3) < 1e-8);
}

TEST_CASE("acute12: all 36 corner angles are acute; table sums to 44pi/3") {
  const auto& s = cubocta();
  const auto& T = thm2();
  auto table = corner_angles(s, T);
  REQUIRE(table.size() == 36);
  double sum = 0.0;
  for (const CornerAngle& ca : table) {
    CHECK(ca.angle < kPi / 2);
    CHECK(ca.angle > 0);
    sum += ca.angle;
  }
  // 4 cone vertices x 5pi/3 + 4 flat points x 2pi.
  CHECK(std::abs(sum - 44 * kPi / 3) < 1e-8);
}

TEST_CASE("acute12: proof witness angle a-a*-b' equals 5pi/12") {
  const auto& s = cubocta();
  Acute12Frame fr = acute12_frame(s);
  SurfacePoint astar = fr.star[0];
  auto to_a = shortest_geodesics(s, astar, SurfacePoint::vertex(fr.named[0]));
  auto to_bp = shortest_geodesics(s, astar, SurfacePoint::vertex(fr.cycle[1]));
  REQUIRE(to_a.size() == 1);
  REQUIRE(to_bp.size() == 1);
  double ang = angle_between(s, direction_at(s, to_a[0], true),
                             direction_at(s, to_bp[0], true));
  CHECK(ang == doctest::Approx(5 * kPi / 12).epsilon(1e-9));
}

TEST_CASE("acute12: the bounded angle b*-a-c stays below pi/4 + pi/4") {
  const auto& s = cubocta();
  const auto& T = thm2();
  // Triangle b*ca has vertex indices {5, 2, 0}; the angle at a (index 0).
  for (const CornerAngle& ca : corner_angles(s, T)) {
    auto verts = T.triangle_vertices(ca.triangle);
    std::set<int> vs(verts.begin(), verts.end());
    if (vs == std::set<int>{0, 2, 5} && ca.vertex == 0)
      CHECK(ca.angle < kPi / 2);
  }
}

TEST_CASE("verify flags a corrupted complex before geometric checks") {
  const auto& s = cubocta();
  GeodesicTriangulation broken = thm1();
  broken.triangles.pop_back();
  VerificationReport R = verify(s, broken);
  CHECK(!R.complex_ok);
  CHECK(!R.valid());
  CHECK(!R.failures.empty());
}

TEST_CASE("corner_angles is deterministic") {
  const auto& s = cubocta();
  const auto& T = thm2();
  auto t1 = corner_angles(s, T);
  auto t2 = corner_angles(s, T);
  REQUIRE(t1.size() == t2.size());
  for (size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1[i].triangle == t2[i].triangle);
    CHECK(t1[i].vertex == t2[i].vertex);
    CHECK(t1[i].angle == t2[i].angle);
  }
}
