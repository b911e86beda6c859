#include "cuboct/triangulation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cuboct {

std::array<int, 3> GeodesicTriangulation::triangle_vertices(int t) const {
  std::map<int, int> count;
  for (int e : triangles[t]) {
    count[edges[e].a]++;
    count[edges[e].b]++;
  }
  std::array<int, 3> out{};
  int k = 0;
  for (auto& [v, c] : count) {
    if (c != 2 || k >= 3)
      throw Error("triangle " + std::to_string(t) + " has an open edge cycle");
    out[k++] = v;
  }
  if (k != 3) throw Error("triangle is not bounded by three vertices");
  return out;
}

GeodesicTriangulation resolve_triangulation(
    const PolyhedralSurface& s, std::vector<SurfacePoint> vertices,
    const std::vector<EdgeSpec>& edge_specs,
    const std::vector<std::array<int, 3>>& triangle_vertex_triples,
    int max_faces, const Tolerances& tol) {
  GeodesicTriangulation T;
  T.vertices = std::move(vertices);
  std::map<std::pair<int, int>, int> edge_index;
  for (const EdgeSpec& spec : edge_specs) {
    auto cands = shortest_geodesics(s, T.vertices[spec.a], T.vertices[spec.b],
                                    max_faces, tol);
    GeodesicSegment chosen;
    if (spec.witness_face >= 0) {
      std::vector<GeodesicSegment> matches;
      for (auto& g : cands)
        if (std::find(g.faces.begin(), g.faces.end(), spec.witness_face) !=
            g.faces.end())
          matches.push_back(g);
      if (matches.size() != 1)
        throw Error("edge (" + std::to_string(spec.a) + "," +
                    std::to_string(spec.b) + "): witness face " +
                    std::to_string(spec.witness_face) + " matches " +
                    std::to_string(matches.size()) + " of " +
                    std::to_string(cands.size()) + " ties");
      chosen = matches.front();
    } else {
      if (cands.size() != 1)
        throw Error("edge (" + std::to_string(spec.a) + "," +
                    std::to_string(spec.b) + "): expected a unique shortest " +
                    "geodesic, found " + std::to_string(cands.size()));
      chosen = cands.front();
    }
    TriEdge e;
    e.a = spec.a;
    e.b = spec.b;
    e.witness_face = spec.witness_face >= 0
                         ? spec.witness_face
                         : chosen.faces[chosen.faces.size() / 2];
    e.geo = std::move(chosen);
    auto key = std::minmax(spec.a, spec.b);
    if (edge_index.count({key.first, key.second}))
      throw Error("duplicate edge endpoint pair");
    edge_index[{key.first, key.second}] = int(T.edges.size());
    T.edges.push_back(std::move(e));
  }
  for (const auto& tri : triangle_vertex_triples) {
    std::array<int, 3> eids{};
    for (int k = 0; k < 3; ++k) {
      auto key = std::minmax(tri[k], tri[(k + 1) % 3]);
      auto it = edge_index.find({key.first, key.second});
      if (it == edge_index.end())
        throw Error("triangle references missing edge (" +
                    std::to_string(key.first) + "," +
                    std::to_string(key.second) + ")");
      eids[k] = it->second;
    }
    T.triangles.push_back(eids);
  }
  return T;
}

// ---------------------------------------------------------------------------
// Theorem-1 construction

GeodesicTriangulation construct_nonobtuse8_at(const PolyhedralSurface& s,
                                              int square_face, int diagonal,
                                              const Tolerances& tol) {
  const Face& sq = s.faces[square_face];
  if (sq.shape != "square")
    throw Error("construct_nonobtuse8: face is not a square");
  if (diagonal != 0 && diagonal != 1)
    throw Error("construct_nonobtuse8: diagonal must be 0 or 1");
  int a = sq.vertices[diagonal];
  int b = sq.vertices[diagonal + 2];
  int a2 = antipode(s, a);
  int b2 = antipode(s, b);

  // The antipodal geodesics through two triangles and one square.
  auto strip_geodesics = [&](int u, int v) {
    std::vector<GeodesicSegment> out;
    for (auto& g : shortest_geodesics(s, SurfacePoint::vertex(u),
                                      SurfacePoint::vertex(v), 8, tol)) {
      if (g.faces.size() != 3) continue;
      if (s.faces[g.faces[0]].shape == "triangle" &&
          s.faces[g.faces[1]].shape == "square" &&
          s.faces[g.faces[2]].shape == "triangle")
        out.push_back(g);
    }
    return out;
  };
  auto ga = strip_geodesics(a, a2);
  auto gb = strip_geodesics(b, b2);
  if (ga.size() != 2 || gb.size() != 2)
    throw Error("construct_nonobtuse8: expected 2 triangle-square-triangle "
                "geodesics per antipodal pair");

  // Pair the two families by their middle square and intersect.
  std::vector<SurfacePoint> cross_points;
  for (const auto& g : ga) {
    const GeodesicSegment* mate = nullptr;
    for (const auto& h : gb)
      if (h.faces[1] == g.faces[1]) mate = &h;
    if (!mate)
      throw Error("construct_nonobtuse8: no matching geodesic through the "
                  "same square");
    Intersection isec = segments_intersect(s, g, *mate, tol);
    if (isec.kind != IntersectKind::Crossing || isec.points.size() != 1)
      throw Error("construct_nonobtuse8: chosen geodesics do not cross once");
    cross_points.push_back(isec.points[0]);
  }

  std::vector<SurfacePoint> verts = {
      SurfacePoint::vertex(a),  SurfacePoint::vertex(b),
      SurfacePoint::vertex(a2), SurfacePoint::vertex(b2),
      cross_points[0],          cross_points[1]};
  std::vector<EdgeSpec> edges = {
      {0, 1, -1}, {1, 2, -1}, {2, 3, -1}, {3, 0, -1},
      {0, 4, -1}, {1, 4, -1}, {2, 4, -1}, {3, 4, -1},
      {0, 5, -1}, {1, 5, -1}, {2, 5, -1}, {3, 5, -1}};
  std::vector<std::array<int, 3>> tris = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4},
                                          {3, 0, 4}, {0, 1, 5}, {1, 2, 5},
                                          {2, 3, 5}, {3, 0, 5}};
  return resolve_triangulation(s, verts, edges, tris, 8, tol);
}

GeodesicTriangulation construct_nonobtuse8(const PolyhedralSurface& s,
                                           const Tolerances& tol) {
  for (const Face& f : s.faces)
    if (f.shape == "square")
      return construct_nonobtuse8_at(s, f.id, 0, tol);
  throw Error("construct_nonobtuse8: no square face");
}

// ---------------------------------------------------------------------------
// Theorem-2 construction

Acute12Frame acute12_frame(const PolyhedralSurface& s, const Tolerances& tol) {
  // Square diagonals form disjoint 4-cycles (each vertex lies on exactly
  // two squares). Take the cycle through the lowest vertex id.
  std::map<int, std::vector<std::pair<int, int>>> diag;  // v -> (partner, square)
  for (const Face& f : s.faces) {
    if (f.shape != "square") continue;
    diag[f.vertices[0]].push_back({f.vertices[2], f.id});
    diag[f.vertices[2]].push_back({f.vertices[0], f.id});
    diag[f.vertices[1]].push_back({f.vertices[3], f.id});
    diag[f.vertices[3]].push_back({f.vertices[1], f.id});
  }
  Acute12Frame fr;
  {
    int start = 0;
    auto& d0 = diag[start];
    std::sort(d0.begin(), d0.end());
    std::vector<int> cyc{start};
    std::vector<int> sqs;
    int prev = -1, cur = start;
    while (true) {
      auto options = diag[cur];
      std::sort(options.begin(), options.end());
      std::pair<int, int> next{-1, -1};
      for (auto& [p, sqid] : options)
        if (p != prev && (next.first < 0 || p < next.first)) next = {p, sqid};
      sqs.push_back(next.second);
      if (next.first == start) break;
      prev = cur;
      cur = next.first;
      cyc.push_back(cur);
      if (cyc.size() > 8) throw Error("acute12_frame: diagonal cycle too long");
    }
    if (cyc.size() != 4)
      throw Error("acute12_frame: expected a 4-cycle of square diagonals");
    for (int i = 0; i < 4; ++i) {
      fr.cycle[i] = cyc[i];
      fr.cycle_square[i] = sqs[i];
    }
  }

  // The two regions: components of the face adjacency graph after removing
  // the four cut squares.
  std::set<int> cut(fr.cycle_square.begin(), fr.cycle_square.end());
  std::map<int, int> comp;
  int ncomp = 0;
  for (const Face& f : s.faces) {
    if (cut.count(f.id) || comp.count(f.id)) continue;
    std::vector<int> stack{f.id};
    comp[f.id] = ncomp;
    while (!stack.empty()) {
      int g = stack.back();
      stack.pop_back();
      for (int i = 0; i < s.faces[g].size(); ++i) {
        int nb = s.twin({g, i}).face;
        if (cut.count(nb) || comp.count(nb)) continue;
        comp[nb] = ncomp;
        stack.push_back(nb);
      }
    }
    ncomp++;
  }
  if (ncomp != 2)
    throw Error("acute12_frame: cycle does not split the surface in two");
  for (auto& [fid, c] : comp) fr.region_faces[c].push_back(fid);
  for (auto& v : fr.region_faces) std::sort(v.begin(), v.end());

  auto region_of_vertex = [&](int v) {
    int r = -1;
    for (const FanEntryRef& fe : s.vertices[v].fan) {
      auto it = comp.find(fe.face);
      if (it == comp.end()) continue;
      if (r >= 0 && r != it->second) return -1;  // touches both regions
      r = it->second;
    }
    return r;
  };

  // Flanking vertices: the common neighbors of consecutive cycle vertices,
  // alternating region 0 (a, c) and region 1 (b, d).
  for (int i = 0; i < 4; ++i) {
    int x = fr.cycle[i], y = fr.cycle[(i + 1) % 4];
    int want = i % 2 == 0 ? 0 : 1;
    int pick = -1;
    for (int v : s.neighbors(x)) {
      if (!s.adjacent(v, y)) continue;
      if (region_of_vertex(v) == want) pick = v;
    }
    if (pick < 0) throw Error("acute12_frame: flanking vertex not found");
    fr.named[i] = pick;
  }

  // Triangles at each cycle vertex, one per region.
  for (int i = 0; i < 4; ++i) {
    fr.cycle_triangle[i] = {-1, -1};
    for (const FanEntryRef& fe : s.vertices[fr.cycle[i]].fan) {
      if (s.faces[fe.face].shape != "triangle") continue;
      auto it = comp.find(fe.face);
      if (it == comp.end()) continue;
      if (fr.cycle_triangle[i][it->second] >= 0)
        throw Error("acute12_frame: ambiguous cycle triangle");
      fr.cycle_triangle[i][it->second] = fe.face;
    }
    if (fr.cycle_triangle[i][0] < 0 || fr.cycle_triangle[i][1] < 0)
      throw Error("acute12_frame: missing cycle triangle");
  }

  // Points a*..d* on the diagonals: the ray from named[i] at angle pi/6
  // from the ray towards cycle[i], rotated towards cycle[i+1], meets the
  // diagonal inside the square.
  for (int i = 0; i < 4; ++i) {
    const Face& sq = s.faces[fr.cycle_square[i]];
    Vec2 pa = sq.chart[sq.corner_of(fr.named[i])];
    Vec2 px = sq.chart[sq.corner_of(fr.cycle[i])];
    Vec2 py = sq.chart[sq.corner_of(fr.cycle[(i + 1) % 4])];
    Vec2 u1 = normalized(px - pa), u2 = normalized(py - pa);
    double sign = cross(u1, u2) > 0 ? 1.0 : -1.0;
    Vec2 dir = rotate(u1, sign * kPi / 6.0);
    // Solve pa + t dir = px + u (py - px).
    double denom = cross(dir, py - px);
    if (std::abs(denom) < 1e-12)
      throw Error("acute12_frame: degenerate star ray");
    double t = cross(px - pa, py - px) / denom;
    Vec2 hit = pa + t * dir;
    SurfacePoint star = canonical_point(s, sq.id, hit, tol.eps_len);
    if (star.kind != SurfacePoint::Kind::Face)
      throw Error("acute12_frame: star point left the square interior");
    fr.star[i] = star;
  }
  return fr;
}

GeodesicTriangulation construct_acute12(const PolyhedralSurface& s,
                                        const Tolerances& tol) {
  Acute12Frame fr = acute12_frame(s, tol);

  std::vector<SurfacePoint> verts;
  for (int i = 0; i < 4; ++i) verts.push_back(SurfacePoint::vertex(fr.named[i]));
  for (int i = 0; i < 4; ++i) verts.push_back(fr.star[i]);

  // The square both named vertices of a region share (their diagonal face).
  auto common_square = [&](int va, int vb) {
    for (const FanEntryRef& fa : s.vertices[va].fan) {
      if (s.faces[fa.face].shape != "square") continue;
      for (const FanEntryRef& fb : s.vertices[vb].fan)
        if (fa.face == fb.face) return fa.face;
    }
    throw Error("construct_acute12: no common square");
  };
  auto tri_at = [&](int cycle_pos, int region) {
    return fr.cycle_triangle[cycle_pos][region];
  };

  std::vector<EdgeSpec> edges = {
      {0, 4, fr.cycle_square[0]},      // a a*
      {1, 5, fr.cycle_square[1]},      // b b*
      {2, 6, fr.cycle_square[2]},      // c c*
      {3, 7, fr.cycle_square[3]},      // d d*
      {0, 5, tri_at(1, 0)},            // a b*
      {1, 6, tri_at(2, 1)},            // b c*
      {2, 7, tri_at(3, 0)},            // c d*
      {3, 4, tri_at(0, 1)},            // d a*
      {1, 4, tri_at(1, 1)},            // b a*
      {2, 5, tri_at(2, 0)},            // c b*
      {3, 6, tri_at(3, 1)},            // d c*
      {0, 7, tri_at(0, 0)},            // a d*
      {4, 5, tri_at(1, 1)},            // a* b*  (region-1 tie)
      {5, 6, tri_at(2, 0)},            // b* c*  (region-0 tie)
      {6, 7, tri_at(3, 1)},            // c* d*
      {7, 4, tri_at(0, 0)},            // d* a*
      {0, 2, common_square(fr.named[0], fr.named[2])},  // a c
      {1, 3, common_square(fr.named[1], fr.named[3])},  // b d
  };
  std::vector<std::array<int, 3>> tris = {
      {4, 0, 5}, {4, 5, 1}, {4, 1, 3}, {4, 3, 7}, {4, 7, 0}, {5, 1, 6},
      {5, 6, 2}, {5, 2, 0}, {6, 2, 7}, {6, 7, 3}, {6, 3, 1}, {7, 2, 0}};
  return resolve_triangulation(s, verts, edges, tris, 8, tol);
}

// ---------------------------------------------------------------------------
// Corner angles and the verifier

namespace {

// Witness a corner's wedge by a point slightly along the geodesic from the
// corner to the arc-length midpoint of the opposite edge; halve the
// parameter until the witness direction is strictly inside a wedge.
double corner_angle_at(const PolyhedralSurface& s,
                       const GeodesicTriangulation& T, int tri, int vertex,
                       const Tolerances& tol) {
  const auto& eids = T.triangles[tri];
  const TriEdge* incident[2] = {nullptr, nullptr};
  const TriEdge* opposite = nullptr;
  int k = 0;
  for (int e : eids) {
    const TriEdge& te = T.edges[e];
    if (te.a == vertex || te.b == vertex) {
      if (k >= 2) throw Error("corner_angle: malformed triangle");
      incident[k++] = &te;
    } else {
      opposite = &te;
    }
  }
  if (k != 2 || !opposite) throw Error("corner_angle: malformed triangle");

  const SurfacePoint& corner = T.vertices[vertex];
  SurfacePoint midpoint =
      point_at_arc(s, opposite->geo, 0.5 * opposite->geo.length, tol.eps_len);
  auto medians = shortest_geodesics(s, corner, midpoint, 8, tol);
  if (medians.empty()) throw Error("corner_angle: no median geodesic");
  const GeodesicSegment& median = medians.front();

  double param = 0.01;
  for (int attempt = 0; attempt < 40; ++attempt) {
    SurfacePoint witness =
        point_at_arc(s, median, param * median.length, tol.eps_len);
    try {
      return interior_angle(s, incident[0]->geo, incident[1]->geo, corner,
                            witness, tol);
    } catch (const Error&) {
      param *= 0.5;
    }
  }
  throw Error("corner_angle: witness construction failed");
}

}  // namespace

std::vector<CornerAngle> corner_angles(const PolyhedralSurface& s,
                                       const GeodesicTriangulation& T,
                                       const Tolerances& tol) {
  std::vector<CornerAngle> out;
  for (size_t t = 0; t < T.triangles.size(); ++t) {
    auto verts = T.triangle_vertices(int(t));
    for (int v : verts)
      out.push_back({int(t), v, corner_angle_at(s, T, int(t), v, tol)});
  }
  return out;
}

VerificationReport verify(const PolyhedralSurface& s,
                          const GeodesicTriangulation& T,
                          const Tolerances& tol) {
  VerificationReport R;
  auto fail = [&](const std::string& msg) { R.failures.push_back(msg); };

  // (1) Complex validity.
  R.complex_ok = true;
  int V = int(T.vertices.size()), E = int(T.edges.size()),
      F = int(T.triangles.size());
  for (size_t i = 0; i < T.vertices.size() && R.complex_ok; ++i)
    for (size_t j = i + 1; j < T.vertices.size(); ++j)
      if (points_equal(s, T.vertices[i], T.vertices[j], tol.eps_len)) {
        fail("duplicate triangulation vertices");
        R.complex_ok = false;
      }
  std::set<std::pair<int, int>> pairs;
  for (const TriEdge& e : T.edges) {
    if (e.a < 0 || e.b < 0 || e.a >= V || e.b >= V || e.a == e.b) {
      fail("edge with invalid endpoints");
      R.complex_ok = false;
      continue;
    }
    auto key = std::minmax(e.a, e.b);
    if (!pairs.insert({key.first, key.second}).second) {
      fail("parallel edges between the same vertex pair");
      R.complex_ok = false;
    }
  }
  std::vector<int> edge_use(E, 0);
  for (size_t t = 0; t < T.triangles.size(); ++t) {
    std::set<int> distinct(T.triangles[t].begin(), T.triangles[t].end());
    if (distinct.size() != 3) {
      fail("triangle " + std::to_string(t) + " repeats an edge");
      R.complex_ok = false;
      continue;
    }
    try {
      T.triangle_vertices(int(t));
    } catch (const Error& err) {
      fail(err.what());
      R.complex_ok = false;
    }
    for (int e : T.triangles[t])
      if (e >= 0 && e < E) edge_use[e]++;
  }
  for (int e = 0; e < E; ++e)
    if (edge_use[e] != 2) {
      fail("edge " + std::to_string(e) + " lies in " +
           std::to_string(edge_use[e]) + " triangles (expected 2)");
      R.complex_ok = false;
    }
  if (V - E + F != 2) {
    fail("Euler characteristic V-E+F = " + std::to_string(V - E + F));
    R.complex_ok = false;
  }
  if (2 * E != 3 * F) {
    fail("not a closed triangulation: 2E != 3F");
    R.complex_ok = false;
  }
  if (!R.complex_ok) return R;

  // (2) Pairwise edge intersections.
  R.intersections_ok = true;
  for (int i = 0; i < E; ++i)
    for (int j = i + 1; j < E; ++j) {
      const TriEdge& ei = T.edges[i];
      const TriEdge& ej = T.edges[j];
      bool share = ei.a == ej.a || ei.a == ej.b || ei.b == ej.a ||
                   ei.b == ej.b;
      Intersection isec = segments_intersect(s, ei.geo, ej.geo, tol);
      bool ok = share ? isec.kind == IntersectKind::SharedEndpoint
                      : isec.kind == IntersectKind::Disjoint;
      if (!ok) {
        fail("edges " + std::to_string(i) + " and " + std::to_string(j) +
             " intersect improperly");
        R.intersections_ok = false;
      }
    }

  // (3) Corner angles.
  R.angles_ok = true;
  try {
    R.angles = corner_angles(s, T, tol);
  } catch (const Error& err) {
    fail(err.what());
    R.angles_ok = false;
    return R;
  }

  // (4) Per-vertex angle closure.
  R.closure_ok = true;
  std::vector<double> at_vertex(V, 0.0);
  for (const CornerAngle& ca : R.angles) at_vertex[ca.vertex] += ca.angle;
  for (int v = 0; v < V; ++v) {
    double want = total_angle_at(s, T.vertices[v]);
    if (std::abs(at_vertex[v] - want) > tol.eps_ang) {
      fail("vertex " + std::to_string(v) + " angle closure off by " +
           std::to_string(at_vertex[v] - want));
      R.closure_ok = false;
    }
  }

  // (5) Gauss-Bonnet ledger.
  R.gauss_bonnet_ok = true;
  R.triangle_excess.assign(F, 0.0);
  for (const CornerAngle& ca : R.angles)
    R.triangle_excess[ca.triangle] += ca.angle;
  R.total_excess = 0.0;
  for (int t = 0; t < F; ++t) {
    R.triangle_excess[t] -= kPi;
    R.total_excess += R.triangle_excess[t];
    double k = R.triangle_excess[t] / (kPi / 3.0);
    double rounded = std::round(k);
    if (rounded < -0.5 || std::abs(k - rounded) * (kPi / 3.0) > tol.eps_ang) {
      fail("triangle " + std::to_string(t) +
           " excess is not a multiple of pi/3");
      R.gauss_bonnet_ok = false;
    }
  }
  double vertex_defects = 0.0;
  for (const SurfacePoint& p : T.vertices)
    vertex_defects += 2.0 * kPi - total_angle_at(s, p);
  if (std::abs(R.total_excess - (4.0 * kPi - vertex_defects)) > 1e-8) {
    fail("Gauss-Bonnet ledger does not balance");
    R.gauss_bonnet_ok = false;
  }

  // (6) Classification.
  double max_angle = 0.0;
  for (const CornerAngle& ca : R.angles)
    max_angle = std::max(max_angle, ca.angle);
  R.margin = kPi / 2.0 - max_angle;
  if (R.margin > tol.eps_ang)
    R.classification = "acute";
  else if (R.margin >= -tol.eps_ang)
    R.classification = "non-obtuse";
  else
    R.classification = "neither";
  return R;
}

}  // namespace cuboct
