#include "cuboct/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cuboct {

namespace {

// Shared edge (directed, on `from`'s side) between two glued faces.
FaceEdgeRef shared_edge(const PolyhedralSurface& s, int from, int to) {
  const Face& f = s.faces[from];
  for (int i = 0; i < f.size(); ++i) {
    FaceEdgeRef ref{from, i};
    if (s.twin(ref).face == to) return ref;
  }
  throw Error("faces " + std::to_string(from) + " and " + std::to_string(to) +
              " are not glued");
}

}  // namespace

UnfoldedChart unfold(const PolyhedralSurface& s,
                     const std::vector<int>& faces) {
  if (faces.empty()) throw Error("unfold: empty face sequence");
  for (size_t k = 2; k < faces.size(); ++k)
    if (faces[k] == faces[k - 2])
      throw Error("unfold: immediate backtrack in face sequence");
  UnfoldedChart chart;
  chart.face_sequence = faces;
  chart.placement.push_back(Iso2::identity());
  for (size_t k = 0; k + 1 < faces.size(); ++k) {
    FaceEdgeRef ref = shared_edge(s, faces[k], faces[k + 1]);
    chart.placement.push_back(
        chart.placement.back().compose(s.gluing(ref)));
    Seg2 e = s.edge_chart_segment(ref);
    chart.shared_edges.push_back(
        {chart.placement[k].apply(e.a), chart.placement[k].apply(e.b)});
  }
  return chart;
}

// ---------------------------------------------------------------------------
// Shortest geodesics

namespace {

struct Candidate {
  double length = 0.0;
  std::vector<int> faces;
  std::vector<Iso2> placements;
  std::vector<Vec2> points;  // unfolded: p0, crossings..., q
};

struct SearchContext {
  const PolyhedralSurface& s;
  const SurfacePoint& p;
  const SurfacePoint& q;
  std::vector<int> q_faces;
  int max_faces;
  Tolerances tol;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Candidate> found;
  std::vector<double> cut_lower_bounds;  // states killed by the face budget
};

// Validate the straight segment p0 -> q_img against the crossed edges; on
// success append a candidate.
void try_complete(SearchContext& ctx, const std::vector<int>& faces,
                  const std::vector<Iso2>& placements,
                  const std::vector<Seg2>& crossed, Vec2 p0, Vec2 q_img) {
  const double eps = ctx.tol.eps_len;
  double L = dist(p0, q_img);
  if (L <= eps) return;
  if (L > ctx.best + eps) return;
  Vec2 dir = q_img - p0;

  std::vector<double> s_params(crossed.size());
  std::vector<Vec2> points;
  points.push_back(p0);
  double prev_s = 0.0;
  for (size_t m = 0; m < crossed.size(); ++m) {
    Vec2 a = crossed[m].a, b = crossed[m].b;
    double denom = cross(dir, b - a);
    if (std::abs(denom) < 1e-14) return;  // parallel: no transversal crossing
    double sm = cross(a - p0, b - a) / denom;
    double um = cross(a - p0, dir) / denom;
    if (sm * L <= prev_s * L + eps) return;      // crossings must advance
    if (sm * L <= eps || sm * L >= L - eps) return;  // strictly interior of path
    double elen = dist(a, b);
    if (um * elen <= eps || um * elen >= elen - eps) return;  // vertex grazing
    prev_s = sm;
    s_params[m] = sm;
    points.push_back(p0 + sm * dir);
  }
  points.push_back(q_img);

  // Cone-point clearance: no face corner may sit on the open sub-segment
  // running through that face, except the path's own endpoints.
  for (size_t k = 0; k < faces.size(); ++k) {
    Vec2 sa = points[k], sb = points[k + 1];
    const Face& f = ctx.s.faces[faces[k]];
    for (int c = 0; c < f.size(); ++c) {
      Vec2 cimg = placements[k].apply(f.chart[c]);
      if (point_segment_distance(cimg, sa, sb) >= eps) continue;
      bool at_p = k == 0 && dist(cimg, p0) < eps;
      bool at_q = k + 1 == faces.size() && dist(cimg, q_img) < eps;
      if (!at_p && !at_q) return;
    }
  }

  Candidate cand;
  cand.length = L;
  cand.faces = faces;
  cand.placements = placements;
  cand.points = std::move(points);
  ctx.best = std::min(ctx.best, L);
  ctx.found.push_back(std::move(cand));
}

void search(SearchContext& ctx, std::vector<int>& faces,
            std::vector<Iso2>& placements, std::vector<Seg2>& crossed,
            Vec2 p0, int entry_index, const std::optional<DirCone>& cone) {
  int fk = faces.back();
  const Face& face = ctx.s.faces[fk];

  if (std::find(ctx.q_faces.begin(), ctx.q_faces.end(), fk) !=
      ctx.q_faces.end()) {
    Vec2 q_img = placements.back().apply(point_in_face(ctx.s, ctx.q, fk));
    try_complete(ctx, faces, placements, crossed, p0, q_img);
  }

  for (int i = 0; i < face.size(); ++i) {
    if (i == entry_index) continue;
    Seg2 e = ctx.s.edge_chart_segment({fk, i});
    Seg2 eimg{placements.back().apply(e.a), placements.back().apply(e.b)};
    auto edge_cone = cone_of_segment(eimg.a - p0, eimg.b - p0, ctx.tol.eps_len);
    if (!edge_cone) continue;
    std::optional<DirCone> next_cone =
        cone ? intersect_cones(*cone, *edge_cone) : edge_cone;
    if (!next_cone) continue;
    auto window =
        clip_segment_to_cone(eimg.a - p0, eimg.b - p0, *next_cone);
    if (!window) continue;
    double lb = point_segment_distance({0, 0}, window->a, window->b);
    if (lb > ctx.best + ctx.tol.eps_len) continue;
    if (int(faces.size()) >= ctx.max_faces) {
      ctx.cut_lower_bounds.push_back(lb);
      continue;
    }
    FaceEdgeRef tw = ctx.s.twin({fk, i});
    faces.push_back(tw.face);
    placements.push_back(placements.back().compose(ctx.s.gluing({fk, i})));
    crossed.push_back(eimg);
    search(ctx, faces, placements, crossed, p0, tw.index, next_cone);
    faces.pop_back();
    placements.pop_back();
    crossed.pop_back();
  }
}

GeodesicSegment make_segment(const PolyhedralSurface& s, const Candidate& c,
                             const SurfacePoint& p, const SurfacePoint& q,
                             double eps) {
  GeodesicSegment g;
  g.from = p;
  g.to = q;
  g.faces = c.faces;
  g.length = c.length;
  for (size_t k = 0; k < c.faces.size(); ++k) {
    Iso2 inv = c.placements[k].inverse();
    g.local_segments.push_back(
        {inv.apply(c.points[k]), inv.apply(c.points[k + 1])});
  }
  for (size_t m = 0; m + 1 < c.faces.size(); ++m) {
    Vec2 local = g.local_segments[m].b;
    SurfacePoint cp = canonical_point(s, c.faces[m], local, eps);
    if (cp.kind != SurfacePoint::Kind::Edge)
      throw Error("internal: crossing did not canonicalize to an edge point");
    g.crossings.push_back(cp);
  }
  return g;
}

bool same_trace(const PolyhedralSurface& s, const GeodesicSegment& a,
                const GeodesicSegment& b, double eps) {
  if (a.crossings.size() != b.crossings.size()) return false;
  if (!points_equal(s, a.from, b.from, eps) ||
      !points_equal(s, a.to, b.to, eps))
    return false;
  for (size_t i = 0; i < a.crossings.size(); ++i)
    if (!points_equal(s, a.crossings[i], b.crossings[i], eps)) return false;
  return true;
}

}  // namespace

std::vector<GeodesicSegment> shortest_geodesics(const PolyhedralSurface& s,
                                                const SurfacePoint& p,
                                                const SurfacePoint& q,
                                                int max_faces,
                                                const Tolerances& tol) {
  if (max_faces < 1) throw Error("shortest_geodesics: max_faces must be >= 1");
  if (points_equal(s, p, q, tol.eps_len))
    throw Error("shortest_geodesics: identical endpoints");

  const double inf = std::numeric_limits<double>::infinity();
  SearchContext ctx{s, p, q, owning_faces(s, q), max_faces, tol, inf, {}, {}};
  for (int f0 : owning_faces(s, p)) {
    Vec2 p0 = point_in_face(s, p, f0);
    std::vector<int> faces{f0};
    std::vector<Iso2> placements{Iso2::identity()};
    std::vector<Seg2> crossed;
    search(ctx, faces, placements, crossed, p0, -1, std::nullopt);
  }

  if (ctx.found.empty()) {
    if (!ctx.cut_lower_bounds.empty())
      throw MaxFacesError(
          "shortest_geodesics: max_faces too small to connect the points");
    throw Error("shortest_geodesics: no geodesic found");
  }
  for (double lb : ctx.cut_lower_bounds)
    if (lb <= ctx.best + tol.eps_len)
      throw MaxFacesError(
          "shortest_geodesics: max_faces too small to certify the tie set");

  std::vector<GeodesicSegment> segs;
  for (const Candidate& c : ctx.found)
    if (c.length <= ctx.best + tol.eps_len)
      segs.push_back(make_segment(s, c, p, q, tol.eps_len));
  std::sort(segs.begin(), segs.end(),
            [](const GeodesicSegment& a, const GeodesicSegment& b) {
              if (std::abs(a.length - b.length) > 1e-15)
                return a.length < b.length;
              return a.faces < b.faces;
            });
  std::vector<GeodesicSegment> out;
  for (const GeodesicSegment& g : segs) {
    bool dup = false;
    for (const GeodesicSegment& h : out)
      if (same_trace(s, g, h, tol.eps_len)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(g);
  }
  return out;
}

GeodesicSegment geodesic_between(const PolyhedralSurface& s,
                                 const SurfacePoint& p, const SurfacePoint& q,
                                 int witness_face, int max_faces,
                                 const Tolerances& tol) {
  auto segs = shortest_geodesics(s, p, q, max_faces, tol);
  std::vector<GeodesicSegment> matches;
  for (const GeodesicSegment& g : segs)
    if (std::find(g.faces.begin(), g.faces.end(), witness_face) !=
        g.faces.end())
      matches.push_back(g);
  if (matches.empty())
    throw Error("geodesic_between: witness face " +
                std::to_string(witness_face) + " matches no shortest segment");
  if (matches.size() > 1)
    throw Error("geodesic_between: witness face " +
                std::to_string(witness_face) + " is ambiguous (" +
                std::to_string(matches.size()) + " ties traverse it)");
  return matches.front();
}

// ---------------------------------------------------------------------------
// Directions and angles

double point_phi(const PolyhedralSurface& s, const SurfacePoint& p, int face,
                 Vec2 dir) {
  dir = normalized(dir);
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex:
      return s.vertex_phi(p.id, face, dir);
    case SurfacePoint::Kind::Edge: {
      const EdgeInfo& e = s.edges[p.id];
      FaceEdgeRef canon = e.half[0];
      Seg2 ref_seg = s.edge_chart_segment(canon);
      Vec2 edge_dir = normalized(ref_seg.b - ref_seg.a);
      if (face == canon.face) return ccw_angle(edge_dir, dir);
      if (face == e.half[1].face) {
        Vec2 mapped = s.gluing(canon).apply_dir(dir);
        return ccw_angle(edge_dir, mapped);
      }
      throw Error("point_phi: face does not own the edge point");
    }
    case SurfacePoint::Kind::Face:
      if (face != p.id) throw Error("point_phi: face does not own the point");
      return wrap_angle(angle_of(dir));
  }
  throw Error("point_phi: bad kind");
}

std::pair<int, Vec2> point_direction(const PolyhedralSurface& s,
                                     const SurfacePoint& p, double phi) {
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex:
      return s.vertices[p.id].fan.empty()
                 ? throw Error("point_direction: empty fan")
                 : s.vertex_direction(p.id, phi);
    case SurfacePoint::Kind::Edge: {
      const EdgeInfo& e = s.edges[p.id];
      FaceEdgeRef canon = e.half[0];
      Seg2 ref_seg = s.edge_chart_segment(canon);
      Vec2 edge_dir = normalized(ref_seg.b - ref_seg.a);
      phi = wrap_angle(phi, 2.0 * kPi);
      Vec2 dir = rotate(edge_dir, phi);
      if (phi <= kPi) return {canon.face, dir};
      return {e.half[1].face, s.gluing(canon).inverse().apply_dir(dir)};
    }
    case SurfacePoint::Kind::Face:
      return {p.id, rotate({1.0, 0.0}, phi)};
  }
  throw Error("point_direction: bad kind");
}

DirectionCoordinate direction_at(const PolyhedralSurface& s,
                                 const GeodesicSegment& seg, bool at_from,
                                 const Tolerances& tol) {
  (void)tol;
  DirectionCoordinate d;
  d.base = at_from ? seg.from : seg.to;
  int face = at_from ? seg.faces.front() : seg.faces.back();
  const Seg2& ls =
      at_from ? seg.local_segments.front() : seg.local_segments.back();
  Vec2 dir = at_from ? ls.b - ls.a : ls.a - ls.b;
  d.phi = point_phi(s, d.base, face, dir);
  d.total = total_angle_at(s, d.base);
  return d;
}

double angle_between(const PolyhedralSurface& s, const DirectionCoordinate& d1,
                     const DirectionCoordinate& d2, const Tolerances& tol) {
  if (!points_equal(s, d1.base, d2.base, tol.eps_len))
    throw Error("angle_between: mismatched base points");
  double theta = d1.total;
  double delta = wrap_angle(d2.phi - d1.phi, theta);
  return std::min(delta, theta - delta);
}

namespace {

double outgoing_phi(const PolyhedralSurface& s, const GeodesicSegment& seg,
                    const SurfacePoint& endpoint, const Tolerances& tol) {
  if (points_equal(s, seg.from, endpoint, tol.eps_len))
    return direction_at(s, seg, true, tol).phi;
  if (points_equal(s, seg.to, endpoint, tol.eps_len))
    return direction_at(s, seg, false, tol).phi;
  throw Error("segment does not end at the requested point");
}

}  // namespace

double interior_angle(const PolyhedralSurface& s, const GeodesicSegment& seg1,
                      const GeodesicSegment& seg2, const SurfacePoint& common,
                      const SurfacePoint& witness, const Tolerances& tol) {
  double theta = total_angle_at(s, common);
  double phi1 = outgoing_phi(s, seg1, common, tol);
  double phi2 = outgoing_phi(s, seg2, common, tol);

  auto wsegs = shortest_geodesics(s, common, witness, 8, tol);
  if (wsegs.size() != 1)
    throw Error("interior_angle: witness direction is ambiguous (" +
                std::to_string(wsegs.size()) + " shortest paths)");
  double phiw = outgoing_phi(s, wsegs.front(), common, tol);

  double delta = wrap_angle(phi2 - phi1, theta);
  double w = wrap_angle(phiw - phi1, theta);
  if (w > tol.eps_ang && w < delta - tol.eps_ang) return delta;
  if (w > delta + tol.eps_ang && w < theta - tol.eps_ang) return theta - delta;
  throw Error("interior_angle: witness lies on a wedge boundary");
}

SurfacePoint point_at_arc(const PolyhedralSurface& s,
                          const GeodesicSegment& seg, double arc,
                          double eps_len) {
  if (arc < -eps_len || arc > seg.length + eps_len)
    throw Error("point_at_arc: arc out of range");
  if (arc <= eps_len) return seg.from;
  if (arc >= seg.length - eps_len) return seg.to;
  double acc = 0.0;
  for (size_t k = 0; k < seg.faces.size(); ++k) {
    const Seg2& ls = seg.local_segments[k];
    double len = ls.length();
    if (arc <= acc + len || k + 1 == seg.faces.size()) {
      double t = len > 0 ? (arc - acc) / len : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      return canonical_point(s, seg.faces[k], ls.a + t * (ls.b - ls.a),
                             eps_len);
    }
    acc += len;
  }
  throw Error("point_at_arc: internal");
}

std::vector<FanEntry> vertex_fan(const PolyhedralSurface& s, int u,
                                 const Tolerances& tol) {
  if (u < 0 || u >= s.vertex_count()) throw Error("vertex_fan: bad vertex");
  std::vector<FanEntry> fan;
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (v == u) continue;
    for (GeodesicSegment& g :
         shortest_geodesics(s, SurfacePoint::vertex(u),
                            SurfacePoint::vertex(v), 8, tol)) {
      FanEntry fe;
      fe.phi = direction_at(s, g, true, tol).phi;
      fe.target = v;
      fe.seg = std::move(g);
      fan.push_back(std::move(fe));
    }
  }
  std::sort(fan.begin(), fan.end(), [](const FanEntry& a, const FanEntry& b) {
    return a.phi != b.phi ? a.phi < b.phi : a.target < b.target;
  });
  double cone = s.vertices[u].cone_angle;
  for (size_t i = 0; i < fan.size(); ++i) {
    double next = fan[(i + 1) % fan.size()].phi;
    fan[i].gap_after = wrap_angle(next - fan[i].phi, cone);
    if (fan.size() == 1) fan[i].gap_after = cone;
  }
  return fan;
}

// ---------------------------------------------------------------------------
// Pairwise intersection

Intersection segments_intersect(const PolyhedralSurface& s,
                                const GeodesicSegment& s1,
                                const GeodesicSegment& s2,
                                const Tolerances& tol) {
  const double eps = tol.eps_len;
  // Identical traces (either orientation) overlap.
  {
    GeodesicSegment rev = s2;
    std::reverse(rev.crossings.begin(), rev.crossings.end());
    std::swap(rev.from, rev.to);
    if (same_trace(s, s1, s2, eps) || same_trace(s, s1, rev, eps))
      return {IntersectKind::Overlap, {}};
  }

  bool overlap = false;
  std::vector<SurfacePoint> crossings, shared;
  auto is_endpoint = [&](const GeodesicSegment& g, const SurfacePoint& pt) {
    return points_equal(s, g.from, pt, eps) || points_equal(s, g.to, pt, eps);
  };
  // Endpoint coincidences are shared endpoints even when the two segments
  // approach the point through different faces.
  for (const SurfacePoint* a : {&s1.from, &s1.to})
    for (const SurfacePoint* b : {&s2.from, &s2.to})
      if (points_equal(s, *a, *b, eps)) shared.push_back(*a);
  for (size_t k1 = 0; k1 < s1.faces.size(); ++k1) {
    for (size_t k2 = 0; k2 < s2.faces.size(); ++k2) {
      if (s1.faces[k1] != s2.faces[k2]) continue;
      const Seg2& a = s1.local_segments[k1];
      const Seg2& b = s2.local_segments[k2];
      SegIntersection isec = segment_intersection(a.a, a.b, b.a, b.b, eps);
      if (isec.kind == SegIntersection::Kind::Overlap) {
        double span = (isec.s1 - isec.s0) * dist(a.a, a.b);
        if (span > eps) {
          overlap = true;
          continue;
        }
        isec.kind = SegIntersection::Kind::Point;
        isec.point = a.a + 0.5 * (isec.s0 + isec.s1) * (a.b - a.a);
      }
      if (isec.kind != SegIntersection::Kind::Point) continue;
      SurfacePoint pt = canonical_point(s, s1.faces[k1], isec.point, eps);
      bool e1 = is_endpoint(s1, pt), e2 = is_endpoint(s2, pt);
      auto& bucket = (e1 && e2) ? shared : crossings;
      bool dup = false;
      for (const SurfacePoint& q : bucket)
        if (points_equal(s, q, pt, eps)) dup = true;
      if (!dup) bucket.push_back(pt);
    }
  }
  if (overlap) return {IntersectKind::Overlap, {}};
  if (!crossings.empty()) return {IntersectKind::Crossing, crossings};
  if (!shared.empty()) return {IntersectKind::SharedEndpoint, shared};
  return {IntersectKind::Disjoint, {}};
}

// ---------------------------------------------------------------------------
// Ray tracing

TracedPath trace_ray(const PolyhedralSurface& s, const SurfacePoint& start,
                     const DirectionCoordinate& dir, double length,
                     const Tolerances& tol) {
  if (!points_equal(s, dir.base, start, tol.eps_len))
    throw Error("trace_ray: direction is not based at the start point");
  if (length < 0.0) throw Error("trace_ray: negative length");

  auto [face, d] = point_direction(s, start, dir.phi);
  Vec2 x = point_in_face(s, start, face);
  TracedPath path;
  if (length <= tol.eps_len) {
    path.faces = {face};
    path.local_segments = {{x, x}};
    path.endpoint = start;
    return path;
  }

  double remaining = length;
  int entry = -1;
  const int kMaxSteps = 256;
  for (int step = 0; step < kMaxSteps; ++step) {
    const Face& f = s.faces[face];
    // First boundary crossing along the ray.
    double best_t = std::numeric_limits<double>::infinity();
    int best_i = -1;
    double best_u = 0.0;
    for (int i = 0; i < f.size(); ++i) {
      if (i == entry) continue;
      Vec2 a = f.chart[i], b = f.chart[(i + 1) % f.size()];
      double denom = cross(d, b - a);
      if (std::abs(denom) < 1e-14) continue;
      double t = cross(a - x, b - a) / denom;
      double u = cross(a - x, d) / denom;
      if (t <= tol.eps_len) continue;
      if (u < -tol.eps_len || u > 1.0 + tol.eps_len) continue;
      if (t < best_t) {
        best_t = t;
        best_i = i;
        best_u = u;
      }
    }
    if (best_i < 0 || best_t >= remaining - tol.eps_len) {
      // Ends inside this face (or exactly on its boundary).
      Vec2 end = x + remaining * d;
      path.faces.push_back(face);
      path.local_segments.push_back({x, end});
      path.length += remaining;
      path.endpoint = canonical_point(s, face, end, tol.eps_len);
      return path;
    }
    Vec2 hit = x + best_t * d;
    double elen = dist(f.chart[best_i], f.chart[(best_i + 1) % f.size()]);
    if (best_u * elen < tol.eps_len || (1.0 - best_u) * elen < tol.eps_len) {
      int corner =
          best_u * elen < tol.eps_len ? best_i : (best_i + 1) % f.size();
      throw ConePointHit(path.length + best_t, f.vertices[corner]);
    }
    path.faces.push_back(face);
    path.local_segments.push_back({x, hit});
    path.length += best_t;
    remaining -= best_t;
    FaceEdgeRef ref{face, best_i};
    FaceEdgeRef tw = s.twin(ref);
    Iso2 into_twin = s.gluing(ref).inverse();
    x = into_twin.apply(hit);
    d = into_twin.apply_dir(d);
    face = tw.face;
    entry = tw.index;
  }
  throw Error("trace_ray: step limit exceeded");
}

}  // namespace cuboct
