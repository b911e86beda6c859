#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include "cuboct/minimality.hpp"

// Enumeration of the equatorial 5-cycles (the C5 of a 10-triangle acute
// candidate) and the apex-infeasibility certificate: the set of apex
// positions compatible with all acute base angles is computed exactly as a
// union of convex chart polygons (funnel propagation from each cycle
// vertex) and must land inside a circle of Thales over some cycle edge.

namespace cuboct {

using nlohmann::json;

namespace {

GeodesicSegment reverse_segment(const GeodesicSegment& g) {
  GeodesicSegment r = g;
  std::swap(r.from, r.to);
  std::reverse(r.faces.begin(), r.faces.end());
  std::reverse(r.local_segments.begin(), r.local_segments.end());
  for (Seg2& seg : r.local_segments) std::swap(seg.a, seg.b);
  std::reverse(r.crossings.begin(), r.crossings.end());
  return r;
}

struct PairData {
  int dist = 0;
  std::vector<GeodesicSegment> ties;  // oriented min(u,v) -> max(u,v)
  bool square_diag = false;
};

struct PairAtlas {
  const PolyhedralSurface& s;
  std::map<std::pair<int, int>, PairData> pairs;

  PairAtlas(const PolyhedralSurface& surf, const Tolerances& tol) : s(surf) {
    for (int u = 0; u < s.vertex_count(); ++u)
      for (int v = u + 1; v < s.vertex_count(); ++v) {
        PairData pd;
        pd.dist = skeleton_distance(s, u, v);
        pd.ties = shortest_geodesics(s, SurfacePoint::vertex(u),
                                     SurfacePoint::vertex(v), 8, tol);
        pd.square_diag = pd.dist == 2 && pd.ties.size() == 1;
        pairs[{u, v}] = std::move(pd);
      }
  }

  const PairData& at(int u, int v) const {
    return pairs.at(std::minmax(u, v));
  }

  // Oriented tie: from u to v, rank r in the canonical (min->max) order.
  GeodesicSegment oriented(int u, int v, int rank) const {
    const PairData& pd = at(u, v);
    const GeodesicSegment& g = pd.ties.at(rank);
    return u < v ? g : reverse_segment(g);
  }

  int tie_rank(int u, int v, const GeodesicSegment& g, double eps) const {
    const PairData& pd = at(u, v);
    GeodesicSegment probe = u < v ? g : reverse_segment(g);
    for (size_t r = 0; r < pd.ties.size(); ++r) {
      const GeodesicSegment& t = pd.ties[r];
      if (t.crossings.size() != probe.crossings.size()) continue;
      bool same = true;
      for (size_t i = 0; i < t.crossings.size() && same; ++i)
        same = points_equal(s, t.crossings[i], probe.crossings[i], eps);
      if (same) return int(r);
    }
    throw Error("tie_rank: geodesic not found among the pair's ties");
  }
};

// Compact key for orbit grouping: vertices plus tie ranks, canonicalized
// over the 10 dihedral relabelings of the cycle.
using ConfigKey = std::array<int, 10>;

ConfigKey config_key(const PairAtlas& atlas, const std::array<int, 5>& verts,
                     const std::array<GeodesicSegment, 5>& edges, double eps) {
  ConfigKey best{};
  bool first = true;
  for (int refl = 0; refl < 2; ++refl) {
    for (int rot = 0; rot < 5; ++rot) {
      ConfigKey key{};
      for (int i = 0; i < 5; ++i) {
        int pos = refl ? (rot + 5 - i) % 5 : (rot + i) % 5;
        key[i] = verts[pos];
        // Edge following position i in the relabeled cycle.
        int epos = refl ? (rot + 4 - i + 5) % 5 : (rot + i) % 5;
        key[5 + i] = atlas.tie_rank(verts[epos], verts[(epos + 1) % 5],
                                    edges[epos], eps);
      }
      if (first || key < best) {
        best = key;
        first = false;
      }
    }
  }
  return best;
}

}  // namespace

std::vector<std::vector<C5Configuration>> enumerate_c5(
    const PolyhedralSurface& s, const Tolerances& tol, json* stats) {
  PairAtlas atlas(s, tol);
  const int n = s.vertex_count();

  auto consecutive_ok = [&](int u, int v) {
    const PairData& pd = atlas.at(u, v);
    if (pd.dist == 1) return true;
    if (pd.dist == 2 && !pd.square_diag) return true;  // bent pair
    return false;  // square diagonals and distance-3 pairs are excluded
  };

  int cycles = 0, configs_checked = 0, angle_rejected = 0, grazing = 0,
      crossing_rejected = 0;
  std::vector<C5Configuration> survivors;

  std::array<int, 5> verts{};
  std::function<void(int)> extend = [&](int depth) {
    if (depth == 5) {
      if (!consecutive_ok(verts[4], verts[0])) return;
      // Non-consecutive cycle vertices must not be skeleton-adjacent.
      for (int i = 0; i < 5; ++i)
        if (atlas.at(verts[i], verts[(i + 2) % 5]).dist == 1) return;
      cycles++;

      // Tie choices per cycle edge.
      std::array<int, 5> tie_count{};
      for (int i = 0; i < 5; ++i)
        tie_count[i] = int(atlas.at(verts[i], verts[(i + 1) % 5]).ties.size());
      std::array<int, 5> choice{};
      std::function<void(int)> pick = [&](int e) {
        if (e == 5) {
          configs_checked++;
          C5Configuration cfg;
          cfg.verts = verts;
          for (int i = 0; i < 5; ++i)
            cfg.edges[i] =
                atlas.oriented(verts[i], verts[(i + 1) % 5], choice[i]);

          // Cycle angles: both wedges strictly between 2pi/3 and pi.
          for (int i = 0; i < 5; ++i) {
            double cone = s.vertices[verts[i]].cone_angle;
            double out = direction_at(s, cfg.edges[i], true, tol).phi;
            double in = direction_at(s, cfg.edges[(i + 4) % 5], false, tol).phi;
            double wedge = wrap_angle(out - in, cone);
            auto k1 = snap_to_pi12(wedge, tol.snap);
            auto k2 = snap_to_pi12(cone - wedge, tol.snap);
            if (!k1 || !k2) {
              angle_rejected++;
              return;
            }
            if (*k1 == 8 || *k1 == 12 || *k2 == 8 || *k2 == 12) grazing++;
            if (*k1 < 9 || *k1 > 11 || *k2 < 9 || *k2 > 11) {
              angle_rejected++;
              return;
            }
            cfg.side_angles[i] = {*k1 * kPi / 12.0, *k2 * kPi / 12.0};
          }

          // Pairwise intersection pattern.
          for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
              bool consec = j == i + 1 || (i == 0 && j == 4);
              Intersection isec =
                  segments_intersect(s, cfg.edges[i], cfg.edges[j], tol);
              bool ok = consec ? isec.kind == IntersectKind::SharedEndpoint
                               : isec.kind == IntersectKind::Disjoint;
              if (!ok) {
                crossing_rejected++;
                return;
              }
            }
          survivors.push_back(std::move(cfg));
          return;
        }
        for (choice[e] = 0; choice[e] < tie_count[e]; ++choice[e]) pick(e + 1);
      };
      pick(0);
      return;
    }
    // Called with depth >= 1; verts[0] stays the cycle minimum and the
    // reflection is killed by verts[1] < verts[4].
    for (int v = 0; v < n; ++v) {
      bool used = false;
      for (int i = 0; i < depth; ++i) used = used || verts[i] == v;
      if (used) continue;
      if (v < verts[0]) continue;
      if (!consecutive_ok(verts[depth - 1], v)) continue;
      if (depth == 4 && verts[1] > v) continue;
      verts[depth] = v;
      extend(depth + 1);
    }
  };
  for (int v0 = 0; v0 < n; ++v0) {
    verts[0] = v0;
    extend(1);
  }

  // Group survivors into isometry orbits.
  auto group = isometry_group(s);
  std::map<ConfigKey, int> key_to_index;
  for (size_t i = 0; i < survivors.size(); ++i) {
    ConfigKey key =
        config_key(atlas, survivors[i].verts, survivors[i].edges, tol.eps_len);
    if (key_to_index.count(key))
      throw Error("enumerate_c5: duplicate configuration");
    key_to_index[key] = int(i);
  }
  std::map<ConfigKey, ConfigKey> orbit_of;  // config key -> orbit min key
  for (auto& [key, idx] : key_to_index) {
    const C5Configuration& cfg = survivors[idx];
    ConfigKey min_key = key;
    for (const auto& perm : group) {
      std::array<int, 5> iv{};
      std::array<GeodesicSegment, 5> ie;
      for (int i = 0; i < 5; ++i) iv[i] = perm[cfg.verts[i]];
      for (int i = 0; i < 5; ++i) {
        // Image edge: the tie whose crossings match the mapped crossings.
        int u = iv[i], v = iv[(i + 1) % 5];
        std::vector<SurfacePoint> mapped;
        for (const SurfacePoint& c : cfg.edges[i].crossings)
          mapped.push_back(map_point(s, perm, c));
        const PairData& pd = atlas.at(u, v);
        int rank = -1;
        for (size_t r = 0; r < pd.ties.size(); ++r) {
          const GeodesicSegment& t = pd.ties[r];
          if (t.crossings.size() != mapped.size()) continue;
          bool fwd = true, bwd = true;
          for (size_t k = 0; k < mapped.size(); ++k) {
            fwd = fwd && points_equal(s, t.crossings[k],
                                      u < v ? mapped[k]
                                            : mapped[mapped.size() - 1 - k],
                                      tol.eps_len);
            bwd = bwd && points_equal(s, t.crossings[k], mapped[k],
                                      tol.eps_len);
          }
          if (fwd || bwd) {
            rank = int(r);
            break;
          }
        }
        if (rank < 0)
          throw Error("enumerate_c5: isometry image of an edge not found");
        ie[i] = atlas.oriented(u, v, rank);
      }
      ConfigKey ikey = config_key(atlas, iv, ie, tol.eps_len);
      if (!key_to_index.count(ikey))
        throw Error("enumerate_c5: isometry image is not a survivor");
      if (ikey < min_key) min_key = ikey;
    }
    orbit_of[key] = min_key;
  }
  std::map<ConfigKey, std::vector<C5Configuration>> orbits;
  for (auto& [key, idx] : key_to_index)
    orbits[orbit_of[key]].push_back(survivors[key_to_index[key]]);

  if (stats) {
    *stats = {{"cycles_considered", cycles},
              {"configurations_checked", configs_checked},
              {"angle_rejected", angle_rejected},
              {"boundary_grazing_seen", grazing},
              {"crossing_rejected", crossing_rejected},
              {"survivors", survivors.size()},
              {"orbits", orbits.size()}};
  }
  std::vector<std::vector<C5Configuration>> out;
  for (auto& [key, cfgs] : orbits) out.push_back(cfgs);
  return out;
}

// ---------------------------------------------------------------------------
// Apex infeasibility

namespace {

struct Piece {
  int face = -1;
  Polygon poly;
  int region = -1;
};

struct Portal {
  int from = -1, to = -1;  // piece ids
  FaceEdgeRef ref;         // on from's face
  Seg2 seg;                // in from's chart coordinates
};

struct Interval {
  double lo, hi;
};

std::vector<Interval> subtract_intervals(Interval base,
                                         std::vector<Interval> covered,
                                         double eps) {
  std::sort(covered.begin(), covered.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  double cur = base.lo;
  for (const Interval& c : covered) {
    if (c.hi < base.lo || c.lo > base.hi) continue;
    if (c.lo > cur + eps) out.push_back({cur, std::min(c.lo, base.hi)});
    cur = std::max(cur, c.hi);
  }
  if (cur < base.hi - eps) out.push_back({cur, base.hi});
  return out;
}

struct RegionDecomposition {
  std::vector<Piece> pieces;
  std::vector<Portal> portals;
  std::array<std::vector<int>, 2> by_region;
  std::array<std::vector<int>, 2> interior_vertices;  // cone points inside
};

// Split the faces along the cycle's chords and classify the two sides.
RegionDecomposition decompose(const PolyhedralSurface& s,
                              const C5Configuration& c5,
                              const Tolerances& tol) {
  const double eps = tol.eps_len;
  RegionDecomposition R;

  // Chords per face; boundary-running chords cover skeleton edges instead.
  std::map<int, std::vector<Seg2>> chords;
  std::map<int, std::vector<Interval>> covered;  // edge id -> intervals (canonical param)
  for (const GeodesicSegment& g : c5.edges) {
    for (size_t k = 0; k < g.faces.size(); ++k) {
      int f = g.faces[k];
      const Seg2& ls = g.local_segments[k];
      bool boundary = false;
      const Face& face = s.faces[f];
      for (int i = 0; i < face.size() && !boundary; ++i) {
        Seg2 e = s.edge_chart_segment({f, i});
        if (point_segment_distance(ls.a, e.a, e.b) < eps &&
            point_segment_distance(ls.b, e.a, e.b) < eps) {
          boundary = true;
          int eid = s.edge_id({f, i});
          double L2 = norm2(e.b - e.a);
          double t0 = dot(ls.a - e.a, e.b - e.a) / L2;
          double t1 = dot(ls.b - e.a, e.b - e.a) / L2;
          if (!(s.edges[eid].half[0] == FaceEdgeRef{f, i})) {
            t0 = 1.0 - t0;
            t1 = 1.0 - t1;
          }
          covered[eid].push_back({std::min(t0, t1), std::max(t0, t1)});
        }
      }
      if (!boundary && ls.length() > eps) chords[f].push_back(ls);
    }
  }

  // Split faces.
  std::map<int, std::vector<Polygon>> face_pieces;
  for (const Face& f : s.faces) face_pieces[f.id] = {f.chart};
  for (auto& [f, segs] : chords) {
    for (const Seg2& chord : segs) {
      Vec2 mid = 0.5 * (chord.a + chord.b);
      auto& list = face_pieces[f];
      int host = -1;
      for (size_t i = 0; i < list.size(); ++i)
        if (point_in_convex(list[i], mid, eps)) {
          host = int(i);
          break;
        }
      if (host < 0) throw Error("apex check: chord has no host piece");
      auto [left, right] = split_convex_by_chord(list[host], chord.a, chord.b);
      if (polygon_area(left) < 1e-14 || polygon_area(right) < 1e-14)
        throw Error("apex check: degenerate face split");
      list[host] = left;
      list.push_back(right);
    }
  }
  for (auto& [f, polys] : face_pieces)
    for (Polygon& p : polys) R.pieces.push_back({f, std::move(p), -1});

  // Portals: overlapping boundary intervals across glued edges, minus the
  // parts covered by boundary-running cycle edges.
  auto boundary_intervals = [&](int piece_id, FaceEdgeRef ref) {
    std::vector<Interval> out;
    const Piece& P = R.pieces[piece_id];
    Seg2 e = s.edge_chart_segment(ref);
    double L2 = norm2(e.b - e.a);
    size_t m = P.poly.size();
    for (size_t i = 0; i < m; ++i) {
      Vec2 a = P.poly[i], b = P.poly[(i + 1) % m];
      if (point_segment_distance(a, e.a, e.b) > eps) continue;
      if (point_segment_distance(b, e.a, e.b) > eps) continue;
      if (dist(a, b) < eps) continue;
      double t0 = dot(a - e.a, e.b - e.a) / L2;
      double t1 = dot(b - e.a, e.b - e.a) / L2;
      out.push_back({std::min(t0, t1), std::max(t0, t1)});
    }
    return out;
  };

  for (const EdgeInfo& einfo : s.edges) {
    FaceEdgeRef r0 = einfo.half[0], r1 = einfo.half[1];
    std::vector<Interval> cov =
        covered.count(einfo.id) ? covered[einfo.id] : std::vector<Interval>{};
    for (size_t pi = 0; pi < R.pieces.size(); ++pi) {
      if (R.pieces[pi].face != r0.face) continue;
      for (Interval ia : boundary_intervals(int(pi), r0)) {
        for (size_t qi = 0; qi < R.pieces.size(); ++qi) {
          if (R.pieces[qi].face != r1.face) continue;
          for (Interval ib_raw : boundary_intervals(int(qi), r1)) {
            Interval ib{1.0 - ib_raw.hi, 1.0 - ib_raw.lo};  // canonical param
            Interval common{std::max(ia.lo, ib.lo), std::min(ia.hi, ib.hi)};
            if (common.hi - common.lo < 1e-9) continue;
            for (Interval open : subtract_intervals(common, cov, 1e-9)) {
              Seg2 e0 = s.edge_chart_segment(r0);
              Seg2 e1 = s.edge_chart_segment(r1);
              Vec2 p0a = e0.a + open.lo * (e0.b - e0.a);
              Vec2 p0b = e0.a + open.hi * (e0.b - e0.a);
              Vec2 p1a = e1.a + (1.0 - open.lo) * (e1.b - e1.a);
              Vec2 p1b = e1.a + (1.0 - open.hi) * (e1.b - e1.a);
              R.portals.push_back({int(pi), int(qi), r0, {p0a, p0b}});
              R.portals.push_back({int(qi), int(pi), r1, {p1a, p1b}});
            }
          }
        }
      }
    }
  }

  // Two-sided flood fill seeded left/right of the first cycle edge.
  const GeodesicSegment& g0 = c5.edges[0];
  size_t mid_k = g0.faces.size() / 2;
  Seg2 mid_seg = g0.local_segments[mid_k];
  int mid_face = g0.faces[mid_k];
  Vec2 m = 0.5 * (mid_seg.a + mid_seg.b);
  Vec2 n = perp(normalized(mid_seg.b - mid_seg.a));
  auto locate = [&](Vec2 probe, int face) -> int {
    for (size_t i = 0; i < R.pieces.size(); ++i)
      if (R.pieces[i].face == face &&
          point_in_convex(R.pieces[i].poly, probe, 0.0))
        return int(i);
    return -1;
  };
  std::array<int, 2> seed{-1, -1};
  for (int side = 0; side < 2; ++side) {
    double sign = side == 0 ? 1.0 : -1.0;
    for (double delta : {1e-4, 1e-5, 1e-6}) {
      Vec2 probe = m + sign * delta * n;
      int pid = locate(probe, mid_face);
      if (pid < 0) {
        // The chord runs along a face boundary; look on the glued side.
        const Face& face = s.faces[mid_face];
        for (int i = 0; i < face.size() && pid < 0; ++i) {
          Seg2 e = s.edge_chart_segment({mid_face, i});
          if (point_segment_distance(m, e.a, e.b) > eps) continue;
          FaceEdgeRef tw = s.twin({mid_face, i});
          Vec2 probe_g = s.gluing({mid_face, i}).inverse().apply(probe);
          pid = locate(probe_g, tw.face);
        }
      }
      if (pid >= 0) {
        seed[side] = pid;
        break;
      }
    }
    if (seed[side] < 0) throw Error("apex check: region seed not found");
  }
  if (seed[0] == seed[1]) throw Error("apex check: seeds coincide");

  std::vector<std::vector<int>> adj(R.pieces.size());
  for (const Portal& p : R.portals) adj[p.from].push_back(p.to);
  for (int side = 0; side < 2; ++side) {
    std::vector<int> stack{seed[side]};
    if (R.pieces[seed[side]].region >= 0)
      throw Error("apex check: regions are not separated");
    R.pieces[seed[side]].region = side;
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      R.by_region[side].push_back(p);
      for (int q : adj[p]) {
        if (R.pieces[q].region == side) continue;
        if (R.pieces[q].region >= 0)
          throw Error("apex check: regions merge across the cycle");
        R.pieces[q].region = side;
        stack.push_back(q);
      }
    }
    std::sort(R.by_region[side].begin(), R.by_region[side].end());
  }
  for (const Piece& p : R.pieces)
    if (p.region < 0) throw Error("apex check: unlabeled piece");

  // Interior cone points per region.
  std::set<int> on_cycle(c5.verts.begin(), c5.verts.end());
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (on_cycle.count(v)) continue;
    std::set<int> regions;
    for (const FanEntryRef& fe : s.vertices[v].fan) {
      Vec2 corner = s.faces[fe.face].chart[fe.corner];
      for (size_t i = 0; i < R.pieces.size(); ++i) {
        if (R.pieces[i].face != fe.face) continue;
        for (const Vec2& pv : R.pieces[i].poly)
          if (dist(pv, corner) < eps) regions.insert(R.pieces[i].region);
      }
    }
    if (regions.size() != 1)
      throw Error("apex check: interior vertex touches both regions");
    R.interior_vertices[*regions.begin()].push_back(v);
  }
  return R;
}

// Reach of the admissible direction wedge from one cycle vertex through the
// region, restricted to shortest region-internal connections.
//
// Funnel BFS enumerates every straight unfolding branch from the vertex into
// the region (full wedge). A point is kept only where a branch whose
// direction satisfies the acute constraints is no longer than every other
// branch covering the point: triangulation edges are shortest paths, so this
// set over-approximates the valid apex positions. Dominance between two
// branches on one piece is a half-plane (perpendicular bisector of their
// unfolded source images), keeping everything exact convex clipping.
struct ReachPoly {
  Polygon poly;    // in the piece's face chart
  Vec2 source;     // unfolded position of the cycle vertex, same chart
};

struct ReachResult {
  std::map<int, std::vector<ReachPoly>> by_piece;
  bool complete = true;   // false when the depth cap cut live states
  int width_pruned = 0;   // branches dropped at direction width < 1e-9 rad
  double wedge_angle = 0.0;  // region-side wedge at the cycle vertex
};

// A \ D as convex pieces (both CCW).
std::vector<Polygon> subtract_convex(const Polygon& A, const Polygon& D) {
  std::vector<Polygon> out;
  Polygon rem = A;
  size_t m = D.size();
  for (size_t i = 0; i < m && rem.size() >= 3; ++i) {
    Vec2 a = D[i], b = D[(i + 1) % m];
    Vec2 n = perp(b - a);
    Polygon outside = clip_halfplane(rem, a, -1.0 * n, 1e-12);
    if (outside.size() >= 3 && std::abs(polygon_area(outside)) > 1e-18)
      out.push_back(outside);
    rem = clip_halfplane(rem, a, n, 1e-12);
  }
  return out;
}

ReachResult compute_reach(const PolyhedralSurface& s,
                          const RegionDecomposition& R, int region,
                          const C5Configuration& c5, int i,
                          const Tolerances& tol) {
  const double eps = tol.eps_len;
  int v = c5.verts[i];
  double cone = s.vertices[v].cone_angle;
  double phi_out = direction_at(s, c5.edges[i], true, tol).phi;
  double phi_in = direction_at(s, c5.edges[(i + 4) % 5], false, tol).phi;

  // Pick the wedge facing this region by probing an incident region piece.
  double probe_phi = -1.0;
  for (int pid : R.by_region[region]) {
    const Piece& P = R.pieces[pid];
    const Face& f = s.faces[P.face];
    int corner = f.corner_of(v);
    if (corner < 0) continue;
    Vec2 cpos = f.chart[corner];
    size_t m = P.poly.size();
    for (size_t k = 0; k < m; ++k) {
      if (dist(P.poly[k], cpos) > eps) continue;
      Vec2 d1 = normalized(P.poly[(k + 1) % m] - cpos);
      Vec2 d2 = normalized(P.poly[(k + m - 1) % m] - cpos);
      Vec2 bisector = rotate(d1, 0.5 * ccw_angle(d1, d2));
      probe_phi = point_phi(s, SurfacePoint::vertex(v), P.face, bisector);
      break;
    }
    if (probe_phi >= 0.0) break;
  }
  if (probe_phi < 0.0) throw Error("apex check: no region piece at vertex");

  double w_ccw = wrap_angle(phi_in - phi_out, cone);
  double theta, base;
  if (wrap_angle(probe_phi - phi_out, cone) < w_ccw) {
    theta = w_ccw;
    base = phi_out;
  } else {
    theta = cone - w_ccw;
    base = phi_in;
  }

  // Acute base angles at v confine the direction of the edge towards the
  // apex to [theta - pi/2, pi/2] inside the region wedge [0, theta]
  // (closed, widened by eps). Branches over the whole wedge are needed as
  // shortest-path competitors.
  const double delta = tol.eps_ang;
  DirCone wedge{rotate({1, 0}, -delta), rotate({1, 0}, theta + delta)};
  DirCone constraint{rotate({1, 0}, theta - kPi / 2.0 - delta),
                     rotate({1, 0}, kPi / 2.0 + delta)};

  struct State {
    int piece;
    Iso2 T;  // face chart -> wedge frame
    DirCone cone;
    int depth;
  };
  std::vector<State> queue;

  // Initial states: region pieces with a corner at v, placed by the fan walk.
  for (int pid : R.by_region[region]) {
    const Piece& P = R.pieces[pid];
    const Face& f = s.faces[P.face];
    int corner = f.corner_of(v);
    if (corner < 0) continue;
    Vec2 cpos = f.chart[corner];
    bool has_corner = false;
    for (const Vec2& pv : P.poly)
      if (dist(pv, cpos) < eps) has_corner = true;
    if (!has_corner) continue;
    const FanEntryRef& fe = s.fan_entry(v, P.face);
    double psi = wrap_angle(fe.wedge_start - base, cone);
    if (psi > theta + 1e-9) psi -= cone;  // wedge starts before the frame base
    if (psi + fe.wedge_angle < -1e-9 || psi > theta + 1e-9) continue;
    Vec2 start_dir = normalized(
        f.chart[(fe.corner + 1) % f.size()] - cpos);
    Iso2 T = Iso2::rotation(psi - angle_of(start_dir))
                 .compose(Iso2::translate(-1.0 * cpos));
    queue.push_back({pid, T, wedge, 0});
  }

  std::set<std::array<long, 9>> seen;
  auto quantize = [](const Iso2& T, const DirCone& c, int piece) {
    auto q = [](double x) { return lround(x * 1e7); };
    return std::array<long, 9>{piece,     q(T.m00), q(T.m10), q(T.t.x),
                               q(T.t.y),  q(c.lo.x), q(c.lo.y), q(c.hi.x),
                               q(c.hi.y)};
  };
  const int kMaxDepth = 32;
  const double kMaxDist = 2.9;  // beyond any shortest path on the surface

  // Unclipped branch coverage per piece (needed as shortest competitors).
  struct Branch {
    Polygon poly;  // piece ∩ direction cone, face-chart coordinates
    Vec2 source;   // unfolded vertex image, face-chart coordinates
    Vec2 wlo, whi; // constraint cone directions, face-chart coordinates
  };
  std::map<int, std::vector<Branch>> branches;
  ReachResult out;
  out.wedge_angle = theta;

  size_t head = 0;
  while (head < queue.size()) {
    State st = queue[head++];
    if (!seen.insert(quantize(st.T, st.cone, st.piece)).second) continue;
    const Piece& P = R.pieces[st.piece];

    Polygon frame_poly;
    for (const Vec2& pv : P.poly) frame_poly.push_back(st.T.apply(pv));
    frame_poly = clip_halfplane(frame_poly, {0, 0}, perp(st.cone.lo), 1e-12);
    frame_poly =
        clip_halfplane(frame_poly, {0, 0}, -1.0 * perp(st.cone.hi), 1e-12);
    if (frame_poly.size() >= 3 &&
        std::abs(polygon_area(frame_poly)) > 1e-18) {
      Iso2 inv = st.T.inverse();
      Branch br;
      for (const Vec2& pv : frame_poly) br.poly.push_back(inv.apply(pv));
      br.source = inv.apply({0, 0});
      br.wlo = inv.apply_dir(constraint.lo);
      br.whi = inv.apply_dir(constraint.hi);
      branches[st.piece].push_back(std::move(br));
    }

    if (st.depth >= kMaxDepth) {
      out.complete = false;
      continue;
    }
    for (const Portal& portal : R.portals) {
      if (portal.from != st.piece) continue;
      if (R.pieces[portal.to].region != region) continue;
      Vec2 a = st.T.apply(portal.seg.a), b = st.T.apply(portal.seg.b);
      auto cone_seg = cone_of_segment(a, b, eps);
      if (!cone_seg) continue;
      auto next_cone = intersect_cones(st.cone, *cone_seg);
      if (!next_cone) continue;
      if (next_cone->width() < 1e-9) {
        // Below the global eps regime: such a corridor grazes a cone point
        // and cannot carry a shortest edge to a positive-measure apex set.
        out.width_pruned++;
        continue;
      }
      auto window = clip_segment_to_cone(a, b, *next_cone);
      if (!window) continue;
      if (point_segment_distance({0, 0}, window->a, window->b) > kMaxDist)
        continue;
      Iso2 T2 = st.T.compose(s.gluing(portal.ref));
      queue.push_back({portal.to, T2, *next_cone, st.depth + 1});
    }
  }

  // Keep, per branch, the part that satisfies the direction constraint and
  // is not strictly beaten by another region-internal branch. When the
  // dominated part of a fragment lies entirely inside the competitor's
  // coverage, a single bisector clip is exact; otherwise fall back to exact
  // convex subtraction under a fragment budget (skipping a competitor only
  // ever keeps more, which is the sound direction).
  for (auto& [pid, list] : branches) {
    for (size_t k = 0; k < list.size(); ++k) {
      const Branch& bk = list[k];
      Polygon wedge_poly =
          clip_halfplane(bk.poly, bk.source, perp(bk.wlo), 1e-12);
      wedge_poly = clip_halfplane(wedge_poly, bk.source,
                                  -1.0 * perp(bk.whi), 1e-12);
      if (wedge_poly.size() < 3) continue;
      std::vector<Polygon> kept = {wedge_poly};
      int budget = 64;
      for (size_t j = 0; j < list.size() && !kept.empty(); ++j) {
        if (j == k) continue;
        const Branch& bj = list[j];
        double sep = dist(bj.source, bk.source);
        if (sep < eps) continue;  // same unfolded source: equal lengths
        Vec2 u = normalized(bk.source - bj.source);
        Vec2 mid = 0.5 * (bk.source + bj.source) - (0.5 * eps) * u;
        std::vector<Polygon> next;
        for (Polygon& A : kept) {
          Polygon dominated = clip_halfplane(A, mid, -1.0 * u, 0.0);
          if (dominated.size() < 3 ||
              std::abs(polygon_area(dominated)) < 1e-18) {
            next.push_back(std::move(A));
            continue;
          }
          bool covered = true;
          for (const Vec2& x : dominated)
            covered = covered && point_in_convex(bj.poly, x, 1e-9);
          if (covered) {
            Polygon keep_part = clip_halfplane(A, mid, u, 0.0);
            if (keep_part.size() >= 3 &&
                std::abs(polygon_area(keep_part)) > 1e-18)
              next.push_back(std::move(keep_part));
          } else if (budget > 0) {
            Polygon D = clip_halfplane(bj.poly, mid, -1.0 * u, 0.0);
            auto parts = subtract_convex(A, D);
            budget -= int(parts.size());
            for (Polygon& p : parts) next.push_back(std::move(p));
          } else {
            next.push_back(std::move(A));  // competitor skipped
          }
        }
        kept = std::move(next);
      }
      for (Polygon& A : kept)
        if (A.size() >= 3 && std::abs(polygon_area(A)) > 1e-18)
          out.by_piece[pid].push_back({std::move(A), bk.source});
    }
  }
  return out;
}

Polygon clip_convex_pair(const Polygon& A, const Polygon& B) {
  Polygon cur = A;
  size_t m = B.size();
  for (size_t i = 0; i < m && !cur.empty(); ++i) {
    Vec2 a = B[i], b = B[(i + 1) % m];
    Vec2 nrm = perp(b - a);
    cur = clip_halfplane(cur, a, nrm, 1e-12);
  }
  return cur;
}

}  // namespace

Certificate check_apex_infeasible(const PolyhedralSurface& s,
                                  const C5Configuration& c5,
                                  const Tolerances& tol) {
  Certificate cert;
  cert.claim = "acute10-apex";
  cert.params = tol;
  json evidence;
  evidence["cycle"] = c5.verts;

  RegionDecomposition R = decompose(s, c5, tol);
  evidence["piece_count"] = R.pieces.size();

  bool all_hold = true, any_inconclusive = false;
  evidence["sides"] = json::array();
  for (int region = 0; region < 2; ++region) {
    json side;
    side["region"] = region;
    side["interior_cone_points"] = R.interior_vertices[region];

    std::array<ReachResult, 5> reach;
    bool complete = true;
    int width_pruned = 0;
    for (int i = 0; i < 5; ++i) {
      reach[i] = compute_reach(s, R, region, c5, i, tol);
      complete = complete && reach[i].complete;
      width_pruned += reach[i].width_pruned;
    }
    side["funnel_complete"] = complete;
    side["width_pruned_branches"] = width_pruned;
    side["wedge_angles"] = {reach[0].wedge_angle, reach[1].wedge_angle,
                            reach[2].wedge_angle, reach[3].wedge_angle,
                            reach[4].wedge_angle};
    if (!complete) any_inconclusive = true;

    // Feasible set: intersection of the five reaches, piece by piece,
    // tightest constraint first.
    std::map<int, std::vector<Polygon>> feasible;
    for (int pid : R.by_region[region]) {
      std::array<int, 5> order{0, 1, 2, 3, 4};
      std::array<double, 5> areas{};
      for (int i = 0; i < 5; ++i) {
        auto it = reach[i].by_piece.find(pid);
        if (it != reach[i].by_piece.end())
          for (const ReachPoly& rp : it->second)
            areas[i] += std::abs(polygon_area(rp.poly));
      }
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return areas[a] < areas[b]; });
      std::vector<Polygon> current = {R.pieces[pid].poly};
      for (int oi = 0; oi < 5 && !current.empty(); ++oi) {
        int i = order[oi];
        std::vector<Polygon> next;
        auto it = reach[i].by_piece.find(pid);
        if (it == reach[i].by_piece.end()) {
          current.clear();
          break;
        }
        for (const Polygon& A : current)
          for (const ReachPoly& rp : it->second) {
            Polygon C = clip_convex_pair(A, rp.poly);
            if (C.size() >= 3 && std::abs(polygon_area(C)) > 1e-18)
              next.push_back(C);
          }
        // Drop fragments contained in an already-kept fragment.
        std::sort(next.begin(), next.end(),
                  [](const Polygon& a, const Polygon& b) {
                    return std::abs(polygon_area(a)) >
                           std::abs(polygon_area(b));
                  });
        std::vector<Polygon> pruned;
        for (Polygon& C : next) {
          bool inside = false;
          for (const Polygon& big : pruned) {
            bool all = true;
            for (const Vec2& x : C)
              all = all && point_in_convex(big, x, 1e-12);
            if (all) {
              inside = true;
              break;
            }
          }
          if (!inside) pruned.push_back(std::move(C));
        }
        current = std::move(pruned);
      }
      if (!current.empty()) feasible[pid] = std::move(current);
    }

    json faces_json = json::array();
    double total_area = 0.0;
    for (auto& [pid, polys] : feasible) {
      double area = 0.0;
      for (const Polygon& p : polys) area += std::abs(polygon_area(p));
      faces_json.push_back({{"face", R.pieces[pid].face},
                            {"piece", pid},
                            {"area", area}});
      total_area += area;
    }
    side["feasible_pieces"] = faces_json;
    side["feasible_area"] = total_area;

    if (feasible.empty()) {
      side["verdict"] = "holds";
      side["reason"] = "feasible apex set is empty";
      evidence["sides"].push_back(side);
      continue;
    }

    // Thales containment: some cycle edge (v_i, v_{i+1}) must see the whole
    // feasible set inside the closed disc with diameter (v_i, v_{i+1}); an
    // apex there would give a non-acute angle over that edge.
    std::string side_verdict = "fails";
    json pair_reports = json::array();
    for (int i = 0; i < 5 && side_verdict != "holds"; ++i) {
      int j = (i + 1) % 5;
      bool ok = true, incon = false, any = false;
      double min_margin = 1e9;
      for (auto& [pid, polys] : feasible) {
        auto ri = reach[i].by_piece.find(pid);
        auto rj = reach[j].by_piece.find(pid);
        if (ri == reach[i].by_piece.end() || rj == reach[j].by_piece.end()) {
          ok = false;
          continue;
        }
        for (const Polygon& A : polys) {
          for (const ReachPoly& pa : ri->second) {
            Polygon Ai = clip_convex_pair(A, pa.poly);
            if (Ai.empty()) continue;
            for (const ReachPoly& pb : rj->second) {
              Polygon S = clip_convex_pair(Ai, pb.poly);
              if (S.empty()) continue;
              any = true;
              Vec2 center = 0.5 * (pa.source + pb.source);
              double radius = 0.5 * dist(pa.source, pb.source);
              for (const Vec2& x : S) {
                double d = dist(x, center);
                double margin = radius - d;
                if (dist(x, pa.source) < tol.eps_len ||
                    dist(x, pb.source) < tol.eps_len)
                  continue;  // the cycle vertex itself; apex is distinct
                min_margin = std::min(min_margin, margin);
                if (margin < -tol.eps_len)
                  ok = false;
                else if (margin < tol.eps_len)
                  incon = true;
              }
            }
          }
        }
      }
      json pr = {{"diameter_pair", {c5.verts[i], c5.verts[j]}},
                 {"covered", any},
                 {"contained", ok && any},
                 {"boundary_degenerate", incon},
                 {"min_margin", min_margin == 1e9 ? 0.0 : min_margin}};
      pair_reports.push_back(pr);
      if (ok && any && !incon) side_verdict = "holds";
    }
    side["diameter_pairs"] = pair_reports;
    bool pair_degenerate = false;
    for (auto& pr : pair_reports)
      if (pr["boundary_degenerate"].get<bool>()) pair_degenerate = true;
    if (side_verdict != "holds" && (pair_degenerate || !complete))
      side_verdict = "inconclusive";
    side["verdict"] = side_verdict;
    evidence["sides"].push_back(side);
    if (side_verdict == "inconclusive") any_inconclusive = true;
    if (side_verdict != "holds") all_hold = false;
  }

  cert.verdict = all_hold ? "holds" : (any_inconclusive ? "inconclusive" : "fails");
  cert.evidence = evidence;
  return cert;
}

Certificate check_no_acute_10(const PolyhedralSurface& s,
                              const Tolerances& tol) {
  Certificate cert;
  cert.claim = "acute10";
  cert.params = tol;
  bool ok = true;
  json evidence;

  // (i) The only F=10 type with minimum degree >= 4 is the pentagonal
  // bipyramid.
  auto types = enumerate_sphere_triangulations(10);
  std::vector<std::vector<int>> filtered;
  for (const auto& T : types)
    if (T.min_degree() >= 4) filtered.push_back(T.degree_sequence());
  evidence["combinatorial"] = {
      {"type_count", types.size()},
      {"min_degree_4_count", filtered.size()},
      {"filtered_degree_sequences", filtered}};
  ok = ok && filtered.size() == 1 &&
       filtered[0] == std::vector<int>{5, 5, 4, 4, 4, 4, 4};

  // (ii) Degree-4 vertices of an acute triangulation sit on surface
  // vertices (four strictly acute angles cannot close a flat point).
  int flat_bound = min_degree_bound(2.0 * kPi, kPi / 2.0, true);
  evidence["flat_strict_bound"] = flat_bound;
  ok = ok && flat_bound == 5;

  // Every 5-subset of skeleton vertices has at least two adjacent pairs.
  auto [subsets, min_pairs] = adjacent_pair_scan(s);
  evidence["adjacent_pair_scan"] = {{"subsets", subsets},
                                    {"min_adjacent_pairs", min_pairs}};
  ok = ok && subsets == 792 && min_pairs >= 2;

  // (iii) All admissible 5-cycles, up to isometry.
  json c5_stats;
  auto orbits = enumerate_c5(s, tol, &c5_stats);
  evidence["c5_enumeration"] = c5_stats;
  ok = ok && !orbits.empty();

  // (iv) Apex infeasibility for a representative of every orbit.
  bool any_inconclusive = false;
  evidence["apex_checks"] = json::array();
  for (const auto& orbit : orbits) {
    Certificate apex = check_apex_infeasible(s, orbit.front(), tol);
    evidence["apex_checks"].push_back(
        {{"orbit_size", orbit.size()},
         {"cycle", orbit.front().verts},
         {"verdict", apex.verdict},
         {"evidence", apex.evidence}});
    if (apex.verdict == "inconclusive") any_inconclusive = true;
    ok = ok && apex.verdict == "holds";
  }

  cert.verdict = ok ? "holds" : (any_inconclusive ? "inconclusive" : "fails");
  cert.evidence = evidence;
  return cert;
}

}  // namespace cuboct
