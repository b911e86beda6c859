#include "cuboct/surface.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace cuboct {

int Face::corner_of(int vertex) const {
  for (int i = 0; i < size(); ++i)
    if (vertices[i] == vertex) return i;
  return -1;
}

FaceEdgeRef PolyhedralSurface::twin(FaceEdgeRef ref) const {
  const EdgeInfo& e = edges[edge_id(ref)];
  return (e.half[0] == ref) ? e.half[1] : e.half[0];
}

bool PolyhedralSurface::adjacent(int v, int w) const {
  const auto& nb = adjacency_[v];
  return std::find(nb.begin(), nb.end(), w) != nb.end();
}

int PolyhedralSurface::skeleton_edge(int v, int w) const {
  for (const EdgeInfo& e : edges)
    if ((e.u == v && e.v == w) || (e.u == w && e.v == v)) return e.id;
  return -1;
}

Seg2 PolyhedralSurface::edge_chart_segment(FaceEdgeRef ref) const {
  const Face& f = faces[ref.face];
  return {f.chart[ref.index], f.chart[(ref.index + 1) % f.size()]};
}

const FanEntryRef& PolyhedralSurface::fan_entry(int v, int f) const {
  for (const FanEntryRef& fe : vertices[v].fan)
    if (fe.face == f) return fe;
  throw Error("fan_entry: face " + std::to_string(f) +
              " not incident to vertex " + std::to_string(v));
}

double PolyhedralSurface::vertex_phi(int v, int f, Vec2 dir) const {
  const FanEntryRef& fe = fan_entry(v, f);
  const Face& face = faces[f];
  Vec2 corner = face.chart[fe.corner];
  Vec2 start = normalized(face.chart[(fe.corner + 1) % face.size()] - corner);
  double off = signed_angle(start, dir);
  // Directions along the trailing wedge boundary come out as small negative
  // offsets; fold them into this wedge.
  if (off < -1e-9 || off > fe.wedge_angle + 1e-9)
    throw Error("vertex_phi: direction outside the face wedge");
  off = std::clamp(off, 0.0, fe.wedge_angle);
  return wrap_angle(fe.wedge_start + off, vertices[v].cone_angle);
}

std::pair<int, Vec2> PolyhedralSurface::vertex_direction(int v,
                                                         double phi) const {
  const VertexStar& star = vertices[v];
  phi = wrap_angle(phi, star.cone_angle);
  for (const FanEntryRef& fe : star.fan) {
    double off = phi - fe.wedge_start;
    if (off < -1e-12 || off > fe.wedge_angle + 1e-12) continue;
    const Face& face = faces[fe.face];
    Vec2 corner = face.chart[fe.corner];
    Vec2 start = normalized(face.chart[(fe.corner + 1) % face.size()] - corner);
    return {fe.face, rotate(start, std::clamp(off, 0.0, fe.wedge_angle))};
  }
  throw Error("vertex_direction: phi not covered by fan");
}

void PolyhedralSurface::finalize() {
  int nv = 0;
  for (const Face& f : faces)
    for (int v : f.vertices) nv = std::max(nv, v + 1);

  // Pair up directed face edges into undirected edges.
  std::map<std::pair<int, int>, std::vector<FaceEdgeRef>> by_pair;
  for (const Face& f : faces) {
    for (int i = 0; i < f.size(); ++i) {
      int a = f.vertices[i], b = f.vertices[(i + 1) % f.size()];
      by_pair[{std::min(a, b), std::max(a, b)}].push_back({f.id, i});
    }
  }
  edges.clear();
  edge_of_ref_.clear();
  for (auto& [pair, refs] : by_pair) {
    if (refs.size() != 2)
      throw Error("finalize: edge (" + std::to_string(pair.first) + "," +
                  std::to_string(pair.second) + ") has " +
                  std::to_string(refs.size()) + " incident faces");
    std::sort(refs.begin(), refs.end());
    EdgeInfo e;
    e.id = int(edges.size());
    e.half[0] = refs[0];
    e.half[1] = refs[1];
    const Face& f0 = faces[refs[0].face];
    e.u = f0.vertices[refs[0].index];
    e.v = f0.vertices[(refs[0].index + 1) % f0.size()];
    double l0 = edge_chart_segment_len(refs[0]);
    double l1 = edge_chart_segment_len(refs[1]);
    if (std::abs(l0 - l1) > 1e-9)
      throw Error("finalize: glued edge length mismatch");
    e.length = l0;
    edges.push_back(e);
    edge_of_ref_[key(refs[0])] = e.id;
    edge_of_ref_[key(refs[1])] = e.id;
  }

  // Gluing isometries: twin chart -> this chart's plane across the edge.
  gluing_.clear();
  for (const EdgeInfo& e : edges) {
    for (int side = 0; side < 2; ++side) {
      FaceEdgeRef ref = e.half[side], tw = e.half[1 - side];
      const Face& f = faces[ref.face];
      const Face& g = faces[tw.face];
      Vec2 fa = f.chart[ref.index], fb = f.chart[(ref.index + 1) % f.size()];
      Vec2 ga = g.chart[tw.index], gb = g.chart[(tw.index + 1) % g.size()];
      // Directed edges run opposite ways on the two faces.
      gluing_[key(ref)] = Iso2::map_segment(ga, gb, fb, fa);
    }
  }

  // Adjacency.
  adjacency_.assign(nv, {});
  for (const EdgeInfo& e : edges) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  // Vertex stars: walk the face fan CCW. From corner i of face f, the next
  // face CCW around the vertex is across the directed edge (f, i-1).
  vertices.assign(nv, {});
  std::vector<std::vector<FaceEdgeRef>> corners(nv);
  for (const Face& f : faces)
    for (int i = 0; i < f.size(); ++i)
      corners[f.vertices[i]].push_back({f.id, i});
  for (int v = 0; v < nv; ++v) {
    VertexStar star;
    star.vertex = v;
    if (corners[v].empty()) throw Error("finalize: isolated vertex");
    FaceEdgeRef cur = *std::min_element(corners[v].begin(), corners[v].end());
    const FaceEdgeRef walk_start = cur;
    size_t count = corners[v].size();
    double acc = 0.0;
    for (size_t k = 0; k < count; ++k) {
      const Face& f = faces[cur.face];
      int i = cur.index;
      Vec2 c = f.chart[i];
      Vec2 to_next = f.chart[(i + 1) % f.size()] - c;
      Vec2 to_prev = f.chart[(i - 1 + f.size()) % f.size()] - c;
      FanEntryRef fe;
      fe.face = cur.face;
      fe.corner = i;
      fe.wedge_start = acc;
      fe.wedge_angle = ccw_angle(normalized(to_next), normalized(to_prev));
      fe.out_edge = edge_id({cur.face, i});
      star.fan.push_back(fe);
      acc += fe.wedge_angle;
      // Cross edge (f, i-1) to the next face; the twin starts at v.
      FaceEdgeRef in_edge{cur.face, int((i - 1 + f.size()) % f.size())};
      FaceEdgeRef tw = twin(in_edge);
      cur = tw;
      if (faces[tw.face].vertices[tw.index] != v)
        throw Error("finalize: fan walk lost the vertex");
    }
    // The walk must close up after visiting every incident corner.
    if (!(cur == walk_start)) throw Error("finalize: fan walk did not close");
    star.cone_angle = acc;

    // Rotate the fan so the lowest-id incident edge direction sits at phi=0.
    size_t best = 0;
    for (size_t k = 1; k < star.fan.size(); ++k)
      if (star.fan[k].out_edge < star.fan[best].out_edge) best = k;
    std::rotate(star.fan.begin(), star.fan.begin() + best, star.fan.end());
    double base = star.fan.front().wedge_start;
    for (FanEntryRef& fe : star.fan)
      fe.wedge_start = wrap_angle(fe.wedge_start - base, star.cone_angle);
    star.fan.front().wedge_start = 0.0;
    star.reference_edge = star.fan.front().out_edge;
    vertices[v] = star;
  }
}

double PolyhedralSurface::edge_chart_segment_len(FaceEdgeRef ref) const {
  const Face& f = faces[ref.face];
  return dist(f.chart[ref.index], f.chart[(ref.index + 1) % f.size()]);
}

PolyhedralSurface build_from_faces(
    const std::vector<std::vector<int>>& face_vertices, double edge_length) {
  if (edge_length <= 0.0) throw Error("edge_length must be positive");
  PolyhedralSurface s;
  s.edge_length = edge_length;
  for (size_t i = 0; i < face_vertices.size(); ++i) {
    Face f;
    f.id = int(i);
    f.vertices = face_vertices[i];
    int n = f.size();
    if (n == 3) {
      f.shape = "triangle";
      f.chart = {{0, 0},
                 {edge_length, 0},
                 {0.5 * edge_length, 0.5 * std::sqrt(3.0) * edge_length}};
    } else if (n == 4) {
      f.shape = "square";
      f.chart = {{0, 0},
                 {edge_length, 0},
                 {edge_length, edge_length},
                 {0, edge_length}};
    } else {
      throw Error("build_from_faces: only triangles and squares supported");
    }
    s.faces.push_back(std::move(f));
  }
  s.finalize();
  return s;
}

PolyhedralSurface build_cuboctahedron(double edge_length) {
  if (edge_length <= 0.0) throw Error("edge_length must be positive");
  // Combinatorics from the standard model: vertices are the permutations of
  // (+-1, +-1, 0); triangles sit in the octants, squares in the coordinate
  // planes x,y,z = +-1. Only the combinatorics is kept.
  struct V3 {
    int x, y, z;
  };
  std::vector<V3> pos;
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y)
      for (int z = -1; z <= 1; ++z) {
        int zeros = (x == 0) + (y == 0) + (z == 0);
        if (zeros == 1) pos.push_back({x, y, z});
      }
  std::sort(pos.begin(), pos.end(), [](const V3& a, const V3& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
  });
  auto find = [&](int x, int y, int z) {
    for (size_t i = 0; i < pos.size(); ++i)
      if (pos[i].x == x && pos[i].y == y && pos[i].z == z) return int(i);
    throw Error("cuboctahedron template: missing vertex");
  };

  std::vector<std::vector<int>> cycles;
  // Triangles: per octant, ordered CCW seen from outside.
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) {
        std::vector<int> tri = {find(sx, sy, 0), find(sx, 0, sz),
                                find(0, sy, sz)};
        // Orient CCW about the outward direction (sx,sy,sz).
        auto at = [&](int id) { return pos[id]; };
        V3 a = at(tri[0]), b = at(tri[1]), c = at(tri[2]);
        long nx = long(b.y - a.y) * (c.z - a.z) - long(b.z - a.z) * (c.y - a.y);
        long ny = long(b.z - a.z) * (c.x - a.x) - long(b.x - a.x) * (c.z - a.z);
        long nz = long(b.x - a.x) * (c.y - a.y) - long(b.y - a.y) * (c.x - a.x);
        if (nx * sx + ny * sy + nz * sz < 0) std::swap(tri[1], tri[2]);
        cycles.push_back(tri);
      }
  // Squares: per coordinate-plane slice, ordered around the axis.
  for (int axis = 0; axis < 3; ++axis)
    for (int sgn : {-1, 1}) {
      std::vector<int> ids;
      for (size_t i = 0; i < pos.size(); ++i) {
        int c = axis == 0 ? pos[i].x : axis == 1 ? pos[i].y : pos[i].z;
        if (c == sgn) ids.push_back(int(i));
      }
      // Order the 4 corners cyclically (adjacent corners differ in one slot).
      std::vector<int> cyc = {ids[0]};
      std::vector<bool> used(ids.size(), false);
      used[0] = true;
      auto dist2 = [&](int a, int b) {
        V3 p = pos[a], q = pos[b];
        int dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
        return dx * dx + dy * dy + dz * dz;
      };
      while (cyc.size() < ids.size()) {
        bool advanced = false;
        for (size_t j = 0; j < ids.size(); ++j) {
          if (used[j]) continue;
          if (dist2(cyc.back(), ids[j]) == 2) {
            cyc.push_back(ids[j]);
            used[j] = true;
            advanced = true;
            break;
          }
        }
        if (!advanced) throw Error("cuboctahedron template: bad square cycle");
      }
      // Orient CCW about the outward axis direction.
      V3 a = pos[cyc[0]], b = pos[cyc[1]], c = pos[cyc[2]];
      long nx = long(b.y - a.y) * (c.z - a.z) - long(b.z - a.z) * (c.y - a.y);
      long ny = long(b.z - a.z) * (c.x - a.x) - long(b.x - a.x) * (c.z - a.z);
      long nz = long(b.x - a.x) * (c.y - a.y) - long(b.y - a.y) * (c.x - a.x);
      long along = axis == 0 ? nx * sgn : axis == 1 ? ny * sgn : nz * sgn;
      if (along < 0) std::reverse(cyc.begin() + 1, cyc.end());
      cycles.push_back(cyc);
    }

  // Deterministic face ids: sort by sorted vertex lists.
  std::sort(cycles.begin(), cycles.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              std::vector<int> sa = a, sb = b;
              std::sort(sa.begin(), sa.end());
              std::sort(sb.begin(), sb.end());
              return sa < sb;
            });
  // Rotate each cycle so the lowest vertex id comes first.
  for (auto& cyc : cycles) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
  }
  return build_from_faces(cycles, edge_length);
}

int skeleton_distance(const PolyhedralSurface& s, int v, int w) {
  if (v < 0 || v >= s.vertex_count() || w < 0 || w >= s.vertex_count())
    throw Error("skeleton_distance: unknown vertex id");
  std::vector<int> dist(s.vertex_count(), -1);
  std::deque<int> q{v};
  dist[v] = 0;
  while (!q.empty()) {
    int cur = q.front();
    q.pop_front();
    if (cur == w) return dist[cur];
    for (int nb : s.neighbors(cur))
      if (dist[nb] < 0) {
        dist[nb] = dist[cur] + 1;
        q.push_back(nb);
      }
  }
  throw Error("skeleton_distance: disconnected skeleton");
}

int antipode(const PolyhedralSurface& s, int v) {
  int found = -1;
  for (int w = 0; w < s.vertex_count(); ++w) {
    if (w == v) continue;
    if (skeleton_distance(s, v, w) == 3) {
      if (found >= 0) throw Error("antipode: not unique");
      found = w;
    }
  }
  if (found < 0) throw Error("antipode: no vertex at distance 3");
  return found;
}

namespace {

void extend_automorphism(const PolyhedralSurface& s, std::vector<int>& perm,
                         std::vector<bool>& used, int next,
                         const std::set<std::vector<int>>& face_sets,
                         std::vector<std::vector<int>>& out) {
  int n = s.vertex_count();
  if (next == n) {
    // Adjacency already enforced; require the face structure to map to
    // itself (vertex sets of faces map to vertex sets of faces).
    for (const Face& f : s.faces) {
      std::vector<int> img;
      for (int v : f.vertices) img.push_back(perm[v]);
      std::sort(img.begin(), img.end());
      if (!face_sets.count(img)) return;
    }
    out.push_back(perm);
    return;
  }
  for (int img = 0; img < n; ++img) {
    if (used[img]) continue;
    bool ok = true;
    for (int v = 0; v < next && ok; ++v)
      if (s.adjacent(next, v) != s.adjacent(img, perm[v])) ok = false;
    if (!ok) continue;
    perm[next] = img;
    used[img] = true;
    extend_automorphism(s, perm, used, next + 1, face_sets, out);
    used[img] = false;
  }
}

}  // namespace

std::vector<std::vector<int>> isometry_group(const PolyhedralSurface& s) {
  std::set<std::vector<int>> face_sets;
  for (const Face& f : s.faces) {
    std::vector<int> vs = f.vertices;
    std::sort(vs.begin(), vs.end());
    face_sets.insert(vs);
  }
  std::vector<int> perm(s.vertex_count(), -1);
  std::vector<bool> used(s.vertex_count(), false);
  std::vector<std::vector<int>> out;
  extend_automorphism(s, perm, used, 0, face_sets, out);
  std::sort(out.begin(), out.end());
  return out;
}

SurfacePoint canonical_point(const PolyhedralSurface& s, int face, Vec2 uv,
                             double eps_len) {
  const Face& f = s.faces[face];
  int n = f.size();
  for (int i = 0; i < n; ++i)
    if (dist(uv, f.chart[i]) <= eps_len)
      return SurfacePoint::vertex(f.vertices[i]);
  for (int i = 0; i < n; ++i) {
    Vec2 a = f.chart[i], b = f.chart[(i + 1) % n];
    if (point_segment_distance(uv, a, b) <= eps_len) {
      int eid = s.edge_id({face, i});
      const EdgeInfo& e = s.edges[eid];
      FaceEdgeRef canon = e.half[0];
      Seg2 seg = s.edge_chart_segment(canon);
      Vec2 p = uv;
      if (!(canon == FaceEdgeRef{face, i})) {
        // Express the point on the canonical side.
        const Iso2& glue = s.gluing(canon);  // twin chart -> canonical plane
        p = glue.apply(uv);
      }
      double t = dot(p - seg.a, seg.b - seg.a) / norm2(seg.b - seg.a);
      t = std::clamp(t, 0.0, 1.0);
      return SurfacePoint::edge(eid, t);
    }
  }
  if (!point_in_convex(f.chart, uv, eps_len))
    throw Error("canonical_point: location outside the face");
  return SurfacePoint::face(face, uv);
}

Vec2 point_in_face(const PolyhedralSurface& s, const SurfacePoint& p, int f) {
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex: {
      int c = s.faces[f].corner_of(p.id);
      if (c < 0) throw Error("point_in_face: vertex not on face");
      return s.faces[f].chart[c];
    }
    case SurfacePoint::Kind::Edge: {
      const EdgeInfo& e = s.edges[p.id];
      for (int side = 0; side < 2; ++side) {
        if (e.half[side].face != f) continue;
        Seg2 seg = s.edge_chart_segment(e.half[side]);
        // Parameter runs along the canonical direction (half[0]).
        double t = side == 0 ? p.t : 1.0 - p.t;
        return seg.a + t * (seg.b - seg.a);
      }
      throw Error("point_in_face: edge not on face");
    }
    case SurfacePoint::Kind::Face:
      if (p.id != f) throw Error("point_in_face: wrong face");
      return p.uv;
  }
  throw Error("point_in_face: bad kind");
}

std::vector<int> owning_faces(const PolyhedralSurface& s,
                              const SurfacePoint& p) {
  std::vector<int> out;
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex:
      for (const FanEntryRef& fe : s.vertices[p.id].fan)
        out.push_back(fe.face);
      break;
    case SurfacePoint::Kind::Edge:
      out = {s.edges[p.id].half[0].face, s.edges[p.id].half[1].face};
      break;
    case SurfacePoint::Kind::Face:
      out = {p.id};
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool points_equal(const PolyhedralSurface& s, const SurfacePoint& a,
                  const SurfacePoint& b, double eps_len) {
  if (a.kind != b.kind) return false;
  if (a.id != b.id) return false;
  switch (a.kind) {
    case SurfacePoint::Kind::Vertex:
      return true;
    case SurfacePoint::Kind::Edge:
      return std::abs(a.t - b.t) * s.edges[a.id].length <= eps_len;
    case SurfacePoint::Kind::Face:
      return dist(a.uv, b.uv) <= eps_len;
  }
  return false;
}

double total_angle_at(const PolyhedralSurface& s, const SurfacePoint& p) {
  if (p.kind == SurfacePoint::Kind::Vertex)
    return s.vertices[p.id].cone_angle;
  return 2.0 * kPi;
}

std::pair<int, Iso2> map_face(const PolyhedralSurface& s,
                              const std::vector<int>& perm, int face) {
  const Face& f = s.faces[face];
  std::vector<int> img;
  for (int v : f.vertices) img.push_back(perm[v]);
  std::vector<int> key = img;
  std::sort(key.begin(), key.end());
  for (const Face& g : s.faces) {
    std::vector<int> gs = g.vertices;
    std::sort(gs.begin(), gs.end());
    if (gs != key) continue;
    // Corner correspondence: corner i of f maps to the corner of g holding
    // perm[f.vertices[i]].
    std::array<Vec2, 3> from, to;
    for (int i = 0; i < 3; ++i) {
      from[i] = f.chart[i];
      int c = g.corner_of(img[i]);
      if (c < 0) throw Error("map_face: corner mismatch");
      to[i] = g.chart[c];
    }
    return {g.id, Iso2::map_triangle(from[0], from[1], from[2], to[0], to[1],
                                     to[2])};
  }
  throw Error("map_face: permutation does not preserve faces");
}

SurfacePoint map_point(const PolyhedralSurface& s,
                       const std::vector<int>& perm, const SurfacePoint& p) {
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex:
      return SurfacePoint::vertex(perm[p.id]);
    case SurfacePoint::Kind::Edge: {
      const EdgeInfo& e = s.edges[p.id];
      int f = e.half[0].face;
      Vec2 uv = point_in_face(s, p, f);
      auto [g, iso] = map_face(s, perm, f);
      return canonical_point(s, g, iso.apply(uv));
    }
    case SurfacePoint::Kind::Face: {
      auto [g, iso] = map_face(s, perm, p.id);
      return canonical_point(s, g, iso.apply(p.uv));
    }
  }
  throw Error("map_point: bad kind");
}

std::string point_to_string(const SurfacePoint& p) {
  std::ostringstream os;
  switch (p.kind) {
    case SurfacePoint::Kind::Vertex:
      os << "v" << p.id;
      break;
    case SurfacePoint::Kind::Edge:
      os << "e" << p.id << ":" << p.t;
      break;
    case SurfacePoint::Kind::Face:
      os << "f" << p.id << ":" << p.uv.x << "," << p.uv.y;
      break;
  }
  return os.str();
}

}  // namespace cuboct
