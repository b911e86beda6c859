#pragma once

// Intrinsic model of a convex polyhedral surface: planar faces glued along
// edges, per-vertex cone structure, and 1-skeleton queries. No global 3D
// embedding is kept; all geometry lives in per-face charts.

#include <map>
#include <string>
#include <vector>

#include "cuboct/geom.hpp"

namespace cuboct {

// Directed face edge: from corner `index` to corner `index+1` of face `face`.
struct FaceEdgeRef {
  int face = -1;
  int index = -1;
  bool operator==(const FaceEdgeRef& o) const {
    return face == o.face && index == o.index;
  }
  bool operator<(const FaceEdgeRef& o) const {
    return face != o.face ? face < o.face : index < o.index;
  }
};

struct Face {
  int id = -1;
  std::vector<int> vertices;  // corner vertex ids, CCW
  Polygon chart;              // corner positions, CCW, same order
  std::string shape;          // "triangle" | "square"

  int size() const { return int(vertices.size()); }
  int corner_of(int vertex) const;  // -1 if absent
};

struct EdgeInfo {
  int id = -1;
  int u = -1, v = -1;    // endpoints along the canonical direction
  FaceEdgeRef half[2];   // half[0] = canonical (lowest face,index), half[1] = twin
  double length = 0.0;
};

struct FanEntryRef {
  int face = -1;
  int corner = -1;
  double wedge_start = 0.0;  // angle of the wedge start in the vertex frame
  double wedge_angle = 0.0;
  int out_edge = -1;  // skeleton edge along the wedge start direction
};

struct VertexStar {
  int vertex = -1;
  std::vector<FanEntryRef> fan;  // CCW, wedge_start of fan[0] == 0
  double cone_angle = 0.0;
  int reference_edge = -1;  // lowest incident edge id; its direction is phi=0
};

// Canonical location of a point on the surface.
struct SurfacePoint {
  enum class Kind { Vertex, Edge, Face };
  Kind kind = Kind::Vertex;
  int id = 0;       // vertex / edge / face id
  double t = 0.0;   // edge parameter in (0,1) along the canonical direction
  Vec2 uv{};        // face-chart coordinates for Kind::Face

  static SurfacePoint vertex(int v) { return {Kind::Vertex, v, 0.0, {}}; }
  static SurfacePoint edge(int e, double t) { return {Kind::Edge, e, t, {}}; }
  static SurfacePoint face(int f, Vec2 uv) { return {Kind::Face, f, 0.0, uv}; }
};

class PolyhedralSurface {
 public:
  std::vector<Face> faces;
  std::vector<EdgeInfo> edges;
  std::vector<VertexStar> vertices;
  double edge_length = 1.0;

  int vertex_count() const { return int(vertices.size()); }
  int edge_count() const { return int(edges.size()); }
  int face_count() const { return int(faces.size()); }

  // Edge id of the directed face edge; -1 if out of range.
  int edge_id(FaceEdgeRef ref) const { return edge_of_ref_.at(key(ref)); }
  // Twin of a directed face edge (the matching half on the other face).
  FaceEdgeRef twin(FaceEdgeRef ref) const;
  // Gluing isometry that places the twin face's chart across edge `ref`
  // into the plane of ref.face's chart.
  const Iso2& gluing(FaceEdgeRef ref) const { return gluing_.at(key(ref)); }

  const std::vector<int>& neighbors(int vertex) const {
    return adjacency_[vertex];
  }
  bool adjacent(int v, int w) const;
  // Skeleton edge id between two adjacent vertices, -1 otherwise.
  int skeleton_edge(int v, int w) const;

  Seg2 edge_chart_segment(FaceEdgeRef ref) const;

  // Fan entry of face f at vertex v (f must contain v).
  const FanEntryRef& fan_entry(int v, int f) const;

  // Angular coordinate of direction `dir` (in face f's chart) at vertex v.
  double vertex_phi(int v, int f, Vec2 dir) const;
  // Inverse: face and chart direction realizing angular coordinate phi.
  std::pair<int, Vec2> vertex_direction(int v, double phi) const;

  // Internal: called by builders after faces are set.
  void finalize();

 private:
  long key(FaceEdgeRef ref) const { return long(ref.face) * 64 + ref.index; }
  double edge_chart_segment_len(FaceEdgeRef ref) const;
  std::map<long, int> edge_of_ref_;
  std::map<long, Iso2> gluing_;
  std::vector<std::vector<int>> adjacency_;
};

// Build a surface from face combinatorics; every face is a regular polygon
// with the given side length. Face ids are positions in the list.
PolyhedralSurface build_from_faces(
    const std::vector<std::vector<int>>& face_vertices, double edge_length);

// The canonical unit-edge cuboctahedron: 12 vertices, 24 edges, 8 triangles
// and 6 squares, cone angle 5*pi/3 everywhere.
PolyhedralSurface build_cuboctahedron(double edge_length = 1.0);

int skeleton_distance(const PolyhedralSurface& s, int v, int w);
int antipode(const PolyhedralSurface& s, int v);

// All skeleton automorphisms that preserve the face structure (and hence
// extend to surface isometries), as vertex permutations, sorted.
std::vector<std::vector<int>> isometry_group(const PolyhedralSurface& s);

// --- SurfacePoint helpers ---

// Canonicalize a chart location: vertex if within eps of a corner, edge
// point if within eps of a boundary edge, face point otherwise.
SurfacePoint canonical_point(const PolyhedralSurface& s, int face, Vec2 uv,
                             double eps_len = 1e-9);

// Chart position of a point on face f; throws if the point is not on f.
Vec2 point_in_face(const PolyhedralSurface& s, const SurfacePoint& p, int f);

// Faces whose closed polygon contains the point (1 for face points,
// 2 for edge points, all incident faces for vertices).
std::vector<int> owning_faces(const PolyhedralSurface& s,
                              const SurfacePoint& p);

bool points_equal(const PolyhedralSurface& s, const SurfacePoint& a,
                  const SurfacePoint& b, double eps_len = 1e-9);

// Total angle at a point: cone angle at vertices, 2*pi elsewhere.
double total_angle_at(const PolyhedralSurface& s, const SurfacePoint& p);

// Image of a point under a vertex permutation from isometry_group.
SurfacePoint map_point(const PolyhedralSurface& s,
                       const std::vector<int>& perm, const SurfacePoint& p);

// Face image and the chart isometry induced by a vertex permutation.
std::pair<int, Iso2> map_face(const PolyhedralSurface& s,
                              const std::vector<int>& perm, int face);

std::string point_to_string(const SurfacePoint& p);

}  // namespace cuboct
