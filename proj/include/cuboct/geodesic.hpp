#pragma once

// The unfolding engine: enumerate all shortest geodesics between surface
// points, trace straight rays, and measure angles between geodesic
// directions in the cone chart at any point.
//
// Shortest paths are found by exhaustive backtrack-free face-sequence
// enumeration with unfold-and-clip validation. A funnel of admissible
// directions prunes sequences that cannot carry a straight segment, and a
// point-to-window lower bound prunes sequences that cannot beat the current
// best length, so the tie set is provably complete.

#include <optional>
#include <vector>

#include "cuboct/surface.hpp"

namespace cuboct {

struct UnfoldedChart {
  std::vector<int> face_sequence;
  std::vector<Iso2> placement;     // face chart -> plane of the first face
  std::vector<Seg2> shared_edges;  // unfolded, size = faces - 1
};

UnfoldedChart unfold(const PolyhedralSurface& s, const std::vector<int>& faces);

struct GeodesicSegment {
  SurfacePoint from, to;
  std::vector<int> faces;               // face sequence
  std::vector<Seg2> local_segments;     // per face, in that face's own chart
  std::vector<SurfacePoint> crossings;  // canonical edge points, faces-1 many
  double length = 0.0;
};

// Thrown when the enumeration hit the face budget while sequences that could
// still carry a tie were alive.
struct MaxFacesError : Error {
  explicit MaxFacesError(const std::string& msg) : Error(msg) {}
};

// All globally shortest segments from p to q (ties within tol.eps_len),
// sorted by (length, face sequence), duplicates removed.
std::vector<GeodesicSegment> shortest_geodesics(const PolyhedralSurface& s,
                                                const SurfacePoint& p,
                                                const SurfacePoint& q,
                                                int max_faces = 8,
                                                const Tolerances& tol = {});

// The tied shortest segment traversing the witness face; errors if the
// witness matches none or several of the ties.
GeodesicSegment geodesic_between(const PolyhedralSurface& s,
                                 const SurfacePoint& p, const SurfacePoint& q,
                                 int witness_face, int max_faces = 8,
                                 const Tolerances& tol = {});

struct DirectionCoordinate {
  SurfacePoint base;
  double phi = 0.0;    // in [0, total)
  double total = 0.0;  // cone angle at vertices, 2*pi elsewhere
};

DirectionCoordinate direction_at(const PolyhedralSurface& s,
                                 const GeodesicSegment& seg, bool at_from,
                                 const Tolerances& tol = {});

// Angular coordinate of a chart direction at a point (face must own p).
double point_phi(const PolyhedralSurface& s, const SurfacePoint& p, int face,
                 Vec2 dir);
// Inverse: (face, chart direction) realizing coordinate phi at p.
std::pair<int, Vec2> point_direction(const PolyhedralSurface& s,
                                     const SurfacePoint& p, double phi);

// The smaller of the two wedge angles between two directions at a point.
double angle_between(const PolyhedralSurface& s, const DirectionCoordinate& d1,
                     const DirectionCoordinate& d2,
                     const Tolerances& tol = {});

// The wedge angle at `common` between seg1 and seg2 on the side containing
// the witness point; may exceed pi. Errors when the witness direction lies
// on a wedge boundary.
double interior_angle(const PolyhedralSurface& s, const GeodesicSegment& seg1,
                      const GeodesicSegment& seg2, const SurfacePoint& common,
                      const SurfacePoint& witness, const Tolerances& tol = {});

// Point at the given arc length along a segment (0 = from, length = to).
SurfacePoint point_at_arc(const PolyhedralSurface& s,
                          const GeodesicSegment& seg, double arc,
                          double eps_len = 1e-9);

struct FanEntry {
  GeodesicSegment seg;
  int target = -1;
  double phi = 0.0;
  double gap_after = 0.0;  // angle to the next fan direction, CCW
};

// All vertex-to-vertex shortest segments out of u, sorted by direction,
// with consecutive gap angles (gaps sum to the cone angle).
std::vector<FanEntry> vertex_fan(const PolyhedralSurface& s, int u,
                                 const Tolerances& tol = {});

enum class IntersectKind { Disjoint, SharedEndpoint, Crossing, Overlap };

struct Intersection {
  IntersectKind kind = IntersectKind::Disjoint;
  std::vector<SurfacePoint> points;  // crossing points / shared endpoints
};

Intersection segments_intersect(const PolyhedralSurface& s,
                                const GeodesicSegment& s1,
                                const GeodesicSegment& s2,
                                const Tolerances& tol = {});

struct ConePointHit : Error {
  double arc_length;
  int vertex;
  ConePointHit(double arc, int v)
      : Error("ray hits cone point (vertex " + std::to_string(v) +
              ") at arc length " + std::to_string(arc)),
        arc_length(arc),
        vertex(v) {}
};

struct TracedPath {
  std::vector<int> faces;
  std::vector<Seg2> local_segments;
  SurfacePoint endpoint;
  double length = 0.0;
};

// Straight path of the given length from `start` in direction `dir`.
// Throws ConePointHit when the ray runs into a surface vertex strictly
// before its end.
TracedPath trace_ray(const PolyhedralSurface& s, const SurfacePoint& start,
                     const DirectionCoordinate& dir, double length,
                     const Tolerances& tol = {});

}  // namespace cuboct
