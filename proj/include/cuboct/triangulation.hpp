#pragma once

// Geodesic triangulations of the surface: data model, the 8-triangle
// non-obtuse and 12-triangle acute constructions, and the full verifier
// (complex validity, pairwise edge intersections, corner angles, per-vertex
// closure, Gauss-Bonnet ledger, acuteness classification).

#include <array>
#include <string>
#include <vector>

#include "cuboct/geodesic.hpp"

namespace cuboct {

struct TriEdge {
  int a = -1, b = -1;     // vertex indices into GeodesicTriangulation::vertices
  int witness_face = -1;  // disambiguates tied shortest geodesics
  GeodesicSegment geo;
};

struct GeodesicTriangulation {
  std::vector<SurfacePoint> vertices;
  std::vector<TriEdge> edges;
  std::vector<std::array<int, 3>> triangles;  // edge indices

  // The three corner vertex indices of a triangle, ascending.
  std::array<int, 3> triangle_vertices(int t) const;
};

struct EdgeSpec {
  int a = -1, b = -1;
  int witness_face = -1;  // -1: require a unique shortest geodesic
};

// Resolve edge geodesics and assemble the complex. Triangles are given as
// vertex triples and matched to edges by endpoint pair.
GeodesicTriangulation resolve_triangulation(
    const PolyhedralSurface& s, std::vector<SurfacePoint> vertices,
    const std::vector<EdgeSpec>& edge_specs,
    const std::vector<std::array<int, 3>>& triangle_vertex_triples,
    int max_faces = 8, const Tolerances& tol = {});

// The 8-triangle non-obtuse triangulation: a,b diagonal corners of a square
// face, their antipodes, and the two crossing points of the chosen
// antipodal geodesics. Every triangle has angles {pi/2, 5pi/12, 5pi/12}.
GeodesicTriangulation construct_nonobtuse8(const PolyhedralSurface& s,
                                           const Tolerances& tol = {});

// Same construction anchored at a chosen square face and diagonal (0 or 1);
// used to exercise isometry equivariance.
GeodesicTriangulation construct_nonobtuse8_at(const PolyhedralSurface& s,
                                              int square_face, int diagonal,
                                              const Tolerances& tol = {});

// Labels of the 12-triangle acute construction: the 4-cycle of square
// diagonals a'b'c'd', the flanking vertices a,b,c,d, the points a*..d* on
// the cycle, and the two regions the cycle bounds.
struct Acute12Frame {
  std::array<int, 4> cycle;         // a', b', c', d'
  std::array<int, 4> cycle_square;  // square holding diagonal (cycle[i], cycle[i+1])
  std::array<int, 4> named;         // a, b, c, d (a,c in region 0; b,d in region 1)
  std::array<SurfacePoint, 4> star; // a*, b*, c*, d*
  std::array<std::vector<int>, 2> region_faces;  // whole faces per region
  // Triangle incident to cycle vertex i lying in the given region.
  std::array<std::array<int, 2>, 4> cycle_triangle;
};

Acute12Frame acute12_frame(const PolyhedralSurface& s,
                           const Tolerances& tol = {});

// The 12-triangle acute triangulation on vertices {a,b,c,d,a*,b*,c*,d*}.
GeodesicTriangulation construct_acute12(const PolyhedralSurface& s,
                                        const Tolerances& tol = {});

struct CornerAngle {
  int triangle = -1;
  int vertex = -1;  // vertex index within the triangulation
  double angle = 0.0;
};

// The 3F corner angles, deterministic order (triangle, then vertex index).
std::vector<CornerAngle> corner_angles(const PolyhedralSurface& s,
                                       const GeodesicTriangulation& T,
                                       const Tolerances& tol = {});

struct VerificationReport {
  bool complex_ok = false;
  bool intersections_ok = false;
  bool angles_ok = false;
  bool closure_ok = false;
  bool gauss_bonnet_ok = false;
  std::string classification;  // "acute" | "non-obtuse" | "neither"
  double margin = 0.0;         // pi/2 - max corner angle
  std::vector<CornerAngle> angles;
  std::vector<double> triangle_excess;
  double total_excess = 0.0;
  std::vector<std::string> failures;

  bool valid() const {
    return complex_ok && intersections_ok && angles_ok && closure_ok &&
           gauss_bonnet_ok;
  }
};

VerificationReport verify(const PolyhedralSurface& s,
                          const GeodesicTriangulation& T,
                          const Tolerances& tol = {});

}  // namespace cuboct
