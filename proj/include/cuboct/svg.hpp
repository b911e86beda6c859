#pragma once

// SVG figure output: unfolded fans, triangulation nets and C5/apex panels.
// Documentation artifacts only; nothing downstream parses these files.

#include <string>

#include "cuboct/minimality.hpp"
#include "cuboct/triangulation.hpp"

namespace cuboct {

class SvgWriter {
 public:
  void line(Vec2 a, Vec2 b, const std::string& style);
  void polyline(const std::vector<Vec2>& pts, const std::string& style);
  void polygon(const Polygon& poly, const std::string& style);
  void circle(Vec2 center, double r, const std::string& style);
  void text(Vec2 at, const std::string& label, double size = 0.08);
  std::string str() const;

 private:
  void include_point(Vec2 p);
  std::string body_;
  double minx_ = 1e30, miny_ = 1e30, maxx_ = -1e30, maxy_ = -1e30;
};

// The 20 geodesics out of a vertex, drawn in its cone chart (fan frame).
std::string render_fan_svg(const PolyhedralSurface& s, int vertex,
                           const Tolerances& tol = {});

// A spanning-tree net of all faces with the triangulation edges and
// labeled vertices drawn per face copy.
std::string render_triangulation_svg(const PolyhedralSurface& s,
                                     const GeodesicTriangulation& T,
                                     const Tolerances& tol = {});

// One side of a C5 configuration: region net, cycle edges and the Thales
// disc over one cycle edge.
std::string render_c5_svg(const PolyhedralSurface& s,
                          const C5Configuration& c5, int diameter_index = 4,
                          const Tolerances& tol = {});

// A base geodesic between two vertices with the rays at 5*pi/12 from both
// endpoints on one side.
std::string render_case_svg(const PolyhedralSurface& s, int v1, int v2,
                            int tie_index, int side,
                            const Tolerances& tol = {});

}  // namespace cuboct
