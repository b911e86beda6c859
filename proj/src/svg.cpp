#include "cuboct/svg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cuboct {

namespace {

constexpr const char* kFaceStyle =
    "fill:#f2f2ee;stroke:#b0b0a8;stroke-width:0.008";
constexpr const char* kEdgeStyle = "stroke:#1f4e96;stroke-width:0.016;fill:none";
constexpr const char* kRayStyle = "stroke:#b03030;stroke-width:0.012;fill:none";
constexpr const char* kDiscStyle =
    "stroke:#b03030;stroke-width:0.012;fill:none;stroke-dasharray:0.05,0.03";
constexpr const char* kMarkStyle = "fill:#202020;stroke:none";

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void SvgWriter::include_point(Vec2 p) {
  minx_ = std::min(minx_, p.x);
  maxx_ = std::max(maxx_, p.x);
  miny_ = std::min(miny_, p.y);
  maxy_ = std::max(maxy_, p.y);
}

void SvgWriter::line(Vec2 a, Vec2 b, const std::string& style) {
  include_point(a);
  include_point(b);
  body_ += "<line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(-a.y) + "\" x2=\"" +
           fmt(b.x) + "\" y2=\"" + fmt(-b.y) + "\" style=\"" + style + "\"/>\n";
}

void SvgWriter::polyline(const std::vector<Vec2>& pts,
                         const std::string& style) {
  if (pts.empty()) return;
  body_ += "<polyline points=\"";
  for (const Vec2& p : pts) {
    include_point(p);
    body_ += fmt(p.x) + "," + fmt(-p.y) + " ";
  }
  body_ += "\" style=\"" + style + "\"/>\n";
}

void SvgWriter::polygon(const Polygon& poly, const std::string& style) {
  if (poly.empty()) return;
  body_ += "<polygon points=\"";
  for (const Vec2& p : poly) {
    include_point(p);
    body_ += fmt(p.x) + "," + fmt(-p.y) + " ";
  }
  body_ += "\" style=\"" + style + "\"/>\n";
}

void SvgWriter::circle(Vec2 center, double r, const std::string& style) {
  include_point(center + Vec2{r, r});
  include_point(center - Vec2{r, r});
  body_ += "<circle cx=\"" + fmt(center.x) + "\" cy=\"" + fmt(-center.y) +
           "\" r=\"" + fmt(r) + "\" style=\"" + style + "\"/>\n";
}

void SvgWriter::text(Vec2 at, const std::string& label, double size) {
  include_point(at);
  body_ += "<text x=\"" + fmt(at.x) + "\" y=\"" + fmt(-at.y) +
           "\" font-size=\"" + fmt(size) + "\" font-family=\"sans-serif\">" +
           label + "</text>\n";
}

std::string SvgWriter::str() const {
  double pad = 0.15;
  double x = minx_ - pad, y = -(maxy_ + pad);
  double w = maxx_ - minx_ + 2 * pad, h = maxy_ - miny_ + 2 * pad;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(x) << " "
     << fmt(y) << " " << fmt(w) << " " << fmt(h) << "\" width=\"640\">\n"
     << body_ << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Placement of a face chart into the fan frame of a vertex.
Iso2 fan_placement(const PolyhedralSurface& s, int v, int face) {
  const FanEntryRef& fe = s.fan_entry(v, face);
  const Face& f = s.faces[face];
  Vec2 corner = f.chart[fe.corner];
  Vec2 start = normalized(f.chart[(fe.corner + 1) % f.size()] - corner);
  return Iso2::rotation(fe.wedge_start - angle_of(start))
      .compose(Iso2::translate(-1.0 * corner));
}

void draw_face(SvgWriter& svg, const PolyhedralSurface& s, int face,
               const Iso2& T, const std::string& style) {
  Polygon poly;
  for (const Vec2& c : s.faces[face].chart) poly.push_back(T.apply(c));
  svg.polygon(poly, style);
}

FaceEdgeRef shared_ref(const PolyhedralSurface& s, int from, int to) {
  const Face& f = s.faces[from];
  for (int i = 0; i < f.size(); ++i)
    if (s.twin({from, i}).face == to) return {from, i};
  throw Error("svg: faces not glued");
}

}  // namespace

std::string render_fan_svg(const PolyhedralSurface& s, int vertex,
                           const Tolerances& tol) {
  SvgWriter svg;
  auto fan = vertex_fan(s, vertex, tol);

  // Face strips under each geodesic, then the rays on top.
  for (const FanEntry& fe : fan) {
    Iso2 T = fan_placement(s, vertex, fe.seg.faces.front());
    draw_face(svg, s, fe.seg.faces.front(), T, kFaceStyle);
    for (size_t k = 0; k + 1 < fe.seg.faces.size(); ++k) {
      FaceEdgeRef ref = shared_ref(s, fe.seg.faces[k], fe.seg.faces[k + 1]);
      T = T.compose(s.gluing(ref));
      draw_face(svg, s, fe.seg.faces[k + 1], T, kFaceStyle);
    }
  }
  for (const FanEntry& fe : fan) {
    Vec2 tip = rotate({fe.seg.length, 0.0}, fe.phi);
    svg.line({0, 0}, tip, kEdgeStyle);
    svg.circle(tip, 0.02, kMarkStyle);
    svg.text(tip + Vec2{0.03, 0.03}, "v" + std::to_string(fe.target));
  }
  svg.circle({0, 0}, 0.025, kMarkStyle);
  svg.text({0.04, 0.04}, "v" + std::to_string(vertex));
  return svg.str();
}

std::string render_triangulation_svg(const PolyhedralSurface& s,
                                     const GeodesicTriangulation& T,
                                     const Tolerances& tol) {
  (void)tol;
  SvgWriter svg;
  // Spanning-tree net over all faces.
  std::map<int, Iso2> placement;
  std::vector<int> order{0};
  placement[0] = Iso2::identity();
  for (size_t h = 0; h < order.size(); ++h) {
    int f = order[h];
    for (int i = 0; i < s.faces[f].size(); ++i) {
      int g = s.twin({f, i}).face;
      if (placement.count(g)) continue;
      placement[g] = placement[f].compose(s.gluing({f, i}));
      order.push_back(g);
    }
  }
  for (int f : order) draw_face(svg, s, f, placement[f], kFaceStyle);
  for (const TriEdge& e : T.edges)
    for (size_t k = 0; k < e.geo.faces.size(); ++k) {
      const Iso2& P = placement[e.geo.faces[k]];
      svg.line(P.apply(e.geo.local_segments[k].a),
               P.apply(e.geo.local_segments[k].b), kEdgeStyle);
    }
  for (size_t v = 0; v < T.vertices.size(); ++v) {
    int f = owning_faces(s, T.vertices[v]).front();
    Vec2 at = placement[f].apply(point_in_face(s, T.vertices[v], f));
    svg.circle(at, 0.02, kMarkStyle);
    svg.text(at + Vec2{0.03, 0.03}, std::to_string(v));
  }
  return svg.str();
}

std::string render_c5_svg(const PolyhedralSurface& s,
                          const C5Configuration& c5, int diameter_index,
                          const Tolerances& tol) {
  (void)tol;
  SvgWriter svg;
  // Net of all faces, cycle edges bold, the Thales disc over one cycle edge
  // drawn in the chart of a face containing both endpoints' images.
  std::map<int, Iso2> placement;
  std::vector<int> order{c5.edges[0].faces.front()};
  placement[order[0]] = Iso2::identity();
  for (size_t h = 0; h < order.size(); ++h) {
    int f = order[h];
    for (int i = 0; i < s.faces[f].size(); ++i) {
      int g = s.twin({f, i}).face;
      if (placement.count(g)) continue;
      placement[g] = placement[f].compose(s.gluing({f, i}));
      order.push_back(g);
    }
  }
  for (int f : order) draw_face(svg, s, f, placement[f], kFaceStyle);
  for (const GeodesicSegment& e : c5.edges)
    for (size_t k = 0; k < e.faces.size(); ++k) {
      const Iso2& P = placement[e.faces[k]];
      svg.line(P.apply(e.local_segments[k].a),
               P.apply(e.local_segments[k].b), kEdgeStyle);
    }
  for (int i = 0; i < 5; ++i) {
    int v = c5.verts[i];
    int f = s.vertices[v].fan.front().face;
    Vec2 at = placement[f].apply(
        s.faces[f].chart[s.faces[f].corner_of(v)]);
    svg.circle(at, 0.02, kMarkStyle);
    svg.text(at + Vec2{0.03, 0.03}, "v" + std::to_string(v));
  }
  // Disc with diameter (v_i, v_{i+1}): straight chart segment, as in the
  // final containment step.
  int i = diameter_index % 5;
  int va = c5.verts[i], vb = c5.verts[(i + 1) % 5];
  const GeodesicSegment& ge = c5.edges[i];
  int f0 = ge.faces.front(), f1 = ge.faces.back();
  Vec2 pa = placement[f0].apply(point_in_face(s, SurfacePoint::vertex(va), f0));
  Vec2 pb = placement[f1].apply(point_in_face(s, SurfacePoint::vertex(vb), f1));
  svg.line(pa, pb, kDiscStyle);
  svg.circle(0.5 * (pa + pb), 0.5 * dist(pa, pb), kDiscStyle);
  return svg.str();
}

std::string render_case_svg(const PolyhedralSurface& s, int v1, int v2,
                            int tie_index, int side, const Tolerances& tol) {
  auto ties = shortest_geodesics(s, SurfacePoint::vertex(v1),
                                 SurfacePoint::vertex(v2), 8, tol);
  if (tie_index < 0 || tie_index >= int(ties.size()))
    throw Error("render_case_svg: tie index out of range");
  const GeodesicSegment& g = ties[tie_index];

  SvgWriter svg;
  // Strip of the base geodesic.
  Iso2 T = fan_placement(s, v1, g.faces.front());
  std::vector<Iso2> placements{T};
  draw_face(svg, s, g.faces.front(), T, kFaceStyle);
  for (size_t k = 0; k + 1 < g.faces.size(); ++k) {
    FaceEdgeRef ref = shared_ref(s, g.faces[k], g.faces[k + 1]);
    T = T.compose(s.gluing(ref));
    placements.push_back(T);
    draw_face(svg, s, g.faces[k + 1], T, kFaceStyle);
  }
  for (size_t k = 0; k < g.faces.size(); ++k)
    svg.line(placements[k].apply(g.local_segments[k].a),
             placements[k].apply(g.local_segments[k].b), kEdgeStyle);

  // Rays at 5*pi/12 from both endpoints, on the requested side.
  Vec2 base_from =
      placements.front().apply(g.local_segments.front().a);
  Vec2 base_to = placements.back().apply(g.local_segments.back().b);
  Vec2 d_from = placements.front().apply_dir(normalized(
      g.local_segments.front().b - g.local_segments.front().a));
  Vec2 d_to = placements.back().apply_dir(
      normalized(g.local_segments.back().a - g.local_segments.back().b));
  double a = 5.0 * kPi / 12.0 * (side >= 0 ? 1.0 : -1.0);
  svg.line(base_from, base_from + 2.0 * rotate(d_from, a), kRayStyle);
  svg.line(base_to, base_to + 2.0 * rotate(d_to, -a), kRayStyle);
  svg.circle(base_from, 0.02, kMarkStyle);
  svg.circle(base_to, 0.02, kMarkStyle);
  svg.text(base_from + Vec2{0.03, 0.03}, "v" + std::to_string(v1));
  svg.text(base_to + Vec2{0.03, 0.03}, "v" + std::to_string(v2));
  return svg.str();
}

}  // namespace cuboct
