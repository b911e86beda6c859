#pragma once

// Small planar geometry kit used by the intrinsic-surface machinery.
// Everything lives in face-chart coordinates: 2D vectors, orientation-aware
// isometries, segment predicates, direction cones (funnels) and convex
// polygon clipping.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuboct {

inline constexpr double kPi = 3.14159265358979323846;

struct Tolerances {
  double eps_len = 1e-9;  // length comparisons
  double eps_ang = 1e-9;  // angle comparisons
  double snap = 1e-6;     // snapping tolerance for the pi/12 angle grid
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Vectors

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }  // rotate +90 degrees

inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  if (n == 0.0) throw Error("normalized: zero vector");
  return a / n;
}

inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

// Wrap an angle into [0, period).
inline double wrap_angle(double a, double period = 2.0 * kPi) {
  double r = std::fmod(a, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

// Counterclockwise angle from a to b, in [0, 2*pi).
inline double ccw_angle(Vec2 a, Vec2 b) {
  return wrap_angle(std::atan2(cross(a, b), dot(a, b)));
}

// Signed angle from a to b in (-pi, pi].
inline double signed_angle(Vec2 a, Vec2 b) {
  return std::atan2(cross(a, b), dot(a, b));
}

inline Vec2 rotate(Vec2 v, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// ---------------------------------------------------------------------------
// Planar isometries: x -> M x + t with M orthogonal (det = +-1).

struct Iso2 {
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
  Vec2 t{0.0, 0.0};

  Vec2 apply(Vec2 p) const {
    return {m00 * p.x + m01 * p.y + t.x, m10 * p.x + m11 * p.y + t.y};
  }
  Vec2 apply_dir(Vec2 d) const {
    return {m00 * d.x + m01 * d.y, m10 * d.x + m11 * d.y};
  }
  double det() const { return m00 * m11 - m01 * m10; }

  // this ∘ inner (apply inner first).
  Iso2 compose(const Iso2& inner) const {
    Iso2 r;
    r.m00 = m00 * inner.m00 + m01 * inner.m10;
    r.m01 = m00 * inner.m01 + m01 * inner.m11;
    r.m10 = m10 * inner.m00 + m11 * inner.m10;
    r.m11 = m10 * inner.m01 + m11 * inner.m11;
    r.t = apply(inner.t);
    return r;
  }

  Iso2 inverse() const {
    // Orthogonal: inverse of M is its transpose divided by det sign handling;
    // for orthogonal M, M^-1 = M^T when det=+1 and still M^T when det=-1.
    Iso2 r;
    r.m00 = m00;
    r.m01 = m10;
    r.m10 = m01;
    r.m11 = m11;
    Vec2 mt = {r.m00 * t.x + r.m01 * t.y, r.m10 * t.x + r.m11 * t.y};
    r.t = -mt;
    return r;
  }

  static Iso2 identity() { return {}; }

  static Iso2 translate(Vec2 d) {
    Iso2 r;
    r.t = d;
    return r;
  }

  static Iso2 rotation(double theta, Vec2 center = {0.0, 0.0}) {
    Iso2 r;
    r.m00 = std::cos(theta);
    r.m01 = -std::sin(theta);
    r.m10 = std::sin(theta);
    r.m11 = std::cos(theta);
    r.t = center - r.apply_dir(center);
    return r;
  }

  // Orientation-preserving isometry mapping segment (a0,a1) to (b0,b1).
  // Segment lengths must agree.
  static Iso2 map_segment(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    Vec2 da = a1 - a0, db = b1 - b0;
    double la = norm(da), lb = norm(db);
    if (la == 0.0 || lb == 0.0) throw Error("map_segment: degenerate segment");
    if (std::abs(la - lb) > 1e-7 * (la + lb))
      throw Error("map_segment: length mismatch");
    double theta = signed_angle(da, db);
    Iso2 r = rotation(theta);
    r.t = b0 - r.apply_dir(a0);
    return r;
  }

  // Isometry (possibly orientation-reversing) mapping a0,a1,a2 -> b0,b1,b2.
  static Iso2 map_triangle(Vec2 a0, Vec2 a1, Vec2 a2, Vec2 b0, Vec2 b1,
                           Vec2 b2) {
    Iso2 r = map_segment(a0, a1, b0, b1);
    if (dist(r.apply(a2), b2) < 1e-7) return r;
    // Reflect across the image segment line.
    Vec2 d = normalized(b1 - b0);
    Iso2 refl;
    refl.m00 = d.x * d.x - d.y * d.y;
    refl.m01 = 2.0 * d.x * d.y;
    refl.m10 = 2.0 * d.x * d.y;
    refl.m11 = d.y * d.y - d.x * d.x;
    refl.t = b0 - refl.apply_dir(b0);
    Iso2 rr = refl.compose(r);
    if (dist(rr.apply(a2), b2) > 1e-7)
      throw Error("map_triangle: triangles not congruent");
    return rr;
  }
};

// ---------------------------------------------------------------------------
// Segments

struct Seg2 {
  Vec2 a, b;
  double length() const { return dist(a, b); }
};

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double L2 = norm2(ab);
  if (L2 == 0.0) return dist(p, a);
  double s = dot(p - a, ab) / L2;
  s = std::clamp(s, 0.0, 1.0);
  return dist(p, a + s * ab);
}

// Intersection of segments [a,b] and [c,d].
struct SegIntersection {
  enum class Kind { None, Point, Overlap } kind = Kind::None;
  double s = 0.0, t = 0.0;  // parameters on [a,b] and [c,d] for Point
  Vec2 point{};
  // overlap interval on [a,b]
  double s0 = 0.0, s1 = 0.0;
};

inline SegIntersection segment_intersection(Vec2 a, Vec2 b, Vec2 c, Vec2 d,
                                            double eps) {
  SegIntersection out;
  Vec2 r = b - a, s = d - c;
  double denom = cross(r, s);
  double scale = std::max({norm(r), norm(s), 1e-30});
  if (std::abs(denom) > eps * scale * scale) {
    double u = cross(c - a, s) / denom;
    double v = cross(c - a, r) / denom;
    double tol_u = eps / std::max(norm(r), 1e-30);
    double tol_v = eps / std::max(norm(s), 1e-30);
    if (u >= -tol_u && u <= 1.0 + tol_u && v >= -tol_v && v <= 1.0 + tol_v) {
      out.kind = SegIntersection::Kind::Point;
      out.s = u;
      out.t = v;
      out.point = a + u * r;
    }
    return out;
  }
  // Parallel: check collinearity by distance of c from line(a,b).
  if (norm(r) < eps) {
    if (point_segment_distance(a, c, d) < eps) {
      out.kind = SegIntersection::Kind::Point;
      out.point = a;
      out.s = 0.0;
      out.t = dot(a - c, s) / std::max(norm2(s), 1e-30);
    }
    return out;
  }
  double off = std::abs(cross(c - a, r)) / norm(r);
  if (off > eps) return out;
  // Collinear: project.
  double L2 = norm2(r);
  double t0 = dot(c - a, r) / L2;
  double t1 = dot(d - a, r) / L2;
  double lo = std::min(t0, t1), hi = std::max(t0, t1);
  double beg = std::max(0.0, lo), end = std::min(1.0, hi);
  double tol = eps / norm(r);
  if (end < beg - tol) return out;
  if (end - beg <= tol) {
    out.kind = SegIntersection::Kind::Point;
    out.s = std::clamp(0.5 * (beg + end), 0.0, 1.0);
    out.point = a + out.s * r;
    out.t = dot(out.point - c, s) / std::max(norm2(s), 1e-30);
    return out;
  }
  out.kind = SegIntersection::Kind::Overlap;
  out.s0 = beg;
  out.s1 = end;
  return out;
}

// ---------------------------------------------------------------------------
// Direction cones (funnels): directions between lo and hi going CCW,
// always spanning less than pi.

struct DirCone {
  Vec2 lo, hi;  // unit vectors

  bool contains(Vec2 d, double eps = 0.0) const {
    return cross(lo, d) >= -eps && cross(d, hi) >= -eps;
  }
  double width() const { return ccw_angle(lo, hi); }
};

// Cone of directions from the origin towards points of segment [a,b].
// Returns nullopt when the origin lies (nearly) on the segment's line,
// i.e. the cone is degenerate.
inline std::optional<DirCone> cone_of_segment(Vec2 a, Vec2 b, double eps) {
  double na = norm(a), nb = norm(b);
  if (na < eps || nb < eps) return std::nullopt;
  Vec2 da = a / na, db = b / nb;
  double cr = cross(da, db);
  if (std::abs(cr) < 1e-14) return std::nullopt;
  if (cr > 0.0) return DirCone{da, db};
  return DirCone{db, da};
}

inline std::optional<DirCone> intersect_cones(const DirCone& c1,
                                              const DirCone& c2) {
  Vec2 lo = c1.lo, hi = c1.hi;
  if (cross(lo, c2.lo) > 0.0) lo = c2.lo;
  if (cross(c2.hi, hi) > 0.0) hi = c2.hi;
  if (cross(lo, hi) <= 1e-15) return std::nullopt;
  DirCone out{lo, hi};
  // Guard against disjoint cones that wrap around.
  if (!c1.contains(lo, 1e-12) || !c2.contains(lo, 1e-12)) return std::nullopt;
  if (!c1.contains(hi, 1e-12) || !c2.contains(hi, 1e-12)) return std::nullopt;
  return out;
}

// Clip segment [a,b] to the part visible inside the cone from the origin.
inline std::optional<Seg2> clip_segment_to_cone(Vec2 a, Vec2 b,
                                                const DirCone& cone) {
  // Points p = a + t (b-a) with cross(lo,p) >= 0 and cross(p,hi) >= 0.
  double t0 = 0.0, t1 = 1.0;
  auto clip = [&](Vec2 n, double side) {
    // keep side * cross(n, p) >= 0  <=>  side * dot(perp(n), p) >= 0
    Vec2 h = perp(n) * side;
    double fa = dot(h, a), fb = dot(h, b);
    double da = fb - fa;
    if (std::abs(da) < 1e-300) {
      if (fa < 0.0) t0 = 1.0, t1 = 0.0;
      return;
    }
    double tc = -fa / da;
    if (da > 0.0)
      t0 = std::max(t0, tc);
    else
      t1 = std::min(t1, tc);
  };
  clip(cone.lo, 1.0);
  clip(cone.hi, -1.0);
  if (t0 > t1) return std::nullopt;
  return Seg2{a + t0 * (b - a), a + t1 * (b - a)};
}

// ---------------------------------------------------------------------------
// Convex polygons, CCW vertex lists.

using Polygon = std::vector<Vec2>;

inline double polygon_area(const Polygon& p) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % p.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

inline Vec2 polygon_centroid(const Polygon& p) {
  Vec2 c{0, 0};
  for (const Vec2& v : p) c = c + v;
  return c / double(p.size());
}

// Keep the part of poly with dot(n, x - p0) >= -keep_eps.
inline Polygon clip_halfplane(const Polygon& poly, Vec2 p0, Vec2 n,
                              double keep_eps) {
  Polygon out;
  size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    Vec2 a = poly[i], b = poly[(i + 1) % m];
    double fa = dot(n, a - p0), fb = dot(n, b - p0);
    bool ina = fa >= -keep_eps, inb = fb >= -keep_eps;
    if (ina) out.push_back(a);
    if (ina != inb) {
      double t = fa / (fa - fb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

inline bool point_in_convex(const Polygon& poly, Vec2 p, double eps) {
  size_t m = poly.size();
  if (m < 3) return false;
  for (size_t i = 0; i < m; ++i) {
    Vec2 a = poly[i], b = poly[(i + 1) % m];
    if (cross(b - a, p - a) < -eps * std::max(norm(b - a), 1e-30)) return false;
  }
  return true;
}

// Split a convex polygon by the full chord [c0,c1] (endpoints on the
// boundary). Returns {left-of(c0->c1), right-of(c0->c1)} pieces.
inline std::pair<Polygon, Polygon> split_convex_by_chord(const Polygon& poly,
                                                         Vec2 c0, Vec2 c1) {
  Vec2 n = perp(normalized(c1 - c0));
  Polygon left = clip_halfplane(poly, c0, n, 1e-12);
  Polygon right = clip_halfplane(poly, c0, -n, 1e-12);
  return {left, right};
}

// Snap x to the k*(pi/12) grid; returns nullopt if farther than tol.
inline std::optional<int> snap_to_pi12(double x, double tol) {
  double step = kPi / 12.0;
  double k = std::round(x / step);
  if (std::abs(x - k * step) > tol) return std::nullopt;
  return int(k);
}

}  // namespace cuboct
