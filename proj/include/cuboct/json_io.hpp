#pragma once

// JSON encodings of the library's objects. Derived quantities (cone angles,
// gluings, geodesic traces) are never serialized; readers rebuild them.

#include "cuboct/minimality.hpp"
#include "json.hpp"

namespace cuboct {

nlohmann::json surface_to_json(const PolyhedralSurface& s);
PolyhedralSurface surface_from_json(const nlohmann::json& j);

nlohmann::json point_to_json(const SurfacePoint& p);
SurfacePoint point_from_json(const nlohmann::json& j);

nlohmann::json geodesic_to_json(const PolyhedralSurface& s,
                                const GeodesicSegment& g);

nlohmann::json triangulation_to_json(const GeodesicTriangulation& T);
// Re-resolves every edge from its endpoints and witness face.
GeodesicTriangulation triangulation_from_json(const PolyhedralSurface& s,
                                              const nlohmann::json& j,
                                              const Tolerances& tol = {});

nlohmann::json report_to_json(const VerificationReport& R);
nlohmann::json certificate_to_json(const Certificate& c);

// Parse a point literal: "v3", "e5:0.25" or "f2:0.3,0.4".
SurfacePoint parse_point(const PolyhedralSurface& s, const std::string& text);

}  // namespace cuboct
