#pragma once

// Machine-checkable certificates for the lower-bound results: no non-obtuse
// triangulation with fewer than 8 triangles, no acute triangulation with 8
// or 10 triangles, and parity exclusion of odd sizes.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cuboct/triangulation.hpp"
#include "json.hpp"

namespace cuboct {

// Abstract simplicial triangulation of the 2-sphere.
struct CombinatorialTriangulation {
  int num_vertices = 0;
  std::vector<std::array<int, 3>> faces;  // sorted triples, sorted list

  std::vector<std::pair<int, int>> edge_list() const;
  std::vector<int> degrees() const;          // per vertex
  std::vector<int> degree_sequence() const;  // sorted descending
  int min_degree() const;
};

// Isomorph-free exhaustive enumeration for F in {4, 6, 8, 10}; found by
// lexicographic backtracking over face sets with canonical-form rejection.
std::vector<CombinatorialTriangulation> enumerate_sphere_triangulations(int F);

struct Certificate {
  std::string claim;
  std::string verdict;  // "holds" | "fails" | "inconclusive"
  nlohmann::json evidence;
  Tolerances params;
};

// Odd sizes are impossible on a closed surface (2E = 3F).
Certificate check_size_parity(int F);

// Minimum number of corners at a point of the given total angle when every
// corner angle is at most (non-strict) or strictly below the cap.
int min_degree_bound(double total_angle, double angle_cap, bool strict);

Certificate check_nonobtuse_lower_bound(const PolyhedralSurface& s,
                                        const Tolerances& tol = {});

Certificate check_no_acute_8(const PolyhedralSurface& s,
                             const Tolerances& tol = {});

// Every 5-subset of the skeleton vertices contains >= 2 adjacent pairs.
// Returns (number of subsets scanned, minimum adjacent-pair count).
std::pair<int, int> adjacent_pair_scan(const PolyhedralSurface& s);

// An equatorial 5-cycle of surface vertices with chosen geodesic edges and
// both wedge angles at every cycle vertex.
struct C5Configuration {
  std::array<int, 5> verts;
  std::array<GeodesicSegment, 5> edges;  // edge i joins verts[i], verts[i+1]
  std::array<std::pair<double, double>, 5> side_angles;  // snapped wedges
};

// Exhaustive enumeration of admissible 5-cycles (angle window, edge filters,
// pairwise non-crossing), grouped into isometry orbits. `stats`, when given,
// receives enumeration counters (candidates, rejections, grazing cases).
std::vector<std::vector<C5Configuration>> enumerate_c5(
    const PolyhedralSurface& s, const Tolerances& tol = {},
    nlohmann::json* stats = nullptr);

Certificate check_apex_infeasible(const PolyhedralSurface& s,
                                  const C5Configuration& c5,
                                  const Tolerances& tol = {});

Certificate check_no_acute_10(const PolyhedralSurface& s,
                              const Tolerances& tol = {});

// Aggregate: parity 9/11, the acute-8 and acute-10 exclusions, and the two
// verified constructions; reports the minimal sizes 12 (acute) and
// 8 (non-obtuse).
Certificate main_theorem_report(const PolyhedralSurface& s,
                                const Tolerances& tol = {});

}  // namespace cuboct
