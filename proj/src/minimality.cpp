#include "cuboct/minimality.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace cuboct {

using nlohmann::json;

std::vector<std::pair<int, int>> CombinatorialTriangulation::edge_list()
    const {
  std::set<std::pair<int, int>> edges;
  for (const auto& f : faces) {
    edges.insert(std::minmax(f[0], f[1]));
    edges.insert(std::minmax(f[1], f[2]));
    edges.insert(std::minmax(f[0], f[2]));
  }
  return {edges.begin(), edges.end()};
}

std::vector<int> CombinatorialTriangulation::degrees() const {
  std::vector<int> deg(num_vertices, 0);
  for (const auto& [a, b] : edge_list()) {
    deg[a]++;
    deg[b]++;
  }
  return deg;
}

std::vector<int> CombinatorialTriangulation::degree_sequence() const {
  std::vector<int> deg = degrees();
  std::sort(deg.rbegin(), deg.rend());
  return deg;
}

int CombinatorialTriangulation::min_degree() const {
  auto deg = degrees();
  return *std::min_element(deg.begin(), deg.end());
}

// ---------------------------------------------------------------------------
// Sphere triangulation enumeration

namespace {

// Every edge in exactly two faces, every vertex link a single cycle,
// connected, Euler characteristic 2.
bool is_sphere_triangulation(const CombinatorialTriangulation& T) {
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& f : T.faces) {
    edge_count[std::minmax(f[0], f[1])]++;
    edge_count[std::minmax(f[1], f[2])]++;
    edge_count[std::minmax(f[0], f[2])]++;
  }
  for (auto& [e, c] : edge_count)
    if (c != 2) return false;
  int V = T.num_vertices, E = int(edge_count.size()), F = int(T.faces.size());
  if (V - E + F != 2) return false;

  // Vertex links: every link must be one cycle.
  for (int v = 0; v < V; ++v) {
    std::map<int, std::vector<int>> link;
    for (const auto& f : T.faces) {
      if (f[0] != v && f[1] != v && f[2] != v) continue;
      std::vector<int> rest;
      for (int x : f)
        if (x != v) rest.push_back(x);
      link[rest[0]].push_back(rest[1]);
      link[rest[1]].push_back(rest[0]);
    }
    if (link.empty()) return false;
    for (auto& [w, nb] : link)
      if (nb.size() != 2) return false;
    // Walk the cycle.
    int start = link.begin()->first;
    int prev = -1, cur = start;
    size_t steps = 0;
    do {
      int next = link[cur][0] == prev ? link[cur][1] : link[cur][0];
      prev = cur;
      cur = next;
      if (++steps > link.size()) return false;
    } while (cur != start);
    if (steps != link.size()) return false;
  }

  // Face connectivity.
  std::vector<int> comp(T.faces.size(), -1);
  std::vector<size_t> stack{0};
  comp[0] = 0;
  auto shares_edge = [&](const std::array<int, 3>& a,
                         const std::array<int, 3>& b) {
    int common = 0;
    for (int x : a)
      for (int y : b)
        if (x == y) common++;
    return common == 2;
  };
  while (!stack.empty()) {
    size_t i = stack.back();
    stack.pop_back();
    for (size_t j = 0; j < T.faces.size(); ++j)
      if (comp[j] < 0 && shares_edge(T.faces[i], T.faces[j])) {
        comp[j] = 0;
        stack.push_back(j);
      }
  }
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

std::vector<std::array<int, 3>> canonical_form(
    const CombinatorialTriangulation& T) {
  std::vector<int> perm(T.num_vertices);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::array<int, 3>> best;
  do {
    std::vector<std::array<int, 3>> relabeled;
    for (const auto& f : T.faces) {
      std::array<int, 3> g = {perm[f[0]], perm[f[1]], perm[f[2]]};
      std::sort(g.begin(), g.end());
      relabeled.push_back(g);
    }
    std::sort(relabeled.begin(), relabeled.end());
    if (best.empty() || relabeled < best) best = relabeled;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void enumerate_faces(int V, int F, std::vector<std::array<int, 3>>& all_triples,
                     size_t start, std::vector<std::array<int, 3>>& current,
                     std::map<std::pair<int, int>, int>& edge_count,
                     std::vector<CombinatorialTriangulation>& out,
                     std::set<std::vector<std::array<int, 3>>>& seen) {
  if (int(current.size()) == F) {
    CombinatorialTriangulation T;
    T.num_vertices = V;
    T.faces = current;
    std::set<int> used;
    for (const auto& f : current)
      used.insert(f.begin(), f.end());
    if (int(used.size()) != V) return;
    if (!is_sphere_triangulation(T)) return;
    auto canon = canonical_form(T);
    if (seen.insert(canon).second) {
      T.faces = canon;
      std::sort(T.faces.begin(), T.faces.end());
      out.push_back(T);
    }
    return;
  }
  // The canonical form of any sphere triangulation begins with the globally
  // minimal triple (0,1,2), so face lists starting elsewhere are redundant.
  size_t end = current.empty() ? 1 : all_triples.size();
  for (size_t i = start; i < end; ++i) {
    const auto& f = all_triples[i];
    auto e01 = std::minmax(f[0], f[1]);
    auto e12 = std::minmax(f[1], f[2]);
    auto e02 = std::minmax(f[0], f[2]);
    if (edge_count[e01] >= 2 || edge_count[e12] >= 2 || edge_count[e02] >= 2)
      continue;
    edge_count[e01]++;
    edge_count[e12]++;
    edge_count[e02]++;
    current.push_back(f);
    enumerate_faces(V, F, all_triples, i + 1, current, edge_count, out, seen);
    current.pop_back();
    edge_count[e01]--;
    edge_count[e12]--;
    edge_count[e02]--;
  }
}

}  // namespace

std::vector<CombinatorialTriangulation> enumerate_sphere_triangulations(
    int F) {
  if (F != 4 && F != 6 && F != 8 && F != 10)
    throw Error("enumerate_sphere_triangulations: F must be 4, 6, 8 or 10");
  static std::mutex cache_mutex;
  static std::map<int, std::vector<CombinatorialTriangulation>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(F);
    if (it != cache.end()) return it->second;
  }
  int V = 2 + F / 2;
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < V; ++a)
    for (int b = a + 1; b < V; ++b)
      for (int c = b + 1; c < V; ++c) triples.push_back({a, b, c});
  std::vector<CombinatorialTriangulation> out;
  std::set<std::vector<std::array<int, 3>>> seen;
  std::vector<std::array<int, 3>> current;
  std::map<std::pair<int, int>, int> edge_count;
  enumerate_faces(V, F, triples, 0, current, edge_count, out, seen);
  std::sort(out.begin(), out.end(),
            [](const CombinatorialTriangulation& a,
               const CombinatorialTriangulation& b) {
              return a.faces < b.faces;
            });
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache[F] = out;
  return out;
}

// ---------------------------------------------------------------------------
// Parity and degree bounds

Certificate check_size_parity(int F) {
  if (F < 1) throw Error("check_size_parity: F must be positive");
  Certificate cert;
  cert.claim = "parity-odd";
  bool impossible = F % 2 == 1;
  cert.verdict = impossible ? "holds" : "fails";
  cert.evidence = {
      {"F", F},
      {"impossible", impossible},
      {"reason", "a closed triangulation has 2E = 3F, so F must be even"}};
  return cert;
}

int min_degree_bound(double total_angle, double angle_cap, bool strict) {
  if (total_angle <= 0.0 || angle_cap <= 0.0)
    throw Error("min_degree_bound: angles must be positive");
  for (int k = 1; k <= 1000; ++k) {
    double covered = k * angle_cap;
    if (strict ? covered >= total_angle + 1e-12
               : covered >= total_angle - 1e-12)
      return k;
  }
  throw Error("min_degree_bound: bound exceeds 1000");
}

Certificate check_nonobtuse_lower_bound(const PolyhedralSurface& s,
                                        const Tolerances& tol) {
  Certificate cert;
  cert.claim = "thm1-lb";
  cert.params = tol;
  bool ok = true;
  json evidence;

  evidence["parity"] = json::array();
  for (int F : {5, 7}) {
    Certificate p = check_size_parity(F);
    evidence["parity"].push_back({{"F", F}, {"verdict", p.verdict}});
    ok = ok && p.verdict == "holds";
  }

  int bound_cone =
      min_degree_bound(s.vertices[0].cone_angle, kPi / 2.0, false);
  int bound_flat = min_degree_bound(2.0 * kPi, kPi / 2.0, false);
  evidence["min_degree_bound_cone"] = bound_cone;
  evidence["min_degree_bound_flat"] = bound_flat;
  ok = ok && bound_cone == 4 && bound_flat == 4;

  evidence["enumerations"] = json::array();
  for (int F : {4, 6}) {
    auto types = enumerate_sphere_triangulations(F);
    json entry;
    entry["F"] = F;
    entry["type_count"] = types.size();
    entry["degree_sequences"] = json::array();
    bool all_have_low_degree = true;
    for (const auto& T : types) {
      entry["degree_sequences"].push_back(T.degree_sequence());
      if (T.min_degree() >= std::min(bound_cone, bound_flat))
        all_have_low_degree = false;
    }
    entry["all_types_have_degree_3_vertex"] = all_have_low_degree;
    evidence["enumerations"].push_back(entry);
    ok = ok && types.size() == 1 && all_have_low_degree;
  }

  cert.verdict = ok ? "holds" : "fails";
  cert.evidence = evidence;
  return cert;
}

// ---------------------------------------------------------------------------
// No acute triangulation with 8 triangles

namespace {

struct FanAtlas {
  std::vector<std::vector<FanEntry>> fans;
  explicit FanAtlas(const PolyhedralSurface& s, const Tolerances& tol) {
    for (int u = 0; u < s.vertex_count(); ++u)
      fans.push_back(vertex_fan(s, u, tol));
  }
};

// The unique fan entry whose direction is phi (mod the cone angle).
const FanEntry* fan_entry_at(const std::vector<FanEntry>& fan, double phi,
                             double cone, double snap) {
  const FanEntry* found = nullptr;
  for (const FanEntry& fe : fan) {
    double d = wrap_angle(fe.phi - phi, cone);
    if (d > cone / 2) d -= cone;
    if (std::abs(d) < snap) {
      if (found) return nullptr;  // ambiguous
      found = &fe;
    }
  }
  return found;
}

}  // namespace

std::pair<int, int> adjacent_pair_scan(const PolyhedralSurface& s) {
  int n = s.vertex_count();
  int scanned = 0, min_pairs = 1 << 30;
  // All 5-subsets.
  std::vector<int> sub;
  std::function<void(int)> rec = [&](int start) {
    if (sub.size() == 5) {
      int pairs = 0;
      for (size_t i = 0; i < 5; ++i)
        for (size_t j = i + 1; j < 5; ++j)
          if (s.adjacent(sub[i], sub[j])) pairs++;
      min_pairs = std::min(min_pairs, pairs);
      scanned++;
      return;
    }
    for (int v = start; v < n; ++v) {
      sub.push_back(v);
      rec(v + 1);
      sub.pop_back();
    }
  };
  rec(0);
  return {scanned, min_pairs};
}

Certificate check_no_acute_8(const PolyhedralSurface& s,
                             const Tolerances& tol) {
  Certificate cert;
  cert.claim = "acute8";
  cert.params = tol;
  bool ok = true;
  json evidence;

  // (i) The only F=8 type with minimum degree >= 4 is the octahedron.
  auto types = enumerate_sphere_triangulations(8);
  std::vector<std::vector<int>> filtered;
  for (const auto& T : types)
    if (T.min_degree() >= 4) filtered.push_back(T.degree_sequence());
  evidence["combinatorial"] = {
      {"type_count", types.size()},
      {"min_degree_4_count", filtered.size()},
      {"filtered_degree_sequences", filtered}};
  bool octahedral = filtered.size() == 1 &&
                    filtered[0] == std::vector<int>(6, 4);
  ok = ok && octahedral;

  // (ii) A degree-4 vertex of an acute triangulation cannot be flat.
  int flat_bound = min_degree_bound(2.0 * kPi, kPi / 2.0, true);
  int cone_bound = min_degree_bound(s.vertices[0].cone_angle, kPi / 2.0, true);
  evidence["degree_bounds"] = {{"flat_strict", flat_bound},
                               {"cone_strict", cone_bound}};
  ok = ok && flat_bound == 5 && cone_bound == 4;

  // (iii) Four acute pi/12-multiples summing to the cone angle are forced
  // to be isogonal: enumerate all multisets.
  {
    std::vector<std::vector<int>> solutions;
    for (int a = 1; a <= 5; ++a)
      for (int b = a; b <= 5; ++b)
        for (int c = b; c <= 5; ++c)
          for (int d = c; d <= 5; ++d)
            if (a + b + c + d == 20) solutions.push_back({a, b, c, d});
    evidence["isogonal"] = {{"solutions_in_units_of_pi_12", solutions}};
    ok = ok && solutions.size() == 1 && solutions[0] == std::vector<int>{5, 5, 5, 5};
  }

  // (iv) Exhaustive search for a triangle with all angles 5*pi/12: over all
  // vertex pairs, all tied shortest geodesics, both sides. The rays at
  // 5*pi/12 land on fan directions; a witness requires them to meet at a
  // common third vertex with apex angle 5*pi/12.
  FanAtlas atlas(s, tol);
  int witness_count = 0, candidate_count = 0;
  bool seen_pi6 = false, seen_5pi6 = false;
  json candidates = json::array();
  for (int v1 = 0; v1 < s.vertex_count(); ++v1) {
    for (int v2 = v1 + 1; v2 < s.vertex_count(); ++v2) {
      std::vector<const GeodesicSegment*> ties;
      for (const FanEntry& fe : atlas.fans[v1])
        if (fe.target == v2) ties.push_back(&fe.seg);
      for (size_t gi = 0; gi < ties.size(); ++gi) {
        const GeodesicSegment& g = *ties[gi];
        double phi1 = direction_at(s, g, true, tol).phi;
        double phi2 = direction_at(s, g, false, tol).phi;
        double cone1 = s.vertices[v1].cone_angle;
        double cone2 = s.vertices[v2].cone_angle;
        for (int side : {+1, -1}) {
          const FanEntry* r1 = fan_entry_at(
              atlas.fans[v1], wrap_angle(phi1 + side * 5 * kPi / 12, cone1),
              cone1, tol.snap);
          const FanEntry* r2 = fan_entry_at(
              atlas.fans[v2], wrap_angle(phi2 - side * 5 * kPi / 12, cone2),
              cone2, tol.snap);
          if (!r1 || !r2) continue;
          if (r1->target != r2->target) continue;
          int v3 = r1->target;
          double cone3 = s.vertices[v3].cone_angle;
          double to_v1 = direction_at(s, r1->seg, false, tol).phi;
          double to_v2 = direction_at(s, r2->seg, false, tol).phi;
          double apex = wrap_angle(side * (to_v2 - to_v1), cone3);
          auto snapped = snap_to_pi12(apex, tol.snap);
          candidate_count++;
          json cand = {{"pair", {v1, v2}},
                       {"skeleton_distance", skeleton_distance(s, v1, v2)},
                       {"geodesic", int(gi)},
                       {"side", side},
                       {"third_vertex", v3},
                       {"apex_raw", apex},
                       {"apex_snapped_pi12", snapped ? *snapped : -1}};
          candidates.push_back(cand);
          if (!snapped) {
            ok = false;
            continue;
          }
          if (*snapped == 5) witness_count++;
          if (*snapped == 2 && skeleton_distance(s, v1, v2) == 1)
            seen_pi6 = true;
          if (*snapped == 10 && skeleton_distance(s, v1, v2) == 3)
            seen_5pi6 = true;
        }
      }
    }
  }
  evidence["search"] = {{"candidates", candidates},
                        {"candidate_count", candidate_count},
                        {"witness_count", witness_count},
                        {"case1_apex_pi6_reproduced", seen_pi6},
                        {"case3_apex_5pi6_reproduced", seen_5pi6}};
  ok = ok && witness_count == 0 && seen_pi6 && seen_5pi6;

  cert.verdict = ok ? "holds" : "fails";
  cert.evidence = evidence;
  return cert;
}

// ---------------------------------------------------------------------------
// Aggregate

Certificate main_theorem_report(const PolyhedralSurface& s,
                                const Tolerances& tol) {
  Certificate cert;
  cert.claim = "main-theorem";
  cert.params = tol;
  json subs = json::array();
  bool ok = true;

  auto add = [&](const std::string& claim, const std::string& verdict,
                 json extra = json::object()) {
    json entry = {{"claim", claim}, {"verdict", verdict}};
    for (auto& [k, v] : extra.items()) entry[k] = v;
    subs.push_back(entry);
    ok = ok && verdict == "holds";
  };

  add("parity-9", check_size_parity(9).verdict);
  add("parity-11", check_size_parity(11).verdict);
  add("acute8", check_no_acute_8(s, tol).verdict);
  add("acute10", check_no_acute_10(s, tol).verdict);

  {
    auto T = construct_nonobtuse8(s, tol);
    auto R = verify(s, T, tol);
    bool good = R.valid() && (R.classification == "non-obtuse" ||
                              R.classification == "acute");
    add("exists-nonobtuse-8", good ? "holds" : "fails",
        {{"classification", R.classification}, {"margin", R.margin}});
  }
  {
    auto T = construct_acute12(s, tol);
    auto R = verify(s, T, tol);
    bool good = R.valid() && R.classification == "acute";
    add("exists-acute-12", good ? "holds" : "fails",
        {{"classification", R.classification}, {"margin", R.margin}});
  }

  cert.evidence = {{"sub_certificates", subs},
                   {"sub_certificate_count", subs.size()},
                   {"acute_minimum", 12},
                   {"nonobtuse_minimum", 8}};
  cert.verdict = ok ? "holds" : "fails";
  return cert;
}

}  // namespace cuboct
