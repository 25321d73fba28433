#pragma once

#include <functional>
#include <optional>

#include "coarse/refine.hpp"

namespace coarse {

// Deterministic shortest path between vertex sets: among least-length paths
// the lexicographically smallest vertex-id sequence wins. `allowed` (when
// given) restricts usable vertices; sources/targets are used as-is.
struct VertexPath {
  Dist dist = Dist::infinity();
  std::vector<VertexId> path;  // empty when unreachable
};
VertexPath canonical_shortest_path(
    const MetricGraph& g, const std::vector<VertexId>& sources,
    const std::vector<VertexId>& targets,
    const std::function<bool(VertexId)>& allowed = nullptr);

// Multi-source exact distances, optionally restricted to allowed vertices.
std::vector<Dist> multi_source_dist(
    const MetricGraph& g, const std::vector<VertexId>& sources,
    const std::function<bool(VertexId)>& allowed = nullptr);

Dist distance(const MetricGraph& g, const Locus& a, const Locus& b);

Dist region_distance(const MetricGraph& g, const Region& a, const Region& b);
struct RegionDistanceWitness {
  Dist dist;
  Locus a, b;  // attaining pair (valid when dist finite)
};
RegionDistanceWitness region_distance_witness(const MetricGraph& g, const Region& a,
                                              const Region& b);

// Canonical geodesic realizing region_distance; nullopt when infinite.
// First locus lies in a, last in b, interior disjoint from both.
std::optional<Route> geodesic(const MetricGraph& g, const Region& a, const Region& b);

Region ball(const MetricGraph& g, const Locus& center, const Rat& r);
Region ball_around(const MetricGraph& g, const Region& s, const Rat& r);

// Connected components of a region, ordered by least point.
std::vector<Region> region_components(const MetricGraph& g, const Region& r);
bool region_connected(const MetricGraph& g, const Region& r);
// Component of `r` containing the given locus.
Region region_component_of(const MetricGraph& g, const Region& r, const Locus& at);

// Maximal classes of s under the transitive closure of "distance <= m in g".
std::vector<Region> near_components(const MetricGraph& g, const Region& s, const Rat& m);

// True iff every a-z path meets s (in particular when a or z lies inside s).
bool separates(const MetricGraph& g, const Region& s, const Region& a, const Region& z);

Dist region_diameter(const MetricGraph& g, const Region& r);

// Distance from every vertex to the region (exact, +inf across components).
std::vector<Dist> dist_to_region(const MetricGraph& g, const Region& s);

// The subspace spanned by a vertex set: the vertices plus all induced edges.
// This is the region a vertex-granular branch set denotes.
Region induced_region(const MetricGraph& g, const std::vector<VertexId>& verts);

// Exact piecewise-linear profile of t -> d(route(t), s). Supports the
// threshold crossings the constructions need (last point within k of a set,
// first point after it within k of another).
class RouteRegionProfile {
 public:
  RouteRegionProfile(const MetricGraph& g, const Route& route, const Region& s);

  Dist value_at(const Rat& t) const;
  Dist minimum() const;
  Dist min_in_range(const Rat& t0, const Rat& t1) const;
  // max t with value <= thresh (nullopt if the profile stays above).
  std::optional<Rat> last_within(const Rat& thresh) const;
  // max t <= before with value <= thresh.
  std::optional<Rat> last_within_before(const Rat& thresh, const Rat& before) const;
  // min t >= after with value <= thresh.
  std::optional<Rat> first_within_from(const Rat& thresh, const Rat& after) const;
  std::optional<Rat> first_within(const Rat& thresh) const {
    return first_within_from(thresh, Rat(0));
  }

 private:
  struct Piece {
    Rat t0, t1;   // param range, t0 <= t1
    Dist f0;      // value at t0 (infinite when unreachable)
    int slope;    // -1, 0, +1
  };
  std::vector<Piece> pieces_;
};

}  // namespace coarse
