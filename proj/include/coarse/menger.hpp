#pragma once

#include <variant>

#include "coarse/metric_ops.hpp"

namespace coarse {

// The fixed shortest route joining the two terminal regions, with its
// arc-length parametrization.
struct BaseGeodesic {
  Region A, Z;
  Route gamma;
  Rat len;
  Region gamma_region;
};
BaseGeodesic base_geodesic(const MetricGraph& g, const Region& a, const Region& z);

struct Separator {
  Locus center;
  Rat radius;
  Region ball;
  Dist diameter;        // verified
  bool verified = false;
};

// A detour far from gamma: legs of length exactly k/8 anchored on gamma (or
// endpoints inside A/Z), spine at distance >= k/8 from gamma. Routes are
// oriented from the A side to the Z side.
struct Bridge {
  Route route;
  Rat b0, b1;               // interval of gamma parameters
  bool a_anchored = false;  // first endpoint lies in A (trivial leg)
  bool z_anchored = false;
  Rat spine_from, spine_to;  // route params delimiting the spine
};

struct CrossingSequence {
  std::vector<Bridge> bridges;  // ordered by interval start
  Rat surround;                 // verified sample-cover radius
  bool perfect = false;
  std::vector<Rat> samples;
};

// Either a bridge surrounding the parameter by 3k/8 or the ball separator.
std::variant<Bridge, Separator> find_bridge(const MetricGraph& g,
                                            const BaseGeodesic& base, const Rat& x,
                                            const Rat& k);

// Samples gamma at step k/8, collects maximal bridges and selects a greedy
// minimum interval cover surrounding every sample by k/4.
std::variant<CrossingSequence, Separator> build_cover(const MetricGraph& g,
                                                      const BaseGeodesic& base,
                                                      const Rat& k);

// Drops the earlier bridge of every close pair of initial points, leaving a
// perfect k/8-crossing sequence.
CrossingSequence perfect_subsequence(const MetricGraph& g, const BaseGeodesic& base,
                                     const CrossingSequence& seq, const Rat& k);

struct MetaBridge {
  Route route;
  Rat b0, b1;
  bool a_anchored = false, z_anchored = false;
  std::vector<int> bridge_ids;
  struct BrownRange {
    Rat from, to;
    int segment;  // joining step that painted it
  };
  std::vector<BrownRange> brown;  // ascending, disjoint route-param ranges
};

struct JoinLedger {
  struct Tree {
    int rank = 0;
    Rat length;
  };
  std::vector<Tree> trees;           // per join-tree
  std::vector<Rat> join_lengths;     // per maximal join
  std::vector<Dist> join_gamma_gap;  // distance of each join to gamma
  int joins_performed = 0;
};

struct MetaResult {
  std::vector<MetaBridge> metas;
  JoinLedger ledger;
};

// Iteratively joins close meta-bridges with shortest brown connectors until
// distinct meta-bridges are either >= a apart or have close opposite
// endpoints; verifies the join-tree bounds before returning.
MetaResult build_meta_bridges(const MetricGraph& g, const BaseGeodesic& base,
                              const CrossingSequence& seq, const Rat& k,
                              const Rat& join_threshold, const Rat& a);

// The inductive red/green construction.
std::pair<Route, Route> assemble_paths_primary(const MetricGraph& g,
                                               const BaseGeodesic& base,
                                               const std::vector<MetaBridge>& metas,
                                               const Rat& k);
// Reduction to two vertex-disjoint paths in the auxiliary graph of
// meta-bridges and gamma-edges (contracting short gamma-edges).
std::pair<Route, Route> assemble_paths_aux(const MetricGraph& g,
                                           const BaseGeodesic& base,
                                           const std::vector<MetaBridge>& metas,
                                           const Rat& k);

enum class MengerMode { Primary, Aux };

struct PathPair {
  Route alpha1, alpha2;
  Dist separation;  // verified
  Rat required;
  bool verified = false;
};

struct MengerOutcome {
  MengerMode mode = MengerMode::Aux;
  std::optional<Separator> separator;
  std::optional<PathPair> paths;
  JoinLedger ledger;
  bool is_separator() const { return separator.has_value(); }
};

// Full dichotomy at scale k; every outcome is re-verified from scratch with
// the metric-core primitives before it is returned.
MengerOutcome menger2(const MetricGraph& g, const Region& a, const Region& z,
                      const Rat& k, MengerMode mode = MengerMode::Aux);

// Pins one endpoint on each side by attaching long arcs to the remaining
// terminal vertices; path outcomes contain x and z0 among their endpoints.
MengerOutcome menger2_endpoints(const MetricGraph& g, const Region& a,
                                const Region& z, const Rat& k, VertexId x,
                                VertexId z0);

struct BoundaryReport {
  std::vector<std::pair<Rat, MengerOutcome>> outcomes;
  bool stabilized = false;  // all outcomes share the final kind
  std::string summary;
};
// Runs the dichotomy against the exact distance-n spheres around a.
BoundaryReport menger2_to_boundary(const MetricGraph& g, const Region& a, const Rat& k,
                                   const std::vector<Rat>& radii,
                                   MengerMode mode = MengerMode::Aux);

// Exact sphere around a region (vertices and interior edge points at
// distance exactly r).
Region distance_sphere(const MetricGraph& g, const Region& a, const Rat& r);

}  // namespace coarse
