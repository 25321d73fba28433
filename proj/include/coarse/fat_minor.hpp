#pragma once

#include <optional>
#include <string>

#include "coarse/metric_ops.hpp"

namespace coarse {

// Small simple pattern graph whose fat model is sought in the host graph.
struct PatternGraph {
  std::vector<std::string> names;            // vertex labels
  std::vector<std::pair<int, int>> edges;    // u < v, no duplicates

  int n() const { return static_cast<int>(names.size()); }
  int m() const { return static_cast<int>(edges.size()); }
  bool adjacent(int u, int v) const;

  static PatternGraph complete(int k);        // K_k
  static PatternGraph star(int leaves);       // K_{1,m}, center "c"
  static PatternGraph path(int edges);        // P with `edges` edges
  // Center plus legs of lengths 1, 2, ..., k (a finite wedge-of-paths prefix).
  static PatternGraph wedge_of_paths(int k);
  // Subdivide edge `e` once; the new vertex is appended.
  PatternGraph subdivide_edge(int e) const;
};

// Branch sets indexed by pattern vertex, branch paths by pattern edge.
struct FatModel {
  PatternGraph pattern;
  std::vector<Region> branch_sets;
  std::vector<Route> branch_paths;
  Rat level;  // claimed fatness
};

struct FatVerdict {
  bool ok = false;             // structure valid and fatness >= level
  bool structural_ok = false;  // disjointness/incidence conditions
  std::string failure;         // names the offending pair when not ok
  Dist fatness;                // min non-exempt pair distance (structural_ok)
  std::string tight_pair;      // pair attaining the fatness
};

// Single source of truth for fat models: all constructors in this library
// run their output through this check before returning it.
FatVerdict verify_fat_model(const MetricGraph& g, const FatModel& model, const Rat& k);

enum class SearchStatus { Found, None, BudgetExhausted };
struct FatSearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<FatModel> model;
  unsigned long long nodes = 0;  // expansion counter
};

// Exhaustive search over vertex-granular branch sets (size <= size_budget)
// with branch paths chosen as canonical geodesics in the masked graph.
// Sound always; complete over that restricted space.
FatSearchResult search_fat_minor(const MetricGraph& g, const PatternGraph& pattern,
                                 const Rat& k, int size_budget,
                                 unsigned long long node_budget = 50'000'000ULL);

// Turns a 3k-fat model into a k-fat model of the pattern with edge
// `pattern_edge` subdivided once.
FatModel subdivision_transfer(const MetricGraph& g, const FatModel& model,
                              int pattern_edge, const Rat& k);

// Classical minor containment (fatness ignored), exact by exhaustive search;
// patterns are expected to stay tiny. K_{1,m} uses the path-or-cycle
// characterization for m = 3 and a leafy-subtree search otherwise.
bool minor_test(const MetricGraph& g, const PatternGraph& pattern,
                unsigned long long node_budget = 20'000'000ULL);
// Witness variant: branch sets (vertex sets) of a model when present.
std::optional<std::vector<std::vector<VertexId>>> minor_test_witness(
    const MetricGraph& g, const PatternGraph& pattern,
    unsigned long long node_budget = 20'000'000ULL);

// --- Ray and wedge gadgets -------------------------------------------------

struct FatRayResult {
  bool too_short = false;
  std::optional<FatModel> model;
  int blocks = 0;  // greedy blocks B_0..B_{blocks-1} used by the model
};
// Greedy block decomposition of a geodesic route into a fat model of a path
// pattern: blocks of arc length r; even blocks become branch sets, odd ones
// branch paths.
FatRayResult fat_ray_prefix(const MetricGraph& g, const Route& geodesic_route,
                            const Rat& r);

struct BadPairGraph {
  int n = 0;  // one node per geodesic
  struct Edge {
    int i, j;
    Locus wi, wj;  // witnessing waypoints with d <= r beyond depth `depth`
  };
  std::vector<Edge> edges;
  Rat r, depth;
  bool has_edge(int i, int j) const;
};
// Nodes are rooted geodesics; an edge records waypoints at depth > n from
// the root within distance r of each other.
BadPairGraph bad_pair_graph(const MetricGraph& g, const std::vector<Route>& geodesics,
                            const Rat& r, const Rat& n);

// Builds a fat model of a wedge-of-paths prefix from pairwise non-bad rooted
// geodesics; the k-th route must be longer than 2kr + n.
FatModel fat_star_of_paths(const MetricGraph& g, const std::vector<Route>& geodesics,
                           const Rat& r, const Rat& n);

}  // namespace coarse
