#pragma once

#include "coarse/fat_minor.hpp"
#include "coarse/quasi_isometry.hpp"

namespace coarse {

// Layered decomposition of a connected unit-length graph: every sphere
// around the root split into its near-component classes at scale 5k.
struct SpherePartition {
  VertexId root = -1;
  Rat scale;  // 5k
  std::vector<std::vector<std::vector<VertexId>>> classes;  // [level][i] -> members
  std::vector<std::vector<Rat>> diam;                       // exact class diameters
  std::vector<VertexId> level_of;                           // per g-vertex
  std::vector<std::pair<int, int>> class_of;                // per g-vertex (level, i)
};
SpherePartition sphere_partition(const MetricGraph& g, VertexId root, const Rat& k);

struct Claim1Violation {
  int level = -1, index = -1;
  VertexId x1 = -1, x2 = -1;
  Rat dist;
};
struct Claim2Violation {
  int level = -1, index = -1;   // class with two parents
  int parent_a = -1, parent_b = -1;
  Route a_path;                 // endpoints in distinct classes one level down
  VertexId a = -1, z = -1;
  int class_a = -1, class_z = -1;
};

struct QuasiTreeSuccess {
  MetricGraph tree;
  std::vector<VertexId> vertex_class;              // g-vertex -> tree vertex
  std::vector<std::pair<int, int>> tree_class_id;  // tree vertex -> (level, i)
};

struct TreeResult {
  std::optional<QuasiTreeSuccess> tree;
  std::optional<Claim1Violation> claim1;
  std::optional<Claim2Violation> claim2;
  bool ok() const { return tree.has_value(); }
};

// Builds the class tree; returns the first violation (scanning levels
// upward, diameters before parents) instead when one exists.
TreeResult build_tree(const MetricGraph& g, const SpherePartition& sp, const Rat& k);

// Turns a build_tree violation into a verified k-fat triangle model.
FatModel extract_k3_witness(const MetricGraph& g, const SpherePartition& sp,
                            const TreeResult& violation, const Rat& k);

struct QuasiTreeOutcome {
  std::optional<QuasiTreeSuccess> success;
  QICertificate certificate;  // (1, 10k), set on the success branch
  std::optional<FatModel> witness;
};
QuasiTreeOutcome quasi_tree_pipeline(const MetricGraph& g, const Rat& k,
                                     VertexId root = 0);

struct BottleneckResult {
  bool holds = true;
  VertexId x = -1, y = -1;  // violating pair when !holds
  bool exhaustive = true;   // all pairs checked (within the budget)
};
// Midpoint bottleneck test: for each checked pair, the property fails only
// when every exact midpoint can be avoided at distance >= delta.
BottleneckResult bottleneck_check(const MetricGraph& g, const Rat& delta,
                                  long pair_budget = 1'000'000);

}  // namespace coarse
