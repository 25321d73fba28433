#pragma once

#include "coarse/fat_minor.hpp"
#include "coarse/quasi_isometry.hpp"

namespace coarse {

// Annuli of width 4k+1 around the root, each split into its k-near-component
// boxes. A box is tall when it sends an edge to the next annulus; the top
// annulus is tall by convention so the later partition covers every vertex.
struct AnnulusDecomposition {
  VertexId root = -1;
  long k = 0;
  long width = 0;  // 4k+1
  struct Box {
    std::vector<VertexId> verts;
    std::vector<VertexId> midpoints;  // vertices at level n*width + 2k+1
    bool tall_edge = false;
    bool tall_mid = false;
    bool tall = false;
    Rat diam;
  };
  std::vector<std::vector<Box>> boxes;  // per annulus
  std::vector<int> annulus_of;          // per vertex
  std::vector<int> box_of;              // per vertex (index within its annulus)
  int tall_divergences = 0;             // boxes with tall_edge != tall_mid
  std::vector<long> levels;             // per vertex

  bool claim_a_holds(int m) const;  // every box diameter < 15*m*k^2
};
AnnulusDecomposition annulus_boxes(const MetricGraph& g, VertexId root, long k);

struct SuperBox {
  int annulus = -1;
  std::vector<VertexId> verts;
  std::vector<VertexId> midpoints;
  Rat diam;
};
struct SuperBoxPartition {
  std::vector<SuperBox> boxes;
  std::vector<int> box_of;  // per vertex
};
// Sibling closure of tall boxes plus their adopted short boxes one annulus up.
SuperBoxPartition super_boxes(const MetricGraph& g, const AnnulusDecomposition& dec);

struct ContractionResult {
  MetricGraph quotient;
  std::vector<VertexId> map;  // g-vertex -> quotient vertex
  QICertificate certificate;  // verified at (2D, 2D)
};
ContractionResult contract_super_boxes(const MetricGraph& g,
                                       const SuperBoxPartition& part, const Rat& D);

struct StarOutcome {
  bool minor_free = false;
  AnnulusDecomposition decomposition;
  SuperBoxPartition partition;
  std::optional<ContractionResult> contraction;  // success branch
  std::optional<FatModel> witness;               // failure branch, verified at k
};
// Full pipeline: decompose, contract, test the quotient for a K_{1,m} minor;
// when one exists, lift it to a verified k-fat star model.
StarOutcome star_pipeline(const MetricGraph& g, VertexId root, long k, int m);

struct MidpointCheck {
  bool ok = true;          // strict form: > 2k and > 4k everywhere
  bool ok_weak = true;     // non-strict form: >= 2k and > 4k
  Dist min_box_gap;        // least midpoint-to-foreign-super-box distance
  Dist min_mid_gap;        // least midpoint-to-midpoint distance across boxes
  std::string witness;
};
// Exhaustive self-test: midpoints stay far from other super-boxes and from
// their midpoints. The strict 2k bound is attained exactly by the upper
// annulus boundary (the middle layer sits 2k below it), so ok_weak is the
// meaningful verdict on healthy partitions.
MidpointCheck midpoint_separation_check(const MetricGraph& g,
                                        const AnnulusDecomposition& dec,
                                        const SuperBoxPartition& part, long k);

}  // namespace coarse
