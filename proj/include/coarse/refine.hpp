#pragma once

#include <vector>

#include "coarse/route.hpp"

namespace coarse {

// Inserts temporary vertices at interior loci so that algorithms needing
// exact cut points (ball boundaries, legs of prescribed length, region
// boundaries) can work with plain vertices. Original vertices keep their
// ids; cut vertices follow in (edge, offset) order.
class Refinement {
 public:
  Refinement(const MetricGraph& g, const std::vector<Locus>& cuts);

  const MetricGraph& graph() const { return refined_; }
  const MetricGraph& original() const { return *orig_; }

  Locus to_refined(const Locus& orig) const;
  Locus to_original(const Locus& refined) const;
  // Vertex id of an original locus that is a vertex of the refined graph
  // (an original vertex or a cut point); -1 otherwise.
  VertexId vertex_of(const Locus& orig) const;

  Region to_refined(const Region& orig) const;
  Region to_original(const Region& refined) const;
  Route to_original(const Route& refined) const;
  Route to_refined(const Route& orig) const;

 private:
  const MetricGraph* orig_;
  MetricGraph refined_;
  // Per original edge: cut offsets with their new vertex ids, sorted.
  std::vector<std::vector<std::pair<Rat, VertexId>>> cuts_;
  std::vector<Locus> new_vertex_orig_;  // for ids >= orig vertex count
  struct SubEdge {
    EdgeId orig_edge;
    Rat lo, hi;     // offsets on the original edge
    bool flipped;   // refined u sits at hi instead of lo
  };
  std::vector<SubEdge> sub_;                    // by refined edge id
  std::vector<std::vector<EdgeId>> edges_of_;   // orig edge -> refined edges (offset order)
};

}  // namespace coarse
