#pragma once

#include <map>
#include <vector>

#include "coarse/locus.hpp"

namespace coarse {

// A closed subspace of the metric graph: vertices, whole edges and closed
// edge segments. Segments on one edge are kept sorted, disjoint and merged;
// a segment reaching offset 0 or len also records the touched vertex.
class Region {
 public:
  struct Seg {
    Rat lo, hi;  // 0 <= lo <= hi <= len; lo == hi is a single interior point
  };

  Region() = default;

  static Region of_vertex(VertexId v);
  static Region of_vertices(const std::vector<VertexId>& vs);
  static Region of_locus(const MetricGraph& g, const Locus& l);

  void add_vertex(const MetricGraph& g, VertexId v);
  void add_segment(const MetricGraph& g, EdgeId e, Rat lo, Rat hi);
  void add_whole_edge(const MetricGraph& g, EdgeId e);
  void add_locus(const MetricGraph& g, const Locus& l);
  void unite(const MetricGraph& g, const Region& other);

  bool empty() const { return verts_.empty() && segs_.empty(); }
  bool contains(const MetricGraph& g, const Locus& l) const;
  bool contains_vertex(VertexId v) const;
  bool intersects(const MetricGraph& g, const Region& other) const;
  Region intersection(const MetricGraph& g, const Region& other) const;

  // True when the point set is exactly {l}.
  bool is_single_point(const MetricGraph& g, const Locus& l) const;
  bool has_positive_length() const;

  const std::vector<VertexId>& vertices() const { return verts_; }
  const std::map<EdgeId, std::vector<Seg>>& segments() const { return segs_; }

  // Loci that delimit the region on edges (segment endpoints); used to
  // refine a graph so the region becomes vertex/whole-edge granular.
  std::vector<Locus> cut_loci(const MetricGraph& g) const;

  // Some point of the region (canonical: least vertex, else least segment
  // start). Throws input_error when empty.
  Locus any_point(const MetricGraph& g) const;

  // Region made of whole vertices only?
  bool pure_vertices() const { return segs_.empty(); }

  friend bool operator==(const Region& a, const Region& b);

 private:
  std::vector<VertexId> verts_;            // sorted, unique
  std::map<EdgeId, std::vector<Seg>> segs_;  // per edge: sorted, merged
};

}  // namespace coarse
