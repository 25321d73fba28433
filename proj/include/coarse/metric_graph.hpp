#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarse/error.hpp"
#include "coarse/rational.hpp"

namespace coarse {

using VertexId = int;
using EdgeId = int;

struct EdgeRec {
  VertexId u;  // u < v
  VertexId v;
  Rat len;     // > 0
};

// A finite edge-weighted graph carrying the induced path metric. Parallel
// edges and self-loops are rejected; the graph may be disconnected.
// Immutable after construction; distance queries are cached and safe for
// concurrent use.
class MetricGraph {
 public:
  class Builder {
   public:
    VertexId add_vertex(const std::string& name);
    void add_edge(const std::string& u, const std::string& v, Rat len = Rat(1));
    // Vertex ids are assigned by sorting names (numeric-aware), so the same
    // input always produces the same graph regardless of insertion order.
    MetricGraph build();

   private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    struct PendingEdge {
      int u, v;
      Rat len;
    };
    std::vector<PendingEdge> edges_;
  };

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(VertexId v) const { return names_[v]; }
  VertexId vertex(const std::string& name) const;        // throws input_error
  VertexId find_vertex(const std::string& name) const;   // -1 if absent

  const EdgeRec& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<EdgeRec>& edges() const { return edges_; }

  // Neighbors sorted by vertex id.
  const std::vector<std::pair<VertexId, EdgeId>>& neighbors(VertexId v) const {
    return adj_[v];
  }
  EdgeId edge_between(VertexId u, VertexId v) const;  // -1 if absent
  VertexId other_end(EdgeId e, VertexId v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }

  bool unit_lengths() const { return unit_; }

  // Exact single-source shortest-path distances, cached per source.
  const std::vector<Dist>& dist_from(VertexId src) const;
  Dist dist(VertexId a, VertexId b) const { return dist_from(a)[b]; }

  bool connected() const;
  // Max finite distance over all vertex pairs; infinity when disconnected.
  Dist diameter_vertices() const;
  Dist eccentricity(VertexId v) const;

  // Low-level constructor preserving the given vertex and edge order
  // (refinement relies on stable ids).
  static MetricGraph raw(std::vector<std::string> names,
                         std::vector<EdgeRec> edges);

  MetricGraph(const MetricGraph& other);
  MetricGraph(MetricGraph&&) = default;
  MetricGraph& operator=(const MetricGraph& other);
  MetricGraph& operator=(MetricGraph&&) = default;
  MetricGraph() = default;

 private:
  void init_adjacency();

  std::vector<std::string> names_;
  std::vector<EdgeRec> edges_;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
  std::unordered_map<std::string, VertexId> by_name_;
  bool unit_ = true;

  struct DistCache {
    std::mutex mu;
    std::unordered_map<VertexId, std::shared_ptr<std::vector<Dist>>> map;
  };
  mutable std::unique_ptr<DistCache> cache_ = std::make_unique<DistCache>();
};

// Numeric-aware name ordering: "2" < "10", non-numeric names compare as
// strings after numeric ones.
bool vertex_name_less(const std::string& a, const std::string& b);

}  // namespace coarse
