#pragma once

#include <string>

#include "coarse/metric_graph.hpp"

namespace coarse {

// A point of the metric graph: a vertex or an interior point of an edge
// (offset measured from the edge's u endpoint). Offsets 0 and len
// canonicalize to the vertex form.
struct Locus {
  VertexId v = -1;
  EdgeId e = -1;
  Rat offset;

  bool is_vertex() const { return v >= 0; }

  static Locus vertex(VertexId v) {
    Locus l;
    l.v = v;
    return l;
  }

  friend bool operator==(const Locus& a, const Locus& b) {
    if (a.is_vertex() != b.is_vertex()) return false;
    if (a.is_vertex()) return a.v == b.v;
    return a.e == b.e && a.offset == b.offset;
  }
  friend bool operator!=(const Locus& a, const Locus& b) { return !(a == b); }
  friend bool operator<(const Locus& a, const Locus& b) {
    if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
    if (a.is_vertex()) return a.v < b.v;
    if (a.e != b.e) return a.e < b.e;
    return a.offset < b.offset;
  }
};

// Canonicalizing constructor for points on edges.
Locus make_locus(const MetricGraph& g, EdgeId e, const Rat& offset);

std::string locus_str(const MetricGraph& g, const Locus& l);

// Exact distance between two points.
Dist locus_distance(const MetricGraph& g, const Locus& a, const Locus& b);

}  // namespace coarse
