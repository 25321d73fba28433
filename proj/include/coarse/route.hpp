#pragma once

#include <optional>
#include <vector>

#include "coarse/region.hpp"

namespace coarse {

// A rectifiable path: a start locus followed by edge traversals. Parametrized
// by arc length with exact rational parameters. Routes are simple paths
// unless flagged as walks.
class Route {
 public:
  struct Step {
    EdgeId e;
    Rat from, to;  // traversal along e; from != to
  };

  static Route trivial(const Locus& at);
  // Consecutive vertices must be joined by edges.
  static Route from_vertices(const MetricGraph& g, const std::vector<VertexId>& vs);

  const Locus& first() const { return first_; }
  const Locus& last() const { return last_; }
  const Rat& length() const { return length_; }
  const std::vector<Step>& steps() const { return steps_; }
  bool is_trivial() const { return steps_.empty(); }

  bool walk_flag() const { return walk_; }
  void set_walk_flag(bool w) { walk_ = w; }

  // Extends this route by one traversal; the step must start at last().
  void push_step(const MetricGraph& g, EdgeId e, Rat from, Rat to);
  void append(const MetricGraph& g, const Route& tail);  // tail.first() == last()

  Locus point_at(const MetricGraph& g, const Rat& t) const;
  Route sub_route(const MetricGraph& g, const Rat& t0, const Rat& t1) const;
  Route reversed(const MetricGraph& g) const;

  Region as_region(const MetricGraph& g) const;

  // Junction loci: start, every step boundary, end. Vertices the route
  // passes through are always junctions for routes built from vertex paths.
  std::vector<std::pair<Locus, Rat>> junctions(const MetricGraph& g) const;
  // First param at which the route visits the given locus.
  std::optional<Rat> param_of(const MetricGraph& g, const Locus& l) const;

  bool is_simple(const MetricGraph& g) const;
  // Splices out revisited junctions; returns a route over the same point
  // subset with the same endpoints.
  Route simplified(const MetricGraph& g) const;

 private:
  Locus first_, last_;
  std::vector<Step> steps_;
  Rat length_;
  bool walk_ = false;
};

}  // namespace coarse
