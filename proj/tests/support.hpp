#pragma once

#include <string>
#include <vector>

#include "coarse/metric_graph.hpp"
#include "coarse/metric_ops.hpp"

namespace coarse::testing {

// Common fixtures.
MetricGraph path_graph(int n);                  // vertices 0..n, unit edges
MetricGraph cycle_graph(int n);                 // C_n, unit edges
MetricGraph grid_graph(int w, int h);           // vertices "x,y"
MetricGraph star_graph(int legs, int leg_len);  // center "c", leg vertices "l<i>.<j>"
MetricGraph theta_graph(int strands, int len);  // endpoints "a","z", strands "s<i>.<j>"

// Independent distance oracle: Floyd-Warshall over exact rationals, no
// Dijkstra, no caching. Index [u][v]; infinite distances reported as nullopt.
std::vector<std::vector<Dist>> fw_distances(const MetricGraph& g);

// Deterministic pseudo-random generator (SplitMix64), independent of libc.
struct Rng {
  unsigned long long state;
  explicit Rng(unsigned long long seed) : state(seed) {}
  unsigned long long next();
  int below(int n);  // uniform in [0, n)
};

// Random connected unit-length graph on n vertices: a random spanning tree
// plus `extra` random edges.
MetricGraph random_connected_graph(int n, int extra, Rng& rng);

// Random tree with every edge subdivided a random amount, at most max_n
// vertices total.
MetricGraph random_subdivided_tree(int leaves, int max_n, Rng& rng);

}  // namespace coarse::testing
