#include "support.hpp"

#include <algorithm>

namespace coarse::testing {

MetricGraph path_graph(int n) {
  MetricGraph::Builder b;
  b.add_vertex("0");
  for (int i = 0; i < n; ++i)
    b.add_edge(std::to_string(i), std::to_string(i + 1));
  return b.build();
}

MetricGraph cycle_graph(int n) {
  MetricGraph::Builder b;
  for (int i = 0; i < n; ++i)
    b.add_edge(std::to_string(i), std::to_string((i + 1) % n));
  return b.build();
}

MetricGraph grid_graph(int w, int h) {
  MetricGraph::Builder b;
  auto name = [](int x, int y) { return std::to_string(x) + "," + std::to_string(y); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) b.add_edge(name(x, y), name(x + 1, y));
      if (y + 1 < h) b.add_edge(name(x, y), name(x, y + 1));
    }
  return b.build();
}

MetricGraph star_graph(int legs, int leg_len) {
  MetricGraph::Builder b;
  for (int i = 0; i < legs; ++i) {
    std::string prev = "c";
    for (int j = 1; j <= leg_len; ++j) {
      std::string cur = "l" + std::to_string(i) + "." + std::to_string(j);
      b.add_edge(prev, cur);
      prev = cur;
    }
  }
  return b.build();
}

MetricGraph theta_graph(int strands, int len) {
  MetricGraph::Builder b;
  for (int i = 0; i < strands; ++i) {
    std::string prev = "a";
    for (int j = 1; j < len; ++j) {
      std::string cur = "s" + std::to_string(i) + "." + std::to_string(j);
      b.add_edge(prev, cur);
      prev = cur;
    }
    b.add_edge(prev, "z");
  }
  return b.build();
}

std::vector<std::vector<Dist>> fw_distances(const MetricGraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<Dist>> d(n, std::vector<Dist>(n, Dist::infinity()));
  for (int v = 0; v < n; ++v) d[v][v] = Dist::zero();
  for (const auto& e : g.edges()) {
    Dist w = Dist::of(e.len);
    d[e.u][e.v] = dist_min(d[e.u][e.v], w);
    d[e.v][e.u] = d[e.u][e.v];
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (d[i][k].is_inf()) continue;
      for (int j = 0; j < n; ++j) {
        if (d[k][j].is_inf()) continue;
        Dist via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  return d;
}

unsigned long long Rng::next() {
  unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::below(int n) { return static_cast<int>(next() % static_cast<unsigned long long>(n)); }

MetricGraph random_connected_graph(int n, int extra, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  auto has = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    return std::find(edges.begin(), edges.end(), std::make_pair(u, v)) != edges.end();
  };
  for (int v = 1; v < n; ++v) {
    int u = rng.below(v);
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  int added = 0, guard = 0;
  while (added < extra && guard++ < 50 * (extra + 1)) {
    int u = rng.below(n), v = rng.below(n);
    if (u == v || has(u, v)) continue;
    edges.push_back({std::min(u, v), std::max(u, v)});
    added++;
  }
  MetricGraph::Builder b;
  b.add_vertex("0");
  for (auto [u, v] : edges) b.add_edge(std::to_string(u), std::to_string(v));
  return b.build();
}

MetricGraph random_subdivided_tree(int leaves, int max_n, Rng& rng) {
  MetricGraph::Builder b;
  b.add_vertex("0");
  int n = 1;
  std::vector<int> nodes = {0};
  while (n < max_n && static_cast<int>(nodes.size()) < leaves * 4) {
    int attach = nodes[rng.below(static_cast<int>(nodes.size()))];
    int seg = 1 + rng.below(12);
    if (n + seg > max_n) break;
    int prev = attach;
    for (int i = 0; i < seg; ++i) {
      b.add_edge(std::to_string(prev), std::to_string(n));
      prev = n++;
    }
    nodes.push_back(prev);
  }
  return b.build();
}

}  // namespace coarse::testing
