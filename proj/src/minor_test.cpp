#include "coarse/fat_minor.hpp"
#include "search_util.hpp"

namespace coarse {

namespace {

using detail::Bits;
using detail::Candidate;

bool is_edgeless(const PatternGraph& p) { return p.edges.empty(); }

// Star K_{1,m}: one center adjacent to all leaves, no other edges.
int star_leaves(const PatternGraph& p) {
  int n = p.n();
  if (n < 2 || p.m() != n - 1) return -1;
  std::vector<int> deg(n, 0);
  for (auto [u, v] : p.edges) {
    deg[u]++;
    deg[v]++;
  }
  int center = -1;
  for (int v = 0; v < n; ++v) {
    if (deg[v] == n - 1) center = v;
    if (deg[v] != 1 && deg[v] != n - 1) return -1;
  }
  if (center < 0) return -1;
  return n - 1;
}

// Path pattern: returns edge count when p is a path, else -1.
int path_edges(const PatternGraph& p) {
  int n = p.n();
  if (p.m() != n - 1) return -1;
  std::vector<int> deg(n, 0);
  for (auto [u, v] : p.edges) {
    deg[u]++;
    deg[v]++;
  }
  int ones = 0;
  for (int v = 0; v < n; ++v) {
    if (deg[v] > 2) return -1;
    if (deg[v] == 1) ones++;
    if (deg[v] == 0 && n > 1) return -1;
  }
  if (n == 1) return 0;
  return ones == 2 ? n - 1 : -1;
}

bool is_triangle(const PatternGraph& p) { return p.n() == 3 && p.m() == 3; }

bool has_cycle(const MetricGraph& g) {
  std::vector<int> parent(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    int a = find(e.u), b = find(e.v);
    if (a == b) return true;
    parent[a] = b;
  }
  return false;
}

// Longest simple path has at least `edges` edges (exhaustive DFS).
bool has_long_path(const MetricGraph& g, int edges, unsigned long long budget) {
  if (edges == 0) return g.vertex_count() >= 1;
  unsigned long long nodes = 0;
  std::vector<bool> used(g.vertex_count(), false);
  std::function<bool(VertexId, int)> dfs = [&](VertexId v, int depth) -> bool {
    if (depth == edges) return true;
    if (++nodes > budget) throw contract_error("minor test budget exhausted");
    for (const auto& [w, e] : g.neighbors(v)) {
      if (used[w]) continue;
      used[w] = true;
      if (dfs(w, depth + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    used[s] = true;
    if (dfs(s, 0)) return true;
    used[s] = false;
  }
  return false;
}

std::vector<VertexId> boundary(const MetricGraph& g, const Candidate& c) {
  std::vector<VertexId> out;
  for (VertexId v : c.verts)
    for (const auto& [w, e] : g.neighbors(v))
      if (!c.bits[w]) out.push_back(w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Star minor: a connected set with at least m distinct outside neighbors.
std::optional<std::vector<std::vector<VertexId>>> star_witness(
    const MetricGraph& g, int m, unsigned long long budget) {
  // Any vertex of degree >= m settles it at once.
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (static_cast<int>(g.neighbors(v).size()) >= m) {
      std::vector<std::vector<VertexId>> model;
      model.push_back({v});
      for (int i = 0; i < m; ++i) model.push_back({g.neighbors(v)[i].first});
      return model;
    }
  if (g.vertex_count() > detail::kMaxSearchVertices)
    throw contract_error("minor test budget exhausted (graph too large)");
  unsigned long long nodes = 0;
  auto cands = detail::connected_sets(g, g.vertex_count());
  for (const auto& c : cands) {
    if (++nodes > budget) throw contract_error("minor test budget exhausted");
    auto nb = boundary(g, c);
    if (static_cast<int>(nb.size()) >= m) {
      std::vector<std::vector<VertexId>> model;
      model.push_back(c.verts);
      for (int i = 0; i < m; ++i) model.push_back({nb[i]});
      return model;
    }
  }
  return std::nullopt;
}

// Exhaustive minor-model search for a general small pattern: disjoint
// connected branch sets with a host edge across every pattern edge.
std::optional<std::vector<std::vector<VertexId>>> general_witness(
    const MetricGraph& g, const PatternGraph& pat, unsigned long long budget) {
  if (pat.n() > 6)
    throw contract_error("pattern too large for the exhaustive minor search");
  if (g.vertex_count() > detail::kMaxSearchVertices)
    throw contract_error("minor test budget exhausted (graph too large)");
  int h = pat.n();
  auto cands = detail::connected_sets(g, g.vertex_count() - h + 1);
  std::vector<const Candidate*> sets(h, nullptr);
  unsigned long long nodes = 0;
  auto touches = [&](const Candidate& a, const Candidate& b) {
    for (VertexId v : a.verts)
      for (const auto& [w, e] : g.neighbors(v))
        if (b.bits[w]) return true;
    return false;
  };
  std::function<bool(int)> assign = [&](int i) -> bool {
    if (i == h) return true;
    for (const auto& c : cands) {
      if (++nodes > budget) throw contract_error("minor test budget exhausted");
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if ((sets[j]->bits & c.bits).any()) ok = false;
      for (int j = 0; j < i && ok; ++j)
        if (pat.adjacent(i, j) && !touches(*sets[j], c)) ok = false;
      if (!ok) continue;
      sets[i] = &c;
      if (assign(i + 1)) return true;
      sets[i] = nullptr;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  std::vector<std::vector<VertexId>> model;
  for (int i = 0; i < h; ++i) model.push_back(sets[i]->verts);
  return model;
}

}  // namespace

std::optional<std::vector<std::vector<VertexId>>> minor_test_witness(
    const MetricGraph& g, const PatternGraph& pattern, unsigned long long budget) {
  int m = star_leaves(pattern);
  if (m >= 1) return star_witness(g, m, budget);
  return general_witness(g, pattern, budget);
}

bool minor_test(const MetricGraph& g, const PatternGraph& pattern,
                unsigned long long budget) {
  if (pattern.n() == 0) return true;
  if (is_edgeless(pattern)) return g.vertex_count() >= pattern.n();
  if (is_triangle(pattern)) return has_cycle(g);
  int pe = path_edges(pattern);
  if (pe >= 0) return has_long_path(g, pe, budget);
  int m = star_leaves(pattern);
  if (m == 3) {
    // A vertex of degree >= 3 yields the model; otherwise every component
    // is a path or a cycle and no model exists.
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (g.neighbors(v).size() >= 3) return true;
    return false;
  }
  if (m >= 1) return star_witness(g, m, budget).has_value();
  return general_witness(g, pattern, budget).has_value();
}

}  // namespace coarse
