#include "coarse/fat_minor.hpp"

#include "search_util.hpp"

namespace coarse {

namespace {

using detail::Bits;
using detail::Candidate;
using detail::connected_sets;
constexpr int kMaxSearchVertices = detail::kMaxSearchVertices;

// Pattern vertex pairs interchangeable by an adjacency-preserving swap;
// candidate indices are forced ascending across them to skip symmetric
// duplicates.
std::vector<std::pair<int, int>> twin_pairs(const PatternGraph& p) {
  std::vector<std::pair<int, int>> out;
  int n = p.n();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool twin = true;
      for (int w = 0; w < n && twin; ++w) {
        if (w == u || w == v) continue;
        if (p.adjacent(u, w) != p.adjacent(v, w)) twin = false;
      }
      if (twin) out.push_back({u, v});
    }
  return out;
}

Dist set_pair_distance(const MetricGraph& g, const std::vector<VertexId>& a,
                       const std::vector<VertexId>& b) {
  Dist best = Dist::infinity();
  for (VertexId u : a) {
    const auto& row = g.dist_from(u);
    for (VertexId v : b) best = dist_min(best, row[v]);
  }
  return best;
}

struct Mask {
  std::vector<unsigned long long> words;
  explicit Mask(size_t bits = 0) : words((bits + 63) / 64, 0) {}
  void set(size_t i) { words[i >> 6] |= 1ULL << (i & 63); }
  bool test(size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void and_with(const Mask& o) {
    for (size_t w = 0; w < words.size(); ++w) words[w] &= o.words[w];
  }
  // Visits set bits in [lo, hi); the callback returns false to stop.
  template <typename F>
  bool scan(size_t lo, size_t hi, F&& f) const {
    if (lo >= hi) return true;
    for (size_t w = lo >> 6; w <= (hi - 1) >> 6 && w < words.size(); ++w) {
      unsigned long long bits = words[w];
      if (w == (lo >> 6)) bits &= ~0ULL << (lo & 63);
      if (w == ((hi - 1) >> 6) && (hi & 63)) bits &= (1ULL << (hi & 63)) - 1;
      while (bits) {
        size_t i = (w << 6) + static_cast<size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        if (!f(i)) return false;
      }
    }
    return true;
  }
};

}  // namespace

FatSearchResult search_fat_minor(const MetricGraph& g, const PatternGraph& pattern,
                                 const Rat& k, int size_budget,
                                 unsigned long long node_budget) {
  if (g.vertex_count() > kMaxSearchVertices)
    throw input_error("search supports at most 256 vertices");
  if (size_budget < 1) throw input_error("size budget must be positive");
  FatSearchResult result;
  int h = pattern.n();
  if (h == 0) return result;
  std::vector<Candidate> cands = connected_sets(g, size_budget);
  size_t nc = cands.size();
  std::vector<std::pair<int, int>> twins = twin_pairs(pattern);
  std::vector<int> degree(h, 0);
  for (auto [u, v] : pattern.edges) {
    degree[u]++;
    degree[v]++;
  }
  // A branch set needs one distinct outside neighbor per incident branch
  // path, so small-boundary candidates cannot play high-degree vertices.
  std::vector<int> boundary_size(nc, 0);
  for (size_t c = 0; c < nc; ++c) {
    std::vector<VertexId> nb;
    for (VertexId v : cands[c].verts)
      for (const auto& [w, e] : g.neighbors(v))
        if (!cands[c].bits[w]) nb.push_back(w);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    boundary_size[c] = static_cast<int>(nb.size());
  }

  // Compatibility of candidate pairs: disjoint and at least k apart. For
  // vertex-granular sets the exact region distance equals the least
  // vertex-pair distance.
  std::vector<Mask> compat(nc, Mask(nc));
  for (size_t a = 0; a < nc; ++a)
    for (size_t b = a + 1; b < nc; ++b) {
      if ((cands[a].bits & cands[b].bits).any()) continue;
      if (set_pair_distance(g, cands[a].verts, cands[b].verts) < k) continue;
      compat[a].set(b);
      compat[b].set(a);
    }

  // Candidates are sorted by size; size_first[s] is the first index of size s.
  std::vector<size_t> size_first(size_budget + 2, nc);
  for (size_t c = nc; c-- > 0;)
    size_first[cands[c].verts.size()] = c;
  for (int s2 = size_budget; s2 >= 1; --s2)
    if (size_first[s2] == nc) size_first[s2] = size_first[s2 + 1];

  std::vector<int> chosen(h, -1);
  std::vector<const Candidate*> sets(h, nullptr);
  bool budget_hit = false;
  auto charge = [&] {
    if (++result.nodes > node_budget) budget_hit = true;
    return budget_hit;
  };

  // Branch paths in pattern-edge order: canonical geodesics in the graph
  // masked away from foreign branch sets and earlier paths.
  auto try_paths = [&](FatModel& model) -> bool {
    std::vector<std::vector<Dist>> set_dist(h);
    for (int i = 0; i < h; ++i) set_dist[i] = multi_source_dist(g, sets[i]->verts);
    Bits in_any;
    for (int i = 0; i < h; ++i) in_any |= sets[i]->bits;
    std::vector<std::vector<Dist>> path_dist;
    std::vector<Bits> path_bits;
    for (int e = 0; e < pattern.m(); ++e) {
      auto [u, v] = pattern.edges[e];
      if (charge()) return false;
      auto allowed = [&](VertexId x) {
        if (in_any[x] && !sets[u]->bits[x] && !sets[v]->bits[x]) return false;
        for (int w = 0; w < h; ++w) {
          if (w == u || w == v) continue;
          if (set_dist[w][x] < k) return false;
        }
        for (size_t f = 0; f < path_dist.size(); ++f) {
          if (path_dist[f][x] < k) return false;
          if (path_bits[f][x]) return false;  // point-disjoint arcs, any k
        }
        return true;
      };
      std::vector<VertexId> sources, targets;
      for (VertexId x : sets[u]->verts)
        if (allowed(x)) sources.push_back(x);
      for (VertexId x : sets[v]->verts)
        if (allowed(x)) targets.push_back(x);
      VertexPath vp = canonical_shortest_path(g, sources, targets, allowed);
      if (vp.path.empty()) return false;
      model.branch_paths.push_back(Route::from_vertices(g, vp.path));
      path_dist.push_back(multi_source_dist(g, vp.path));
      Bits pb;
      for (VertexId x : vp.path) pb[x] = true;
      path_bits.push_back(pb);
    }
    return true;
  };

  std::function<bool(int, int, const Mask&)> assign = [&](int i, int remaining,
                                                          const Mask& feasible) -> bool {
    if (budget_hit) return false;
    if (i == h) {
      if (remaining != 0) return false;  // exact total per deepening pass
      FatModel model;
      model.pattern = pattern;
      model.level = k;
      for (int j = 0; j < h; ++j)
        model.branch_sets.push_back(induced_region(g, sets[j]->verts));
      if (!try_paths(model)) return false;
      FatVerdict verdict = verify_fat_model(g, model, k);
      if (!verdict.ok) return false;
      result.model = std::move(model);
      return true;
    }
    int need_after = h - i - 1;
    int smin = std::max(1, remaining - need_after * size_budget);
    int smax = remaining - need_after;
    if (smax < smin) return false;
    bool found = false;
    for (int size = smin; size <= smax && !found; ++size) {
      size_t lo = size_first[size], hi = size_first[size + 1];
      feasible.scan(lo, hi, [&](size_t c) {
        if (budget_hit) return false;
        if (boundary_size[c] < degree[i]) return true;
        if (charge()) return false;
        for (auto [a, b] : twins)
          if (b == i && chosen[a] >= static_cast<int>(c)) return true;
        chosen[i] = static_cast<int>(c);
        sets[i] = &cands[c];
        Mask next = feasible;
        next.and_with(compat[c]);
        if (assign(i + 1, remaining - size, next)) {
          found = true;
          return false;
        }
        chosen[i] = -1;
        sets[i] = nullptr;
        return true;
      });
    }
    return found;
  };

  Mask all(nc);
  for (size_t c = 0; c < nc; ++c) all.set(c);
  // Iterative deepening over total branch-set size: the first verified model
  // is canonical (least total size, then lexicographic candidate indices).
  for (int total = h; total <= h * size_budget; ++total) {
    if (assign(0, total, all)) {
      result.status = SearchStatus::Found;
      return result;
    }
    if (budget_hit) {
      result.status = SearchStatus::BudgetExhausted;
      return result;
    }
  }
  result.status = SearchStatus::None;
  return result;
}

}  // namespace coarse
