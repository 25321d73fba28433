#include "coarse/far_paths.hpp"

#include <algorithm>

namespace coarse {

namespace {

struct Search {
  const MetricGraph& g;
  std::vector<bool> in_a, in_z;
  int want;
  Rat r;
  unsigned long long budget;
  unsigned long long nodes = 0;
  bool exhausted = false;
  std::vector<std::vector<VertexId>> chosen;
  std::vector<std::vector<Dist>> chosen_dist;  // distance to each chosen path

  bool charge() {
    if (++nodes > budget) exhausted = true;
    return exhausted;
  }

  bool far_from_chosen(VertexId v) const {
    for (const auto& d : chosen_dist)
      if (d[v] < r) return false;
    return true;
  }

  // Can the remaining demand be met with one more path found by plain
  // reachability? Used at the last level to avoid enumonation.
  bool reachable_last_path(std::vector<VertexId>* out) {
    std::vector<VertexId> parent(g.vertex_count(), -1);
    std::vector<VertexId> queue;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (in_a[v] && far_from_chosen(v)) {
        parent[v] = v;
        queue.push_back(v);
      }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId v = queue[qi];
      if (in_z[v]) {
        std::vector<VertexId> path{v};
        while (parent[path.back()] != path.back()) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        *out = std::move(path);
        return true;
      }
      for (const auto& [w, e] : g.neighbors(v)) {
        if (parent[w] >= 0 || !far_from_chosen(w)) continue;
        parent[w] = v;
        queue.push_back(w);
      }
    }
    return false;
  }

  bool extend(std::vector<VertexId>& path, std::vector<bool>& used) {
    if (exhausted) return false;
    VertexId v = path.back();
    if (in_z[v]) return complete_path(path);
    for (const auto& [w, e] : g.neighbors(v)) {
      if (used[w] || !far_from_chosen(w)) continue;
      if (in_a[w]) continue;  // paths start at their last A-contact
      if (charge()) return false;
      used[w] = true;
      path.push_back(w);
      if (extend(path, used)) return true;
      path.pop_back();
      used[w] = false;
    }
    return false;
  }

  bool complete_path(const std::vector<VertexId>& path) {
    chosen.push_back(path);
    chosen_dist.push_back(multi_source_dist(g, path));
    bool ok = next_level();
    if (ok) return true;
    chosen.pop_back();
    chosen_dist.pop_back();
    return false;
  }

  bool next_level() {
    if (static_cast<int>(chosen.size()) == want) return true;
    if (static_cast<int>(chosen.size()) == want - 1) {
      std::vector<VertexId> last;
      if (reachable_last_path(&last)) {
        chosen.push_back(std::move(last));
        return true;
      }
      return false;
    }
    std::vector<bool> used(g.vertex_count(), false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!in_a[v] || !far_from_chosen(v)) continue;
      if (charge()) return false;
      if (in_z[v]) {
        // Single-vertex path touching both terminals.
        std::vector<VertexId> trivial{v};
        if (complete_path(trivial)) return true;
        continue;
      }
      used[v] = true;
      std::vector<VertexId> path{v};
      if (extend(path, used)) return true;
      used[v] = false;
    }
    return false;
  }
};

}  // namespace

FarPathsResult far_paths_bruteforce(const MetricGraph& g, const Region& a,
                                    const Region& z, int n, const Rat& r,
                                    unsigned long long budget) {
  if (n < 1) throw input_error("need at least one path");
  FarPathsResult out;
  Search s{g, std::vector<bool>(g.vertex_count(), false),
           std::vector<bool>(g.vertex_count(), false), n, r, budget};
  // Vertex-granular reading of the terminal regions.
  for (VertexId v : a.vertices()) s.in_a[v] = true;
  for (VertexId v : z.vertices()) s.in_z[v] = true;
  bool found = s.next_level();
  out.nodes = s.nodes;
  if (found) {
    out.status = FarPathsStatus::Found;
    out.paths = std::move(s.chosen);
  } else {
    out.status = s.exhausted ? FarPathsStatus::BudgetExhausted : FarPathsStatus::None;
  }
  return out;
}

}  // namespace coarse
