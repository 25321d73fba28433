#pragma once

#include <algorithm>
#include <bitset>
#include <functional>

#include "coarse/metric_graph.hpp"

namespace coarse::detail {

constexpr int kMaxSearchVertices = 256;
using Bits = std::bitset<kMaxSearchVertices>;

struct Candidate {
  Bits bits;
  std::vector<VertexId> verts;  // sorted
};

// All connected vertex sets of size <= cap, canonically ordered by
// (size, lexicographic vertex list). An exclusion set makes every set
// appear exactly once.
inline std::vector<Candidate> connected_sets(const MetricGraph& g, int cap) {
  std::vector<Candidate> out;
  int n = g.vertex_count();
  std::function<void(Bits&, Bits&, std::vector<VertexId>&)> grow =
      [&](Bits& cur, Bits& excluded, std::vector<VertexId>& verts) {
        out.push_back({cur, verts});
        if (static_cast<int>(verts.size()) == cap) return;
        std::vector<VertexId> frontier;
        for (VertexId v : verts)
          for (const auto& [w, e] : g.neighbors(v))
            if (!cur[w] && !excluded[w]) frontier.push_back(w);
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        Bits local_excluded = excluded;
        for (VertexId w : frontier) {
          cur[w] = true;
          auto pos = std::lower_bound(verts.begin(), verts.end(), w);
          size_t at = pos - verts.begin();
          verts.insert(pos, w);
          grow(cur, local_excluded, verts);
          verts.erase(verts.begin() + at);
          cur[w] = false;
          local_excluded[w] = true;
        }
      };
  for (VertexId v = 0; v < n; ++v) {
    Bits s, x;
    for (VertexId u = 0; u < v; ++u) x[u] = true;
    s[v] = true;
    std::vector<VertexId> verts{v};
    grow(s, x, verts);
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
    return a.verts < b.verts;
  });
  return out;
}

}  // namespace coarse::detail
