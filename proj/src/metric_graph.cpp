#include "coarse/metric_graph.hpp"

#include <algorithm>
#include <cctype>
#include <queue>

namespace coarse {

bool vertex_name_less(const std::string& a, const std::string& b) {
  auto numeric = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  bool na = numeric(a), nb = numeric(b);
  if (na != nb) return na;  // numbers sort before symbolic names
  if (na) {
    long va = std::stol(a), vb = std::stol(b);
    if (va != vb) return va < vb;
    return a < b;
  }
  return a < b;
}

VertexId MetricGraph::Builder::add_vertex(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  names_.push_back(name);
  index_[name] = id;
  return id;
}

void MetricGraph::Builder::add_edge(const std::string& u, const std::string& v, Rat len) {
  if (len <= 0) throw input_error("edge length must be positive: " + u + " " + v);
  int a = add_vertex(u), b = add_vertex(v);
  if (a == b) throw input_error("self-loop rejected at vertex " + u);
  edges_.push_back({a, b, std::move(len)});
}

MetricGraph MetricGraph::Builder::build() {
  std::vector<int> order(names_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return vertex_name_less(names_[a], names_[b]);
  });
  std::vector<int> rank(names_.size());
  std::vector<std::string> sorted_names(names_.size());
  for (size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = static_cast<int>(i);
    sorted_names[i] = names_[order[i]];
  }
  std::vector<EdgeRec> edges;
  edges.reserve(edges_.size());
  for (const auto& e : edges_) {
    int u = rank[e.u], v = rank[e.v];
    if (u > v) std::swap(u, v);
    edges.push_back({u, v, e.len});
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeRec& a, const EdgeRec& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return MetricGraph::raw(std::move(sorted_names), std::move(edges));
}

// Edge ids follow the given order (refinement relies on this).
MetricGraph MetricGraph::raw(std::vector<std::string> names, std::vector<EdgeRec> edges) {
  MetricGraph g;
  g.names_ = std::move(names);
  std::vector<std::pair<int, int>> keys;
  keys.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u == e.v) throw input_error("self-loop rejected at " + g.names_[e.u]);
    if (e.u < 0 || e.v >= static_cast<int>(g.names_.size()) || e.u > e.v)
      throw input_error("edge endpoint out of range");
    if (e.len <= 0) throw input_error("edge length must be positive");
    keys.push_back({e.u, e.v});
  }
  std::sort(keys.begin(), keys.end());
  for (size_t i = 0; i + 1 < keys.size(); ++i)
    if (keys[i] == keys[i + 1])
      throw input_error("parallel edge rejected: " + g.names_[keys[i].first] + " " +
                        g.names_[keys[i].second]);
  g.edges_ = std::move(edges);
  g.init_adjacency();
  return g;
}

void MetricGraph::init_adjacency() {
  adj_.assign(names_.size(), {});
  unit_ = true;
  for (size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    adj_[e.u].push_back({e.v, static_cast<EdgeId>(i)});
    adj_[e.v].push_back({e.u, static_cast<EdgeId>(i)});
    if (e.len != 1) unit_ = false;
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  by_name_.reserve(names_.size());
  for (size_t i = 0; i < names_.size(); ++i) by_name_[names_[i]] = static_cast<int>(i);
}

VertexId MetricGraph::vertex(const std::string& name) const {
  VertexId v = find_vertex(name);
  if (v < 0) throw input_error("unknown vertex: " + name);
  return v;
}

VertexId MetricGraph::find_vertex(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

EdgeId MetricGraph::edge_between(VertexId u, VertexId v) const {
  for (const auto& [w, e] : adj_[u])
    if (w == v) return e;
  return -1;
}

MetricGraph::MetricGraph(const MetricGraph& other)
    : names_(other.names_),
      edges_(other.edges_),
      adj_(other.adj_),
      by_name_(other.by_name_),
      unit_(other.unit_),
      cache_(std::make_unique<DistCache>()) {}

MetricGraph& MetricGraph::operator=(const MetricGraph& other) {
  if (this == &other) return *this;
  names_ = other.names_;
  edges_ = other.edges_;
  adj_ = other.adj_;
  by_name_ = other.by_name_;
  unit_ = other.unit_;
  cache_ = std::make_unique<DistCache>();
  return *this;
}

const std::vector<Dist>& MetricGraph::dist_from(VertexId src) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->map.find(src);
    if (it != cache_->map.end()) return *it->second;
  }
  auto out = std::make_shared<std::vector<Dist>>(vertex_count(), Dist::infinity());
  if (unit_) {
    std::vector<long> d(vertex_count(), -1);
    std::queue<VertexId> q;
    d[src] = 0;
    q.push(src);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (const auto& [w, e] : adj_[v])
        if (d[w] < 0) {
          d[w] = d[v] + 1;
          q.push(w);
        }
    }
    for (int v = 0; v < vertex_count(); ++v)
      if (d[v] >= 0) (*out)[v] = Dist::of(Rat(d[v]));
  } else {
    // Dijkstra with exact rational weights.
    std::vector<bool> done(vertex_count(), false);
    std::vector<Rat> d(vertex_count());
    std::vector<bool> seen(vertex_count(), false);
    using Item = std::pair<Rat, VertexId>;
    auto cmp = [](const Item& a, const Item& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    d[src] = 0;
    seen[src] = true;
    pq.push({Rat(0), src});
    while (!pq.empty()) {
      auto [dv, v] = pq.top();
      pq.pop();
      if (done[v]) continue;
      done[v] = true;
      (*out)[v] = Dist::of(dv);
      for (const auto& [w, e] : adj_[v]) {
        if (done[w]) continue;
        Rat cand = dv + edges_[e].len;
        if (!seen[w] || cand < d[w]) {
          seen[w] = true;
          d[w] = cand;
          pq.push({cand, w});
        }
      }
    }
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto [it, inserted] = cache_->map.emplace(src, out);
  return *it->second;
}

bool MetricGraph::connected() const {
  if (vertex_count() == 0) return true;
  const auto& d = dist_from(0);
  for (const auto& x : d)
    if (x.is_inf()) return false;
  return true;
}

Dist MetricGraph::diameter_vertices() const {
  Dist best = Dist::zero();
  for (int v = 0; v < vertex_count(); ++v) {
    const auto& d = dist_from(v);
    for (int w = v + 1; w < vertex_count(); ++w) best = dist_max(best, d[w]);
  }
  if (vertex_count() == 0) return Dist::zero();
  return best;
}

Dist MetricGraph::eccentricity(VertexId v) const {
  Dist best = Dist::zero();
  const auto& d = dist_from(v);
  for (const auto& x : d) best = dist_max(best, x);
  return best;
}

}  // namespace coarse
