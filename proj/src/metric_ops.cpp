#include "coarse/metric_ops.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace coarse {

std::vector<Dist> multi_source_dist(const MetricGraph& g,
                                    const std::vector<VertexId>& sources,
                                    const std::function<bool(VertexId)>& allowed) {
  std::vector<Dist> out(g.vertex_count(), Dist::infinity());
  if (g.unit_lengths()) {
    std::vector<long> d(g.vertex_count(), -1);
    std::queue<VertexId> q;
    for (VertexId s : sources)
      if ((!allowed || allowed(s)) && d[s] < 0) {
        d[s] = 0;
        q.push(s);
      }
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (const auto& [w, e] : g.neighbors(v))
        if (d[w] < 0 && (!allowed || allowed(w))) {
          d[w] = d[v] + 1;
          q.push(w);
        }
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (d[v] >= 0) out[v] = Dist::of(Rat(d[v]));
    return out;
  }
  std::vector<bool> done(g.vertex_count(), false);
  using Item = std::pair<Rat, VertexId>;
  auto cmp = [](const Item& a, const Item& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  for (VertexId s : sources) {
    if (allowed && !allowed(s)) continue;
    pq.push({Rat(0), s});
  }
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = true;
    out[v] = Dist::of(d);
    for (const auto& [w, e] : g.neighbors(v)) {
      if (done[w] || (allowed && !allowed(w))) continue;
      pq.push({d + g.edge(e).len, w});
    }
  }
  return out;
}

VertexPath canonical_shortest_path(const MetricGraph& g,
                                   const std::vector<VertexId>& sources,
                                   const std::vector<VertexId>& targets,
                                   const std::function<bool(VertexId)>& allowed) {
  VertexPath result;
  if (sources.empty() || targets.empty()) return result;
  std::vector<Dist> to_target = multi_source_dist(g, targets, allowed);
  VertexId start = -1;
  Dist best = Dist::infinity();
  std::vector<VertexId> sorted_sources = sources;
  std::sort(sorted_sources.begin(), sorted_sources.end());
  for (VertexId s : sorted_sources) {
    if (allowed && !allowed(s)) continue;
    if (to_target[s] < best) {
      best = to_target[s];
      start = s;
    }
  }
  if (start < 0 || best.is_inf()) return result;
  result.dist = best;
  std::vector<bool> is_target(g.vertex_count(), false);
  for (VertexId t : targets) is_target[t] = true;
  VertexId v = start;
  Dist remaining = best;
  result.path.push_back(v);
  while (!(is_target[v] && remaining == Rat(0))) {
    VertexId next = -1;
    Dist next_remaining = Dist::infinity();
    for (const auto& [w, e] : g.neighbors(v)) {  // sorted by id
      if (allowed && !allowed(w)) continue;
      if (to_target[w].is_inf()) continue;
      if (to_target[w] + g.edge(e).len == remaining) {
        next = w;
        next_remaining = to_target[w];
        break;
      }
    }
    if (next < 0) throw internal_error("canonical path walk lost the gradient");
    v = next;
    remaining = next_remaining;
    result.path.push_back(v);
  }
  return result;
}

Dist distance(const MetricGraph& g, const Locus& a, const Locus& b) {
  return locus_distance(g, a, b);
}

namespace {

// Refined-region distance helpers. The refinement must include both regions'
// cut loci so each region is a union of whole vertices and whole edges.
std::vector<VertexId> region_vertices_refined(const Refinement& ref, const Region& reg) {
  Region r = ref.to_refined(reg);
  std::vector<VertexId> out = r.vertices();
  // Segments are whole refined edges; endpoints are already in the vertex
  // list by canonicalization.
  return out;
}

std::vector<Locus> merge_cuts(std::initializer_list<const Region*> regions,
                              const MetricGraph& g) {
  std::vector<Locus> cuts;
  for (const Region* r : regions) {
    auto c = r->cut_loci(g);
    cuts.insert(cuts.end(), c.begin(), c.end());
  }
  return cuts;
}

// Region made of whole vertices and whole edges only: distances and
// connectivity reduce to vertex-level computations.
bool whole_edge_granular(const MetricGraph& g, const Region& r) {
  for (const auto& [e, list] : r.segments())
    for (const auto& seg : list)
      if (!(seg.lo == 0 && seg.hi == g.edge(e).len)) return false;
  return true;
}

}  // namespace

RegionDistanceWitness region_distance_witness(const MetricGraph& g, const Region& a,
                                              const Region& b) {
  if (a.empty() || b.empty()) throw input_error("region distance of empty region");
  RegionDistanceWitness w;
  if (a.intersects(g, b)) {
    Locus shared = a.intersection(g, b).any_point(g);
    w.dist = Dist::zero();
    w.a = w.b = shared;
    return w;
  }
  // Vertex-level fast path: for regions of whole vertices and whole edges
  // the infimum is attained at a vertex pair.
  if (whole_edge_granular(g, a) && whole_edge_granular(g, b)) {
    Dist best = Dist::infinity();
    VertexId ba = -1, bb = -1;
    for (VertexId va : a.vertices()) {
      const auto& d = g.dist_from(va);
      for (VertexId vb : b.vertices())
        if (d[vb] < best) {
          best = d[vb];
          ba = va;
          bb = vb;
        }
    }
    w.dist = best;
    if (ba >= 0) {
      w.a = Locus::vertex(ba);
      w.b = Locus::vertex(bb);
    }
    return w;
  }
  Refinement ref(g, merge_cuts({&a, &b}, g));
  auto sa = region_vertices_refined(ref, a);
  auto sb = region_vertices_refined(ref, b);
  std::vector<Dist> d = multi_source_dist(ref.graph(), sa);
  Dist best = Dist::infinity();
  VertexId arg = -1;
  for (VertexId v : sb)
    if (d[v] < best) {
      best = d[v];
      arg = v;
    }
  w.dist = best;
  if (arg >= 0) {
    // Recover the source side by a reverse sweep.
    std::vector<Dist> db = multi_source_dist(ref.graph(), {arg});
    VertexId src = -1;
    for (VertexId v : sa)
      if (db[v] == best) {
        src = v;
        break;
      }
    if (src < 0) {
      for (VertexId v : sa)
        if (!db[v].is_inf() && db[v] <= best) {
          src = v;
          break;
        }
    }
    w.a = ref.to_original(Locus::vertex(src));
    w.b = ref.to_original(Locus::vertex(arg));
  }
  return w;
}

Dist region_distance(const MetricGraph& g, const Region& a, const Region& b) {
  return region_distance_witness(g, a, b).dist;
}

std::optional<Route> geodesic(const MetricGraph& g, const Region& a, const Region& b) {
  if (a.empty() || b.empty()) throw input_error("geodesic endpoints must be nonempty");
  if (a.intersects(g, b))
    return Route::trivial(a.intersection(g, b).any_point(g));
  Refinement ref(g, merge_cuts({&a, &b}, g));
  auto sa = region_vertices_refined(ref, a);
  auto sb = region_vertices_refined(ref, b);
  VertexPath p = canonical_shortest_path(ref.graph(), sa, sb);
  if (p.path.empty()) return std::nullopt;
  Route r = Route::from_vertices(ref.graph(), p.path);
  return ref.to_original(r);
}

Region ball(const MetricGraph& g, const Locus& center, const Rat& r) {
  Region s = Region::of_locus(g, center);
  return ball_around(g, s, r);
}

Region ball_around(const MetricGraph& g, const Region& s, const Rat& r) {
  if (r < 0) throw input_error("ball radius must be nonnegative");
  if (s.empty()) throw input_error("ball around empty region");
  std::vector<Dist> d = dist_to_region(g, s);
  Region out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (d[v] <= r) out.add_vertex(g, v);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (d[rec.u] <= r) {
      Rat reach = r - d[rec.u].value();
      out.add_segment(g, e, Rat(0), std::min(rec.len, reach));
    }
    if (d[rec.v] <= r) {
      Rat reach = Rat(rec.len) - (r - d[rec.v].value());
      out.add_segment(g, e, std::max(Rat(0), reach), rec.len);
    }
    // Direct expansion of s's own segments along their edge.
    auto it = s.segments().find(e);
    if (it != s.segments().end())
      for (const auto& seg : it->second) {
        Rat lo = seg.lo - r, hi = seg.hi + r;
        out.add_segment(g, e, std::max(Rat(0), lo), std::min(rec.len, hi));
      }
  }
  return out;
}

std::vector<Dist> dist_to_region(const MetricGraph& g, const Region& s) {
  if (s.pure_vertices()) return multi_source_dist(g, s.vertices());
  Refinement ref(g, s.cut_loci(g));
  auto sv = region_vertices_refined(ref, s);
  std::vector<Dist> d = multi_source_dist(ref.graph(), sv);
  d.resize(g.vertex_count());  // original ids are preserved
  return d;
}

std::vector<Region> region_components(const MetricGraph& g, const Region& r) {
  if (r.empty()) return {};
  if (whole_edge_granular(g, r)) {
    std::vector<int> parent(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<EdgeId> covered;
    for (const auto& [e, list] : r.segments())
      if (!list.empty()) covered.push_back(e);
    for (EdgeId e : covered) {
      int a = find(g.edge(e).u), b = find(g.edge(e).v);
      if (a != b) parent[a] = b;
    }
    std::map<int, Region> groups;
    for (VertexId v : r.vertices()) groups[find(v)].add_vertex(g, v);
    for (EdgeId e : covered) groups[find(g.edge(e).u)].add_whole_edge(g, e);
    std::vector<Region> out;
    for (auto& [root, reg] : groups) out.push_back(std::move(reg));
    std::sort(out.begin(), out.end(), [&](const Region& a, const Region& b) {
      return a.any_point(g) < b.any_point(g);
    });
    return out;
  }
  Refinement ref(g, r.cut_loci(g));
  const MetricGraph& rg = ref.graph();
  Region rr = ref.to_refined(r);
  std::vector<int> comp(rg.vertex_count(), -1);
  std::vector<VertexId> verts = rr.vertices();
  // Union-find over the region's refined vertices, joined by covered edges.
  std::vector<int> parent(rg.vertex_count());
  for (int i = 0; i < rg.vertex_count(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<EdgeId> covered;
  for (const auto& [e, list] : rr.segments())
    for (const auto& seg : list)
      if (seg.lo == 0 && seg.hi == rg.edge(e).len) covered.push_back(e);
  for (EdgeId e : covered) {
    int a = find(rg.edge(e).u), b = find(rg.edge(e).v);
    if (a != b) parent[a] = b;
  }
  std::map<int, Region> groups;  // root -> refined region
  for (VertexId v : verts) groups[find(v)].add_vertex(rg, v);
  for (EdgeId e : covered) groups[find(rg.edge(e).u)].add_whole_edge(rg, e);
  // Degenerate interior segments [x,x] are cut vertices already.
  std::vector<Region> out;
  for (auto& [root, reg] : groups) out.push_back(ref.to_original(reg));
  std::sort(out.begin(), out.end(), [&](const Region& a, const Region& b) {
    return a.any_point(g) < b.any_point(g);
  });
  return out;
}

bool region_connected(const MetricGraph& g, const Region& r) {
  return region_components(g, r).size() <= 1;
}

Region region_component_of(const MetricGraph& g, const Region& r, const Locus& at) {
  for (const auto& c : region_components(g, r))
    if (c.contains(g, at)) return c;
  throw input_error("locus not in region");
}

std::vector<Region> near_components(const MetricGraph& g, const Region& s, const Rat& m) {
  if (m <= 0) throw input_error("near-component scale must be positive");
  if (s.empty()) return {};
  std::vector<Region> pieces;
  if (s.pure_vertices()) {
    for (VertexId v : s.vertices()) pieces.push_back(Region::of_vertex(v));
  } else {
    pieces = region_components(g, s);
  }
  int k = static_cast<int>(pieces.size());
  std::vector<int> parent(k);
  for (int i = 0; i < k; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool all_vertices = s.pure_vertices();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (find(i) == find(j)) continue;
      Dist d = all_vertices
                   ? g.dist(pieces[i].vertices()[0], pieces[j].vertices()[0])
                   : region_distance(g, pieces[i], pieces[j]);
      if (d <= m) parent[find(i)] = find(j);
    }
  std::map<int, Region> groups;
  for (int i = 0; i < k; ++i) {
    auto& reg = groups[find(i)];
    reg.unite(g, pieces[i]);
  }
  std::vector<Region> out;
  for (auto& [root, reg] : groups) out.push_back(std::move(reg));
  std::sort(out.begin(), out.end(), [&](const Region& a, const Region& b) {
    return a.any_point(g) < b.any_point(g);
  });
  return out;
}

Region induced_region(const MetricGraph& g, const std::vector<VertexId>& verts) {
  Region r = Region::of_vertices(verts);
  for (VertexId v : verts)
    for (const auto& [w, e] : g.neighbors(v))
      if (w > v && r.contains_vertex(w)) r.add_whole_edge(g, e);
  return r;
}

RouteRegionProfile::RouteRegionProfile(const MetricGraph& g, const Route& route,
                                       const Region& s) {
  Refinement ref(g, s.cut_loci(g));
  const MetricGraph& rg = ref.graph();
  Region rs = ref.to_refined(s);
  Route rr = ref.to_refined(route);
  std::vector<Dist> ds = multi_source_dist(rg, rs.vertices());
  std::vector<bool> covered(rg.edge_count(), false);
  for (const auto& [e, list] : rs.segments())
    for (const auto& seg : list)
      if (seg.lo == 0 && seg.hi == rg.edge(e).len) covered[e] = true;

  Rat t = 0;
  if (rr.steps().empty()) {
    Locus at = rr.first();
    Dist v = at.is_vertex()
                 ? ds[at.v]
                 : dist_min(ds[rg.edge(at.e).u] + at.offset,
                            ds[rg.edge(at.e).v] + Rat(rg.edge(at.e).len - at.offset));
    if (!at.is_vertex() && covered[at.e]) v = Dist::zero();
    pieces_.push_back({Rat(0), Rat(0), v, 0});
    return;
  }
  for (const auto& st : rr.steps()) {
    Rat len = abs(st.to - st.from);
    const auto& rec = rg.edge(st.e);
    if (covered[st.e]) {
      pieces_.push_back({t, Rat(t + len), Dist::zero(), 0});
      t += len;
      continue;
    }
    const Dist& du = ds[rec.u];
    const Dist& dv = ds[rec.v];
    bool forward = st.to > st.from;
    // Value as a function of the edge offset x: min(du + x, dv + L - x).
    auto offset_val = [&](const Rat& x) {
      return dist_min(du + x, dv + Rat(rec.len - x));
    };
    if (du.is_inf() && dv.is_inf()) {
      pieces_.push_back({t, Rat(t + len), Dist::infinity(), 0});
      t += len;
      continue;
    }
    // Split the traversed range at the peak of the lower envelope.
    std::vector<Rat> xs{st.from, st.to};
    if (!du.is_inf() && !dv.is_inf()) {
      Rat cross = (dv.value() + rec.len - du.value()) / 2;
      Rat lo = std::min(st.from, st.to), hi = std::max(st.from, st.to);
      if (cross > lo && cross < hi) xs.insert(xs.begin() + 1, cross);
    }
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      Rat seg_len = abs(xs[i + 1] - xs[i]);
      Dist f0 = offset_val(xs[i]);
      Dist f1 = offset_val(xs[i + 1]);
      int slope = 0;
      if (!f0.is_inf() && !f1.is_inf() && f0 < f1)
        slope = 1;
      else if (!f0.is_inf() && !f1.is_inf() && f1 < f0)
        slope = -1;
      pieces_.push_back({t, Rat(t + seg_len), f0, slope});
      t += seg_len;
    }
    (void)forward;
  }
}

Dist RouteRegionProfile::value_at(const Rat& t) const {
  for (const auto& p : pieces_)
    if (t >= p.t0 && t <= p.t1) {
      if (p.f0.is_inf()) return Dist::infinity();
      return Dist::of(p.f0.value() + Rat(p.slope) * (t - p.t0));
    }
  throw input_error("profile parameter out of range");
}

Dist RouteRegionProfile::minimum() const {
  Dist best = Dist::infinity();
  for (const auto& p : pieces_) {
    if (p.f0.is_inf()) continue;
    best = dist_min(best, p.f0);
    best = dist_min(best, Dist::of(p.f0.value() + Rat(p.slope) * (p.t1 - p.t0)));
  }
  return best;
}

Dist RouteRegionProfile::min_in_range(const Rat& t0, const Rat& t1) const {
  Dist best = Dist::infinity();
  for (const auto& p : pieces_) {
    if (p.t1 < t0 || p.t0 > t1) continue;
    if (p.f0.is_inf()) continue;
    Rat lo = std::max(p.t0, t0), hi = std::min(p.t1, t1);
    best = dist_min(best, Dist::of(p.f0.value() + Rat(p.slope) * (lo - p.t0)));
    best = dist_min(best, Dist::of(p.f0.value() + Rat(p.slope) * (hi - p.t0)));
  }
  return best;
}

std::optional<Rat> RouteRegionProfile::last_within(const Rat& thresh) const {
  if (pieces_.empty()) return std::nullopt;
  return last_within_before(thresh, pieces_.back().t1);
}

std::optional<Rat> RouteRegionProfile::last_within_before(const Rat& thresh,
                                                          const Rat& before) const {
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    const Piece& p = *it;
    if (p.t0 > before || p.f0.is_inf()) continue;
    Rat hi = std::min(p.t1, before);
    Rat f_hi = p.f0.value() + Rat(p.slope) * (hi - p.t0);
    if (f_hi <= thresh) return hi;
    if (p.slope == 1 && p.f0.value() <= thresh)
      return Rat(p.t0 + (thresh - p.f0.value()));
  }
  return std::nullopt;
}

std::optional<Rat> RouteRegionProfile::first_within_from(const Rat& thresh,
                                                         const Rat& after) const {
  for (const auto& p : pieces_) {
    if (p.t1 < after || p.f0.is_inf()) continue;
    Rat lo = std::max(p.t0, after);
    Rat f_lo = p.f0.value() + Rat(p.slope) * (lo - p.t0);
    if (f_lo <= thresh) return lo;
    if (p.slope == -1) {
      // Value decreases; find where it meets thresh.
      Rat hit = p.t0 + (p.f0.value() - thresh);
      if (hit <= p.t1 && hit >= lo) return hit;
    }
  }
  return std::nullopt;
}

bool separates(const MetricGraph& g, const Region& s, const Region& a, const Region& z) {
  std::vector<Locus> cuts = s.cut_loci(g);
  for (const Region* r : {&a, &z}) {
    auto c = r->cut_loci(g);
    cuts.insert(cuts.end(), c.begin(), c.end());
  }
  Refinement ref(g, cuts);
  const MetricGraph& rg = ref.graph();
  Region rs = ref.to_refined(s);
  Region ra = ref.to_refined(a);
  Region rz = ref.to_refined(z);

  auto covered_edges = [&](const Region& r) {
    std::vector<bool> out(rg.edge_count(), false);
    for (const auto& [e, list] : r.segments())
      for (const auto& seg : list)
        if (seg.lo == 0 && seg.hi == rg.edge(e).len) out[e] = true;
    return out;
  };
  std::vector<bool> s_edge = covered_edges(rs);
  std::vector<bool> s_vert(rg.vertex_count(), false);
  for (VertexId v : rs.vertices()) s_vert[v] = true;

  // Elements: surviving vertices [0, n) and surviving edges [n, n + m).
  int n = rg.vertex_count();
  int total = n + rg.edge_count();
  std::vector<int> parent(total);
  for (int i = 0; i < total; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e = 0; e < rg.edge_count(); ++e) {
    if (s_edge[e]) continue;
    const auto& rec = rg.edge(e);
    if (!s_vert[rec.u]) parent[find(n + e)] = find(rec.u);
    if (!s_vert[rec.v]) parent[find(n + e)] = find(rec.v);
  }
  auto elements = [&](const Region& r) {
    std::vector<int> out;
    for (VertexId v : r.vertices())
      if (!s_vert[v]) out.push_back(find(v));
    for (const auto& [e, list] : r.segments())
      for (const auto& seg : list) {
        if (s_edge[e]) continue;
        if (seg.lo == 0 && seg.hi == rg.edge(e).len)
          out.push_back(find(n + e));
        else if (!rs.contains(rg, make_locus(rg, e, seg.lo)))
          // Degenerate piece [x,x]: refined cut vertices carry those, whole
          // edges carry the rest; a degenerate mid-edge piece can only be a
          // cut vertex, handled above.
          out.push_back(find(n + e));
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<int> ea = elements(ra);
  if (ea.empty()) return true;  // a lies inside s
  std::vector<int> ez = elements(rz);
  if (ez.empty()) return true;
  std::vector<int> common;
  std::set_intersection(ea.begin(), ea.end(), ez.begin(), ez.end(),
                        std::back_inserter(common));
  return common.empty();
}

}  // namespace coarse
