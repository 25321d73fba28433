#include "coarse/quasi_tree.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace coarse {

namespace {

long level_of(const MetricGraph& g, VertexId root, VertexId v) {
  return rat_to_long(g.dist(root, v).value());
}

// Near-path between two vertices of a class: BFS over hops of length <= scale,
// each hop realized by the canonical geodesic.
Route class_walk(const MetricGraph& g, const std::vector<VertexId>& members,
                 VertexId from, VertexId to, const Rat& scale) {
  if (from == to) return Route::trivial(Locus::vertex(from));
  std::map<VertexId, VertexId> parent;
  std::queue<VertexId> q;
  parent[from] = from;
  q.push(from);
  while (!q.empty() && !parent.count(to)) {
    VertexId v = q.front();
    q.pop();
    const auto& row = g.dist_from(v);
    for (VertexId w : members) {
      if (parent.count(w) || row[w] > scale) continue;
      parent[w] = v;
      q.push(w);
    }
  }
  if (!parent.count(to)) throw internal_error("class is not near-connected");
  std::vector<VertexId> hops{to};
  while (hops.back() != from) hops.push_back(parent[hops.back()]);
  std::reverse(hops.begin(), hops.end());
  Route walk = Route::trivial(Locus::vertex(from));
  walk.set_walk_flag(true);
  for (size_t i = 0; i + 1 < hops.size(); ++i) {
    auto leg = geodesic(g, Region::of_vertex(hops[i]), Region::of_vertex(hops[i + 1]));
    if (!leg) throw internal_error("disconnected class members");
    walk.append(g, *leg);
  }
  return walk;
}

}  // namespace

SpherePartition sphere_partition(const MetricGraph& g, VertexId root, const Rat& k) {
  if (!g.unit_lengths())
    throw input_error("sphere partition needs unit edge lengths; pre-subdivide");
  if (!g.connected()) throw input_error("sphere partition needs a connected graph");
  if (k <= 0) throw input_error("scale must be positive");
  SpherePartition sp;
  sp.root = root;
  sp.scale = 5 * k;
  long ecc = rat_to_long(g.eccentricity(root).value());
  sp.classes.assign(ecc + 1, {});
  sp.diam.assign(ecc + 1, {});
  sp.level_of.assign(g.vertex_count(), 0);
  sp.class_of.assign(g.vertex_count(), {-1, -1});
  std::vector<std::vector<VertexId>> spheres(ecc + 1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    long l = level_of(g, root, v);
    sp.level_of[v] = static_cast<VertexId>(l);
    spheres[l].push_back(v);
  }
  for (long n = 0; n <= ecc; ++n) {
    auto classes = near_components(g, Region::of_vertices(spheres[n]), sp.scale);
    for (const auto& cls : classes) {
      int idx = static_cast<int>(sp.classes[n].size());
      std::vector<VertexId> members = cls.vertices();
      for (VertexId v : members) sp.class_of[v] = {static_cast<int>(n), idx};
      Rat diam = 0;
      for (size_t i = 0; i < members.size(); ++i) {
        const auto& row = g.dist_from(members[i]);
        for (size_t j = i + 1; j < members.size(); ++j)
          diam = std::max(diam, Rat(row[members[j]].value()));
      }
      sp.diam[n].push_back(diam);
      sp.classes[n].push_back(std::move(members));
    }
  }
  return sp;
}

TreeResult build_tree(const MetricGraph& g, const SpherePartition& sp, const Rat& k) {
  TreeResult out;
  Rat bound = 10 * k;
  int levels = static_cast<int>(sp.classes.size());
  for (int n = 0; n < levels; ++n) {
    // Claim 1: class diameters stay within 10k.
    for (int i = 0; i < static_cast<int>(sp.classes[n].size()); ++i) {
      if (sp.diam[n][i] <= bound) continue;
      Claim1Violation v;
      v.level = n;
      v.index = i;
      v.dist = sp.diam[n][i];
      const auto& members = sp.classes[n][i];
      for (size_t a = 0; a < members.size() && v.x1 < 0; ++a) {
        const auto& row = g.dist_from(members[a]);
        for (size_t b = a + 1; b < members.size(); ++b)
          if (row[members[b]] == v.dist) {
            v.x1 = members[a];
            v.x2 = members[b];
            break;
          }
      }
      out.claim1 = v;
      return out;
    }
    if (n == 0) continue;
    // Claim 2: every class has exactly one parent below.
    for (int i = 0; i < static_cast<int>(sp.classes[n].size()); ++i) {
      std::vector<int> parents;
      for (VertexId v : sp.classes[n][i])
        for (const auto& [w, e] : g.neighbors(v)) {
          if (sp.level_of[w] != n - 1) continue;
          int p = sp.class_of[w].second;
          if (std::find(parents.begin(), parents.end(), p) == parents.end())
            parents.push_back(p);
        }
      if (parents.size() <= 1) continue;
      std::sort(parents.begin(), parents.end());
      Claim2Violation v;
      v.level = n;
      v.index = i;
      v.parent_a = parents[0];
      v.parent_b = parents[1];
      // Witness path: walk edge + near-path inside the class + edge, then
      // cut at the first boundary pair of low runs landing in distinct
      // classes of level n-1.
      VertexId u_prime = -1, u = -1, w_prime = -1, w = -1;
      for (VertexId x : sp.classes[n][i]) {
        for (const auto& [y, e] : g.neighbors(x)) {
          if (sp.level_of[y] != n - 1) continue;
          if (sp.class_of[y].second == v.parent_a && u < 0) {
            u = x;
            u_prime = y;
          }
          if (sp.class_of[y].second == v.parent_b && w < 0) {
            w = x;
            w_prime = y;
          }
        }
      }
      Route walk = Route::trivial(Locus::vertex(u_prime));
      walk.set_walk_flag(true);
      walk.append(g, Route::from_vertices(g, {u_prime, u}));
      walk.append(g, class_walk(g, sp.classes[n][i], u, w, sp.scale));
      walk.append(g, Route::from_vertices(g, {w, w_prime}));
      // Scan junction vertices for runs at level <= n-1.
      auto juncs = walk.junctions(g);
      std::vector<std::pair<VertexId, Rat>> verts;
      for (const auto& [loc, t] : juncs)
        if (loc.is_vertex()) verts.push_back({loc.v, t});
      long low_level = n - 1;
      VertexId a = -1, z = -1;
      VertexId run_last = -1;
      for (size_t idx = 0; idx < verts.size(); ++idx) {
        bool low = sp.level_of[verts[idx].first] <= low_level;
        if (!low) continue;
        bool starts_run = (idx == 0) || sp.level_of[verts[idx - 1].first] > low_level;
        if (starts_run && run_last >= 0) {
          VertexId y1 = run_last, y2 = verts[idx].first;
          if (sp.level_of[y1] == low_level && sp.level_of[y2] == low_level &&
              sp.class_of[y1].second != sp.class_of[y2].second) {
            a = y1;
            z = y2;
            break;
          }
        }
        bool ends_run = (idx + 1 == verts.size()) ||
                        sp.level_of[verts[idx + 1].first] > low_level;
        if (ends_run) run_last = verts[idx].first;
      }
      if (a < 0)
        throw internal_error("claim 2 violation without a boundary pair");
      // The witness path itself: canonical shortest a-z path with interior
      // above level n-1.
      auto allowed = [&](VertexId x) {
        return x == a || x == z || sp.level_of[x] > low_level;
      };
      VertexPath vp = canonical_shortest_path(g, {a}, {z}, allowed);
      if (vp.path.empty()) throw internal_error("claim 2 witness path vanished");
      v.a_path = Route::from_vertices(g, vp.path);
      v.a = a;
      v.z = z;
      v.class_a = sp.class_of[a].second;
      v.class_z = sp.class_of[z].second;
      out.claim2 = v;
      return out;
    }
  }
  // No violation: assemble the tree.
  QuasiTreeSuccess success;
  MetricGraph::Builder b;
  std::vector<std::vector<int>> base(levels);
  int counter = 0;
  for (int n = 0; n < levels; ++n)
    for (size_t i = 0; i < sp.classes[n].size(); ++i) {
      base[n].push_back(counter);
      b.add_vertex(std::to_string(counter));
      counter++;
    }
  std::vector<std::pair<int, int>> tree_edges;
  for (const auto& e : g.edges()) {
    VertexId u = e.u, v = e.v;
    if (sp.level_of[u] == sp.level_of[v]) {
      if (sp.class_of[u] != sp.class_of[v])
        throw internal_error("same-level edge across classes");
      continue;
    }
    int cu = base[sp.level_of[u]][sp.class_of[u].second];
    int cv = base[sp.level_of[v]][sp.class_of[v].second];
    if (cu > cv) std::swap(cu, cv);
    tree_edges.push_back({cu, cv});
  }
  std::sort(tree_edges.begin(), tree_edges.end());
  tree_edges.erase(std::unique(tree_edges.begin(), tree_edges.end()), tree_edges.end());
  for (auto [cu, cv] : tree_edges)
    b.add_edge(std::to_string(cu), std::to_string(cv));
  success.tree = b.build();
  // Builder sorts numerically, so tree vertex ids equal the counters.
  success.vertex_class.assign(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    success.vertex_class[v] = base[sp.level_of[v]][sp.class_of[v].second];
  success.tree_class_id.assign(counter, {-1, -1});
  for (int n = 0; n < levels; ++n)
    for (size_t i = 0; i < sp.classes[n].size(); ++i)
      success.tree_class_id[base[n][i]] = {n, static_cast<int>(i)};
  // Sanity: the class graph of a violation-free partition is a tree.
  if (success.tree.vertex_count() > 0 &&
      success.tree.edge_count() != success.tree.vertex_count() - 1)
    throw internal_error("class graph is not a tree");
  out.tree = std::move(success);
  return out;
}

FatModel extract_k3_witness(const MetricGraph& g, const SpherePartition& sp,
                            const TreeResult& violation, const Rat& k) {
  VertexId root = sp.root;
  FatModel model;
  model.pattern = PatternGraph::complete(3);
  model.level = k;
  if (violation.claim1) {
    const Claim1Violation& v = *violation.claim1;
    long n = v.level;
    VertexId x1 = v.x1, x2 = v.x2;
    Route p = class_walk(g, sp.classes[n][v.index], x1, x2, sp.scale).simplified(g);
    auto pi1 = geodesic(g, Region::of_vertex(x1), Region::of_vertex(root));
    auto pi2 = geodesic(g, Region::of_vertex(x2), Region::of_vertex(root));
    if (!pi1 || !pi2) throw internal_error("missing root geodesic");
    Rat radius = 7 * k / 2;
    auto branch = [&](VertexId x, const Route& pi) {
      Region reach = pi.as_region(g);
      reach.unite(g, p.as_region(g));
      Region clipped = reach.intersection(g, ball(g, Locus::vertex(x), radius));
      return region_component_of(g, clipped, Locus::vertex(x));
    };
    Region b1 = branch(x1, *pi1);
    Region b2 = branch(x2, *pi2);
    Region bo = ball(g, Locus::vertex(root), Rat(n) - 9 * k / 2);
    Route leg1 = pi1->sub_route(g, radius, radius + k);
    Route leg2 = pi2->sub_route(g, radius, radius + k);
    // Middle path: subsegment of p between the two branch components.
    RouteRegionProfile to_b2(g, p, b2);
    auto j = to_b2.first_within(Rat(0));
    if (!j) throw internal_error("class path misses the second branch set");
    RouteRegionProfile to_b1(g, p, b1);
    auto i = to_b1.last_within_before(Rat(0), *j);
    if (!i) throw internal_error("class path misses the first branch set");
    Route mid = p.sub_route(g, *i, *j);
    model.branch_sets = {b1, b2, bo};
    model.branch_paths = {mid, leg1, leg2};
  } else if (violation.claim2) {
    const Claim2Violation& v = *violation.claim2;
    VertexId a = v.a, z = v.z;
    auto pa = geodesic(g, Region::of_vertex(a), Region::of_vertex(root));
    auto pz = geodesic(g, Region::of_vertex(z), Region::of_vertex(root));
    if (!pa || !pz) throw internal_error("missing root geodesic");
    Rat two_k = 2 * k;
    Region ba = pa->sub_route(g, Rat(0), two_k).as_region(g);
    Region bz = pz->sub_route(g, Rat(0), two_k).as_region(g);
    // a-z path inside the union of the two root geodesics.
    RouteRegionProfile meet(g, *pa, pz->as_region(g));
    auto mparam = meet.first_within(Rat(0));
    if (!mparam) throw internal_error("root geodesics never meet");
    Locus meet_pt = pa->point_at(g, *mparam);
    auto zparam = pz->param_of(g, meet_pt);
    if (!zparam) throw internal_error("meeting point not on the second geodesic");
    Route zpath = pa->sub_route(g, Rat(0), *mparam);
    zpath.append(g, pz->sub_route(g, Rat(0), *zparam).reversed(g));
    RouteRegionProfile z_in_bz(g, zpath, bz);
    auto jj = z_in_bz.first_within(Rat(0));
    if (!jj) throw internal_error("a-z path misses B_z");
    RouteRegionProfile z_in_ba(g, zpath, ba);
    auto ii = z_in_ba.last_within_before(Rat(0), *jj);
    if (!ii) throw internal_error("a-z path misses B_a");
    Route p_az = zpath.sub_route(g, *ii, *jj);
    // Middle branch set on the witness path A.
    RouteRegionProfile a_to_ba(g, v.a_path, ba);
    auto pp = a_to_ba.last_within(k);
    if (!pp) throw internal_error("witness path never near B_a");
    RouteRegionProfile a_to_bz(g, v.a_path, bz);
    auto qq = a_to_bz.first_within_from(k, *pp);
    if (!qq) throw internal_error("witness path never near B_z");
    Route bw_route = v.a_path.sub_route(g, *pp, *qq);
    Region bw = bw_route.as_region(g);
    auto leg = [&](const Locus& from, const Region& to) {
      auto r = geodesic(g, Region::of_locus(g, from), to);
      if (!r) throw internal_error("missing witness leg");
      return *r;
    };
    Route p_aw = leg(bw_route.first(), ba);
    Route p_wz = leg(bw_route.last(), bz);
    model.branch_sets = {ba, bz, bw};
    model.branch_paths = {p_az, p_aw, p_wz};
  } else {
    throw input_error("no violation to extract a witness from");
  }
  FatVerdict check = verify_fat_model(g, model, k);
  if (!check.ok)
    throw internal_error("triangle witness failed verification: " + check.failure);
  return model;
}

QuasiTreeOutcome quasi_tree_pipeline(const MetricGraph& g, const Rat& k, VertexId root) {
  QuasiTreeOutcome out;
  SpherePartition sp = sphere_partition(g, root, k);
  TreeResult tr = build_tree(g, sp, k);
  if (tr.ok()) {
    out.certificate = verify_quasi_isometry(g, tr.tree->tree, tr.tree->vertex_class,
                                            Rat(1), 10 * k);
    if (!out.certificate.verdict)
      throw internal_error("tree certificate failed exhaustive verification");
    out.success = std::move(tr.tree);
    return out;
  }
  out.witness = extract_k3_witness(g, sp, tr, k);
  return out;
}

BottleneckResult bottleneck_check(const MetricGraph& g, const Rat& delta,
                                  long pair_budget) {
  if (delta <= 0) throw input_error("delta must be positive");
  BottleneckResult out;
  int n = g.vertex_count();
  long total = static_cast<long>(n) * (n - 1) / 2;
  long stride = total > pair_budget ? (total + pair_budget - 1) / pair_budget : 1;
  out.exhaustive = stride == 1;

  // Clearance-based avoidance test: the largest distance from m some x-y
  // path keeps is the bottleneck value of the clearance-weighted graph.
  auto avoidance = [&](VertexId x, VertexId y, const Locus& m) -> Dist {
    std::vector<Dist> dm(n);
    for (VertexId v = 0; v < n; ++v) dm[v] = locus_distance(g, Locus::vertex(v), m);
    // Merge vertices in descending clearance order until x and y join.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dm[b] < dm[a]; });
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::vector<bool> active(n, false);
    size_t next = 0;
    Dist current = Dist::infinity();
    while (find(x) != find(y) && next < order.size()) {
      VertexId v = order[next++];
      current = dm[v];
      active[v] = true;
      for (const auto& [w, e] : g.neighbors(v)) {
        if (!active[w]) continue;
        // An edge is usable at clearance c when both ends are, except the
        // edge carrying m itself, whose interior reaches m.
        if (!m.is_vertex() && m.e == e) continue;
        int a = find(v), b = find(w);
        if (a != b) parent[a] = b;
      }
    }
    // Exhausted without joining: the only connections run over m itself.
    if (find(x) != find(y)) return Dist::zero();
    return current;
  };

  long seen = 0;
  for (VertexId x = 0; x < n && out.holds; ++x) {
    const auto& dx = g.dist_from(x);
    for (VertexId y = x + 1; y < n && out.holds; ++y) {
      if ((seen++) % stride != 0) continue;
      if (dx[y].is_inf()) continue;
      Rat half = dx[y].value() / 2;
      if (half < delta) continue;  // the endpoints already sit within delta
      const auto& dy = g.dist_from(y);
      // All exact midpoints: vertices at half distance from both ends, and
      // edge interior points reached at half distance via either endpoint.
      std::vector<Locus> mids;
      auto consider = [&](const Locus& cand) {
        if (locus_distance(g, Locus::vertex(x), cand) == half &&
            locus_distance(g, Locus::vertex(y), cand) == half &&
            std::find(mids.begin(), mids.end(), cand) == mids.end())
          mids.push_back(cand);
      };
      for (VertexId v = 0; v < n; ++v)
        if (dx[v] == half && dy[v] == half) mids.push_back(Locus::vertex(v));
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& rec = g.edge(e);
        if (!dx[rec.u].is_inf()) {
          Rat t = half - dx[rec.u].value();
          if (t > 0 && t < rec.len) consider(make_locus(g, e, t));
        }
        if (!dx[rec.v].is_inf()) {
          Rat t = Rat(rec.len) - (half - dx[rec.v].value());
          if (t > 0 && t < rec.len) consider(make_locus(g, e, t));
        }
      }
      if (mids.empty()) throw internal_error("connected pair without a midpoint");
      bool some_mid_works = false;
      for (const Locus& m : mids) {
        Dist rho = avoidance(x, y, m);
        if (rho < delta) {
          some_mid_works = true;
          break;
        }
      }
      if (!some_mid_works) {
        out.holds = false;
        out.x = x;
        out.y = y;
      }
    }
  }
  return out;
}

}  // namespace coarse
