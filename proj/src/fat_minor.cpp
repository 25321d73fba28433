#include "coarse/fat_minor.hpp"

#include <algorithm>

namespace coarse {

bool PatternGraph::adjacent(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::find(edges.begin(), edges.end(), std::make_pair(u, v)) != edges.end();
}

PatternGraph PatternGraph::complete(int k) {
  PatternGraph p;
  for (int i = 0; i < k; ++i) p.names.push_back("v" + std::to_string(i));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) p.edges.push_back({i, j});
  return p;
}

PatternGraph PatternGraph::star(int leaves) {
  PatternGraph p;
  p.names.push_back("c");
  for (int i = 1; i <= leaves; ++i) {
    p.names.push_back("w" + std::to_string(i));
    p.edges.push_back({0, i});
  }
  return p;
}

PatternGraph PatternGraph::path(int edges) {
  PatternGraph p;
  for (int i = 0; i <= edges; ++i) p.names.push_back("v" + std::to_string(i));
  for (int i = 0; i < edges; ++i) p.edges.push_back({i, i + 1});
  return p;
}

PatternGraph PatternGraph::wedge_of_paths(int k) {
  PatternGraph p;
  p.names.push_back("c");
  for (int leg = 1; leg <= k; ++leg) {
    int prev = 0;
    for (int j = 1; j <= leg; ++j) {
      int id = static_cast<int>(p.names.size());
      p.names.push_back("w" + std::to_string(leg) + "." + std::to_string(j));
      p.edges.push_back({std::min(prev, id), std::max(prev, id)});
      prev = id;
    }
  }
  return p;
}

PatternGraph PatternGraph::subdivide_edge(int e) const {
  PatternGraph p = *this;
  auto [u, v] = p.edges[e];
  int mid = static_cast<int>(p.names.size());
  p.names.push_back(names[u] + "|" + names[v]);
  p.edges.erase(p.edges.begin() + e);
  p.edges.push_back({std::min(u, mid), std::max(u, mid)});
  p.edges.push_back({std::min(v, mid), std::max(v, mid)});
  return p;
}

namespace {

std::string set_label(const FatModel& m, int v) { return "B(" + m.pattern.names[v] + ")"; }
std::string path_label(const FatModel& m, int e) {
  return "P(" + m.pattern.names[m.pattern.edges[e].first] + "-" +
         m.pattern.names[m.pattern.edges[e].second] + ")";
}

}  // namespace

FatVerdict verify_fat_model(const MetricGraph& g, const FatModel& model, const Rat& k) {
  FatVerdict out;
  const PatternGraph& pat = model.pattern;
  int n = pat.n(), m = pat.m();
  if (static_cast<int>(model.branch_sets.size()) != n ||
      static_cast<int>(model.branch_paths.size()) != m) {
    out.failure = "model shape does not match the pattern";
    return out;
  }
  for (const auto& [u, v] : pat.edges)
    if (u < 0 || v >= n || u >= v) {
      out.failure = "malformed pattern edge";
      return out;
    }
  // Branch sets: nonempty, connected, pairwise disjoint.
  for (int i = 0; i < n; ++i) {
    if (model.branch_sets[i].empty()) {
      out.failure = set_label(model, i) + " is empty";
      return out;
    }
    if (!region_connected(g, model.branch_sets[i])) {
      out.failure = set_label(model, i) + " is not connected";
      return out;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (model.branch_sets[i].intersects(g, model.branch_sets[j])) {
        out.failure = set_label(model, i) + " meets " + set_label(model, j);
        return out;
      }
  // Branch paths: pairwise disjoint arcs.
  std::vector<Region> path_regions;
  path_regions.reserve(m);
  for (int e = 0; e < m; ++e) path_regions.push_back(model.branch_paths[e].as_region(g));
  for (int e = 0; e < m; ++e)
    for (int f = e + 1; f < m; ++f)
      if (path_regions[e].intersects(g, path_regions[f])) {
        out.failure = path_label(model, e) + " meets " + path_label(model, f);
        return out;
      }
  // Incidence: each path meets the union of branch sets exactly at its two
  // endpoints, one in each endpoint set.
  for (int e = 0; e < m; ++e) {
    auto [u, v] = pat.edges[e];
    const Route& p = model.branch_paths[e];
    int at_first = -1, at_last = -1;
    if (model.branch_sets[u].contains(g, p.first())) at_first = u;
    if (model.branch_sets[v].contains(g, p.first())) at_first = v;
    if (model.branch_sets[u].contains(g, p.last())) at_last = u;
    if (model.branch_sets[v].contains(g, p.last())) at_last = v;
    if (at_first < 0 || at_last < 0 || at_first == at_last) {
      out.failure = path_label(model, e) + " endpoints not in its two branch sets";
      return out;
    }
    for (int w = 0; w < n; ++w) {
      Region hit = path_regions[e].intersection(g, model.branch_sets[w]);
      if (w != u && w != v) {
        if (!hit.empty()) {
          out.failure = path_label(model, e) + " touches " + set_label(model, w);
          return out;
        }
        continue;
      }
      const Locus& expect = (w == at_first) ? p.first() : p.last();
      if (!hit.is_single_point(g, expect)) {
        out.failure = path_label(model, e) + " meets " + set_label(model, w) +
                      " beyond its endpoint";
        return out;
      }
    }
  }
  out.structural_ok = true;
  // Fatness: minimum over non-exempt pairs. Objects 0..n-1 are sets,
  // n..n+m-1 are paths; (set w, path e) is exempt when w is an end of e.
  auto object_region = [&](int idx) -> const Region& {
    return idx < n ? model.branch_sets[idx] : path_regions[idx - n];
  };
  auto object_label = [&](int idx) {
    return idx < n ? set_label(model, idx) : path_label(model, idx - n);
  };
  auto exempt = [&](int a, int b) {
    if (a == b) return true;
    if (a > b) std::swap(a, b);
    if (b < n || a >= n) return false;  // set-set and path-path never exempt
    auto [u, v] = pat.edges[b - n];
    return a == u || a == v;
  };
  Dist fat = Dist::infinity();
  std::string tight;
  for (int a = 0; a < n + m; ++a)
    for (int b = a + 1; b < n + m; ++b) {
      if (exempt(a, b)) continue;
      Dist d = region_distance(g, object_region(a), object_region(b));
      if (d < fat) {
        fat = d;
        tight = object_label(a) + "," + object_label(b);
      }
    }
  out.fatness = fat;
  out.tight_pair = tight;
  if (fat < k) {
    out.failure = "pair " + tight + " at distance " + fat.str() + " < " + rat_str(k);
    return out;
  }
  out.ok = true;
  return out;
}

FatModel subdivision_transfer(const MetricGraph& g, const FatModel& model,
                              int pattern_edge, const Rat& k) {
  if (pattern_edge < 0 || pattern_edge >= model.pattern.m())
    throw input_error("pattern edge out of range");
  if (k < 0) throw input_error("negative fatness level");
  Rat three_k = 3 * k;
  FatVerdict in = verify_fat_model(g, model, three_k);
  if (!in.ok)
    throw contract_error("input model does not verify at level 3k: " + in.failure);

  auto [x, y] = model.pattern.edges[pattern_edge];
  Route p_e = model.branch_paths[pattern_edge];
  // Orient the path from V_x to V_y.
  if (!model.branch_sets[x].contains(g, p_e.first())) p_e = p_e.reversed(g);

  FatModel out;
  out.pattern = model.pattern.subdivide_edge(pattern_edge);
  out.level = k;
  int mid = out.pattern.n() - 1;
  out.branch_sets = model.branch_sets;
  out.branch_sets.push_back(Region());
  // Edges of the subdivided pattern: all but `pattern_edge`, then (x,mid),
  // (y,mid) appended by subdivide_edge in that order.
  out.branch_paths.clear();
  for (int e = 0; e < model.pattern.m(); ++e)
    if (e != pattern_edge) out.branch_paths.push_back(model.branch_paths[e]);
  out.branch_paths.resize(out.pattern.m(), Route::trivial(p_e.first()));

  Rat p_param, q_param;
  if (k == 0) {
    // Degenerate level: the middle third becomes the new branch set.
    p_param = p_e.length() / 3;
    q_param = 2 * p_e.length() / 3;
  } else {
    RouteRegionProfile to_x(g, p_e, model.branch_sets[x]);
    RouteRegionProfile to_y(g, p_e, model.branch_sets[y]);
    auto p = to_x.last_within(k);
    if (!p) throw internal_error("subdivision transfer: no point within k of V_x");
    auto q = to_y.first_within_from(k, *p);
    if (!q) throw internal_error("subdivision transfer: no point within k of V_y");
    p_param = *p;
    q_param = *q;
  }
  Route middle = p_e.sub_route(g, p_param, q_param);
  out.branch_sets[mid] = middle.as_region(g);
  // Legs: shortest connectors from the middle's ends back to the old sets.
  auto leg = [&](const Locus& from, const Region& to) {
    auto r = geodesic(g, Region::of_locus(g, from), to);
    if (!r) throw internal_error("subdivision transfer: leg has no route");
    return *r;
  };
  int e_x_mid = -1, e_y_mid = -1;
  for (int e = 0; e < out.pattern.m(); ++e) {
    auto [a, b] = out.pattern.edges[e];
    if (b == mid || a == mid) {
      int other = (a == mid) ? b : a;
      if (other == x) e_x_mid = e;
      if (other == y) e_y_mid = e;
    }
  }
  if (k == 0) {
    out.branch_paths[e_x_mid] = p_e.sub_route(g, Rat(0), p_param);
    out.branch_paths[e_y_mid] = p_e.sub_route(g, q_param, p_e.length()).reversed(g);
  } else {
    out.branch_paths[e_x_mid] = leg(middle.first(), model.branch_sets[x]);
    out.branch_paths[e_y_mid] = leg(middle.last(), model.branch_sets[y]);
  }
  FatVerdict check = verify_fat_model(g, out, k);
  if (!check.ok)
    throw internal_error("subdivision transfer output failed verification: " +
                         check.failure);
  return out;
}

}  // namespace coarse
