#include <algorithm>
#include <functional>
#include <map>

#include "coarse/menger.hpp"

namespace coarse {

namespace {

Rat clip(const Rat& v, const Rat& lo, const Rat& hi) {
  return std::max(lo, std::min(hi, v));
}

bool surrounds(const BaseGeodesic& base, const MetaBridge& m, const Rat& t,
               const Rat& radius) {
  Rat lo = clip(Rat(t - radius), Rat(0), base.len);
  Rat hi = clip(Rat(t + radius), Rat(0), base.len);
  return m.b0 <= lo && m.b1 >= hi;
}

// Path under construction: ordered oriented pieces.
struct Piece {
  bool is_meta;
  int meta = -1;
  Rat from, to;  // gamma params for gamma pieces (either direction)
};

Route realize(const MetricGraph& g, const BaseGeodesic& base,
              const std::vector<MetaBridge>& metas, const std::vector<Piece>& pieces) {
  Route out = Route::trivial(pieces.front().is_meta
                                 ? metas[pieces.front().meta].route.first()
                                 : base.gamma.point_at(g, pieces.front().from));
  out.set_walk_flag(true);
  for (const auto& p : pieces) {
    if (p.is_meta) {
      out.append(g, metas[p.meta].route);
    } else if (p.from < p.to) {
      out.append(g, base.gamma.sub_route(g, p.from, p.to));
    } else if (p.to < p.from) {
      out.append(g, base.gamma.sub_route(g, p.to, p.from).reversed(g));
    }
  }
  return out.simplified(g);
}

}  // namespace

std::pair<Route, Route> assemble_paths_primary(const MetricGraph& g,
                                               const BaseGeodesic& base,
                                               const std::vector<MetaBridge>& metas,
                                               const Rat& k) {
  if (metas.empty()) throw contract_error("no meta-bridges to assemble");
  Rat eighth = k / 8;
  // The sequence is ordered by interval start and starts at gamma(0).
  if (!(metas.front().b0 == 0))
    throw internal_error("first meta-bridge does not reach gamma(0)");
  std::vector<Piece> beta[2];
  std::vector<bool> used(metas.size(), false);
  beta[0].push_back({true, 0, Rat(0), Rat(0)});
  used[0] = true;
  Rat t = metas[0].z_anchored ? base.len : metas[0].b1;
  beta[1].push_back({false, -1, Rat(0), t});
  bool done = metas[0].z_anchored || t == base.len;

  int guard = 0;
  while (!done) {
    if (++guard > 4 * static_cast<int>(metas.size()) + 8)
      throw internal_error("path assembly failed to terminate");
    // Meta surrounding the frontier with the largest reach.
    int pick = -1;
    for (size_t i = 0; i < metas.size(); ++i) {
      if (used[i] || !surrounds(base, metas[i], t, eighth)) continue;
      if (pick < 0 || metas[i].b1 > metas[pick].b1 ||
          (metas[i].b1 == metas[pick].b1 && metas[i].z_anchored &&
           !metas[pick].z_anchored))
        pick = static_cast<int>(i);
    }
    if (pick < 0) throw internal_error("no meta-bridge surrounds the frontier");
    used[pick] = true;
    const MetaBridge& C = metas[pick];
    // Closest covered gamma point to C's start.
    struct Hit {
      int side;
      size_t piece;
      Rat param;
      Rat gap;
      bool meta_entry;  // split point is a meta piece's entry endpoint
    };
    std::optional<Hit> s;
    auto consider = [&](int side, size_t pi, const Rat& cand, bool meta_entry) {
      Rat gap = abs(cand - C.b0);
      bool better = false;
      if (!s)
        better = true;
      else if (gap != s->gap)
        better = gap < s->gap;
      else if (cand != s->param)
        better = cand < s->param;
      else if (side != s->side)
        better = side < s->side;
      else
        better = pi > s->piece;  // cut as late as possible
      if (better) s = Hit{side, pi, cand, gap, meta_entry};
    };
    for (int side = 0; side < 2; ++side)
      for (size_t pi = 0; pi < beta[side].size(); ++pi) {
        const Piece& p = beta[side][pi];
        if (p.is_meta) {
          // Meta endpoints on gamma (anchored ends lie inside the terminals).
          if (!metas[p.meta].a_anchored) consider(side, pi, metas[p.meta].b0, true);
          if (!metas[p.meta].z_anchored) consider(side, pi, metas[p.meta].b1, false);
        } else {
          Rat lo = std::min(p.from, p.to), hi = std::max(p.from, p.to);
          consider(side, pi, clip(C.b0, lo, hi), false);
        }
      }
    if (!s) throw internal_error("no covered gamma point near the new bridge");
    int side = s->side;
    // Truncate that path at the split point.
    std::vector<Piece> kept;
    for (size_t pi = 0; pi < beta[side].size(); ++pi) {
      const Piece& p = beta[side][pi];
      if (pi < s->piece) {
        kept.push_back(p);
        continue;
      }
      if (pi > s->piece) break;
      if (p.is_meta) {
        if (!s->meta_entry) kept.push_back(p);  // cut before an entry split
      } else if (!(p.from == s->param)) {
        kept.push_back({false, -1, p.from, s->param});
      }
    }
    beta[side] = std::move(kept);
    if (!(s->param == C.b0)) beta[side].push_back({false, -1, s->param, C.b0});
    beta[side].push_back({true, pick, Rat(0), Rat(0)});
    // Extend the other path along gamma to the new frontier.
    Rat reach = C.z_anchored ? base.len : C.b1;
    if (!(t == reach)) beta[1 - side].push_back({false, -1, t, reach});
    t = reach;
    done = C.z_anchored || t == base.len;
  }
  return {realize(g, base, metas, beta[0]), realize(g, base, metas, beta[1])};
}

std::pair<Route, Route> assemble_paths_aux(const MetricGraph& g,
                                           const BaseGeodesic& base,
                                           const std::vector<MetaBridge>& metas,
                                           const Rat& k) {
  Rat contract_below = k / 20;
  // Node per distinct interior anchor parameter; gamma(0) belongs to the A
  // node and gamma(len) to the Z node.
  std::vector<Rat> params;
  auto add_param = [&](const Rat& p) {
    if (p == 0 || p == base.len) return;
    if (std::find(params.begin(), params.end(), p) == params.end())
      params.push_back(p);
  };
  for (const auto& m : metas) {
    add_param(m.b0);
    add_param(m.b1);
  }
  std::sort(params.begin(), params.end());
  int n = static_cast<int>(params.size()) + 2;  // A = 0, Z = n-1
  auto node_of = [&](const Rat& p) {
    if (p == 0) return 0;
    if (p == base.len) return n - 1;
    int idx = static_cast<int>(
        std::lower_bound(params.begin(), params.end(), p) - params.begin());
    return idx + 1;
  };
  struct AuxEdge {
    int u, v;
    bool is_meta;
    int meta = -1;
    Rat from, to;  // gamma interval for gamma-edges
  };
  std::vector<AuxEdge> edges;
  for (size_t i = 0; i < metas.size(); ++i) {
    int u = metas[i].a_anchored ? 0 : node_of(metas[i].b0);
    int v = metas[i].z_anchored ? n - 1 : node_of(metas[i].b1);
    edges.push_back({u, v, true, static_cast<int>(i), Rat(0), Rat(0)});
  }
  std::vector<Rat> cut_points = params;
  cut_points.insert(cut_points.begin(), Rat(0));
  cut_points.push_back(base.len);
  // Contraction of short gamma-edges via node aliasing.
  std::vector<int> alias(n);
  for (int i = 0; i < n; ++i) alias[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (alias[x] != x) x = alias[x] = alias[alias[x]];
    return x;
  };
  for (size_t i = 0; i + 1 < cut_points.size(); ++i) {
    Rat len = cut_points[i + 1] - cut_points[i];
    int u = node_of(cut_points[i]), v = node_of(cut_points[i + 1]);
    if (len < contract_below) {
      // Never merge the two terminals into one node.
      if ((find(u) == find(0) && find(v) == find(n - 1)) ||
          (find(v) == find(0) && find(u) == find(n - 1))) {
        edges.push_back({u, v, false, -1, cut_points[i], cut_points[i + 1]});
      } else if (find(u) != find(v)) {
        alias[find(u)] = find(v);
      }
    } else {
      edges.push_back({u, v, false, -1, cut_points[i], cut_points[i + 1]});
    }
  }
  // Two vertex-disjoint A-Z paths by unit-capacity flow with split nodes.
  // Arc layout: per aux edge two directed arcs; per node an in->out arc.
  struct Arc {
    int to;
    int cap;
    int flow = 0;
    int rev;
    int edge_id;  // aux edge behind a traversal arc, -1 for node arcs
    bool forward;
    bool primal;  // created with positive capacity
  };
  int base_nodes = 2 * n;
  std::vector<std::vector<Arc>> adj(base_nodes);
  auto add_arc = [&](int from, int to, int cap, int edge_id, bool forward) {
    adj[from].push_back(
        {to, cap, 0, static_cast<int>(adj[to].size()), edge_id, forward, true});
    adj[to].push_back(
        {from, 0, 0, static_cast<int>(adj[from].size()) - 1, edge_id, forward, false});
  };
  auto in_node = [&](int v) { return 2 * v; };
  auto out_node = [&](int v) { return 2 * v + 1; };
  for (int v = 0; v < n; ++v) {
    if (find(v) != v) continue;
    add_arc(in_node(v), out_node(v), (v == find(0) || v == find(n - 1)) ? 2 : 1, -1,
            true);
  }
  for (size_t e = 0; e < edges.size(); ++e) {
    int u = find(edges[e].u), v = find(edges[e].v);
    if (u == v) continue;
    add_arc(out_node(u), in_node(v), 1, static_cast<int>(e), true);
    add_arc(out_node(v), in_node(u), 1, static_cast<int>(e), false);
  }
  int src = in_node(find(0)), dst = out_node(find(n - 1));
  int flow = 0;
  while (flow < 2) {
    std::vector<std::pair<int, int>> prev(base_nodes, {-1, -1});
    std::vector<int> queue{src};
    prev[src] = {src, -1};
    for (size_t qi = 0; qi < queue.size() && prev[dst].first < 0; ++qi) {
      int v = queue[qi];
      for (size_t ai = 0; ai < adj[v].size(); ++ai) {
        const Arc& a = adj[v][ai];
        if (a.cap <= 0 || prev[a.to].first >= 0) continue;
        prev[a.to] = {v, static_cast<int>(ai)};
        queue.push_back(a.to);
      }
    }
    if (prev[dst].first < 0) break;
    for (int v = dst; v != src;) {
      auto [pv, ai] = prev[v];
      Arc& fwd = adj[pv][ai];
      Arc& bwd = adj[v][fwd.rev];
      fwd.cap--;
      fwd.flow++;
      bwd.cap++;
      bwd.flow--;
      v = pv;
    }
    flow++;
  }
  if (flow < 2)
    throw internal_error("auxiliary graph admits fewer than two disjoint paths");
  // Decompose: walk saturated arcs from the source.
  std::vector<std::vector<std::pair<int, bool>>> aux_paths;  // (edge id, forward)
  for (int rep = 0; rep < 2; ++rep) {
    std::vector<std::pair<int, bool>> path;
    int v = src;
    while (v != dst) {
      bool advanced = false;
      for (auto& a : adj[v]) {
        if (!a.primal || a.flow <= 0) continue;
        a.flow--;  // consume the unit so the second walk differs
        if (a.edge_id >= 0) path.push_back({a.edge_id, a.forward});
        v = a.to;
        advanced = true;
        break;
      }
      if (!advanced) throw internal_error("flow decomposition stalled");
    }
    aux_paths.push_back(std::move(path));
  }
  // Map aux paths back to routes; splice short gamma intervals across
  // contracted nodes.
  auto realize_path = [&](const std::vector<std::pair<int, bool>>& path) {
    std::vector<std::pair<Rat, Rat>> spans;  // oriented gamma spans + metas
    Route out = Route::trivial(Locus::vertex(0));
    bool started = false;
    Rat at = 0;  // current gamma param when on gamma
    std::optional<Rat> pending;  // param reached by the previous edge
    auto start_with = [&](const Locus& l) {
      out = Route::trivial(l);
      started = true;
    };
    for (const auto& [eid, fwd] : path) {
      const AuxEdge& e = edges[eid];
      if (e.is_meta) {
        const MetaBridge& m = metas[e.meta];
        Route r = fwd ? m.route : m.route.reversed(g);
        // Entry point on gamma (unless terminal-anchored).
        bool enters_on_gamma = fwd ? !m.a_anchored : !m.z_anchored;
        Rat enter = fwd ? m.b0 : m.b1;
        Rat leave = fwd ? m.b1 : m.b0;
        if (!started) {
          if (enters_on_gamma && !(enter == 0)) {
            start_with(base.gamma.point_at(g, Rat(0)));
            out.append(g, base.gamma.sub_route(g, Rat(0), enter));
          } else {
            start_with(r.first());
          }
        } else if (enters_on_gamma && pending && !(*pending == enter)) {
          Rat lo = std::min(*pending, enter), hi = std::max(*pending, enter);
          Route gap = base.gamma.sub_route(g, lo, hi);
          if (*pending > enter) gap = gap.reversed(g);
          out.append(g, gap);
        }
        out.append(g, r);
        bool leaves_on_gamma = fwd ? !m.z_anchored : !m.a_anchored;
        pending = leaves_on_gamma ? std::optional<Rat>(leave) : std::nullopt;
      } else {
        Rat from = fwd ? e.from : e.to;
        Rat to = fwd ? e.to : e.from;
        if (!started) {
          start_with(base.gamma.point_at(g, from));
        } else if (pending && !(*pending == from)) {
          Rat lo = std::min(*pending, from), hi = std::max(*pending, from);
          Route gap = base.gamma.sub_route(g, lo, hi);
          if (*pending > from) gap = gap.reversed(g);
          out.append(g, gap);
        }
        Route piece = base.gamma.sub_route(g, std::min(from, to), std::max(from, to));
        if (from > to) piece = piece.reversed(g);
        out.append(g, piece);
        pending = to;
      }
    }
    (void)spans;
    (void)at;
    out.set_walk_flag(true);
    return out.simplified(g);
  };
  return {realize_path(aux_paths[0]), realize_path(aux_paths[1])};
}

namespace {

MengerOutcome separator_outcome(MengerMode mode, Separator s) {
  MengerOutcome out;
  out.mode = mode;
  out.separator = std::move(s);
  return out;
}

}  // namespace

MengerOutcome menger2(const MetricGraph& g, const Region& a, const Region& z,
                      const Rat& k, MengerMode mode) {
  if (k <= 0) throw input_error("scale must be positive");
  if (a.empty() || z.empty()) throw input_error("terminal regions must be nonempty");
  Rat required = mode == MengerMode::Primary ? Rat(k / 272) : Rat(k / 680);
  Rat join_threshold = mode == MengerMode::Primary ? Rat(k / 8) : Rat(k / 20);

  if (a.intersects(g, z)) {
    Locus shared = a.intersection(g, z).any_point(g);
    Region s = Region::of_locus(g, shared);
    if (separates(g, s, a, z)) {
      Separator sep;
      sep.center = shared;
      sep.radius = 0;
      sep.ball = s;
      sep.diameter = Dist::zero();
      sep.verified = true;
      return separator_outcome(mode, std::move(sep));
    }
    // Otherwise continue: the zero-length base geodesic still drives the
    // dichotomy.
  }
  if (region_distance(g, a, z).is_inf()) {
    Separator sep;
    sep.center = a.any_point(g);
    sep.radius = 0;
    sep.ball = Region();  // empty set separates distinct components
    sep.diameter = Dist::zero();
    sep.verified = separates(g, sep.ball, a, z);
    if (!sep.verified) throw internal_error("component separator failed");
    return separator_outcome(mode, std::move(sep));
  }

  BaseGeodesic base = base_geodesic(g, a, z);
  auto cover = build_cover(g, base, k);
  if (std::holds_alternative<Separator>(cover))
    return separator_outcome(mode, std::get<Separator>(std::move(cover)));
  CrossingSequence seq =
      perfect_subsequence(g, base, std::get<CrossingSequence>(cover), k);
  MetaResult metas = build_meta_bridges(g, base, seq, k, join_threshold, required);
  auto [alpha1, alpha2] =
      mode == MengerMode::Primary
          ? assemble_paths_primary(g, base, metas.metas, k)
          : assemble_paths_aux(g, base, metas.metas, k);
  PathPair pair;
  pair.alpha1 = std::move(alpha1);
  pair.alpha2 = std::move(alpha2);
  pair.required = required;
  pair.separation =
      region_distance(g, pair.alpha1.as_region(g), pair.alpha2.as_region(g));
  bool endpoints_ok =
      a.contains(g, pair.alpha1.first()) && z.contains(g, pair.alpha1.last()) &&
      a.contains(g, pair.alpha2.first()) && z.contains(g, pair.alpha2.last());
  if (!endpoints_ok) throw internal_error("assembled paths miss the terminals");
  if (!(pair.separation >= required))
    throw internal_error("assembled paths are closer than the guarantee: " +
                         pair.separation.str() + " < " + rat_str(required));
  pair.verified = true;
  MengerOutcome out;
  out.mode = mode;
  out.paths = std::move(pair);
  out.ledger = std::move(metas.ledger);
  return out;
}

}  // namespace coarse
