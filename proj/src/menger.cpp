#include "coarse/menger.hpp"

#include <algorithm>
#include <map>

namespace coarse {

BaseGeodesic base_geodesic(const MetricGraph& g, const Region& a, const Region& z) {
  if (a.empty() || z.empty()) throw input_error("terminal regions must be nonempty");
  auto route = geodesic(g, a, z);
  if (!route) throw input_error("terminal regions lie in different components");
  BaseGeodesic base;
  base.A = a;
  base.Z = z;
  base.gamma = *route;
  base.len = base.gamma.length();
  base.gamma_region = base.gamma.as_region(g);
  return base;
}

namespace {

Rat clip(const Rat& v, const Rat& lo, const Rat& hi) {
  return std::max(lo, std::min(hi, v));
}

// Builds the separator at ball(x, k/2), verified against the terminals.
Separator make_separator(const MetricGraph& g, const BaseGeodesic& base,
                         const Locus& center, const Rat& k) {
  Separator s;
  s.center = center;
  s.radius = k / 2;
  s.ball = ball(g, center, s.radius);
  s.diameter = region_diameter(g, s.ball);
  bool sep = separates(g, s.ball, base.A, base.Z);
  if (!sep || !(s.diameter <= k))
    throw internal_error("ball separator failed verification");
  s.verified = true;
  return s;
}

struct BridgeParts {
  Route route;      // A-side anchor -> Z-side anchor
  Rat spine_from, spine_to;
  Rat b0, b1;
  bool a_anchored = false, z_anchored = false;
};

// Extracts the spine and legs from a connector route whose interior stays
// clear of the terminals. `alpha` runs from the A side to the Z side.
BridgeParts extract_bridge(const MetricGraph& g, const BaseGeodesic& base,
                           const Route& alpha, const Region& gamma_a,
                           const Region& gamma_z, const Rat& k) {
  Rat eighth = k / 8;
  RouteRegionProfile in_a(g, alpha, base.A);
  RouteRegionProfile in_z(g, alpha, base.Z);
  std::optional<RouteRegionProfile> near_ga, near_gz;
  if (!gamma_a.empty()) near_ga.emplace(g, alpha, gamma_a);
  if (!gamma_z.empty()) near_gz.emplace(g, alpha, gamma_z);

  // q: first point of alpha inside Z' = Z united with the k/8-fringe of the
  // Z-side of gamma; p: last point before q inside A'.
  std::optional<Rat> q = in_z.first_within(Rat(0));
  if (near_gz) {
    auto q2 = near_gz->first_within(eighth);
    if (q2 && (!q || *q2 < *q)) q = q2;
  }
  if (!q) throw internal_error("bridge connector never reaches the Z side");
  std::optional<Rat> p = in_a.last_within_before(Rat(0), *q);
  if (near_ga) {
    auto p2 = near_ga->last_within_before(eighth, *q);
    if (p2 && (!p || *p2 > *p)) p = p2;
  }
  if (!p) throw internal_error("bridge connector never leaves the A side");
  bool p_in_a = in_a.value_at(*p) == Rat(0);
  bool q_in_z = in_z.value_at(*q) == Rat(0);

  Route spine = alpha.sub_route(g, *p, *q);
  BridgeParts parts;
  if (p_in_a) {
    parts.a_anchored = true;
    parts.b0 = 0;
    parts.route = spine;
    parts.spine_from = 0;
  } else {
    auto leg = geodesic(g, Region::of_locus(g, spine.first()), gamma_a);
    if (!leg || !(leg->length() == eighth))
      throw internal_error("A-side leg is not exactly k/8 long");
    auto t = base.gamma.param_of(g, leg->last());
    if (!t) throw internal_error("A-side leg misses gamma");
    parts.b0 = *t;
    parts.route = leg->reversed(g);
    parts.route.append(g, spine);
    parts.spine_from = eighth;
  }
  parts.spine_to = parts.route.length();
  if (q_in_z) {
    parts.z_anchored = true;
    parts.b1 = base.len;
  } else {
    auto leg = geodesic(g, Region::of_locus(g, spine.last()), gamma_z);
    if (!leg || !(leg->length() == eighth))
      throw internal_error("Z-side leg is not exactly k/8 long");
    auto t = base.gamma.param_of(g, leg->last());
    if (!t) throw internal_error("Z-side leg misses gamma");
    parts.b1 = *t;
    parts.route.append(g, *leg);
  }
  return parts;
}

// Nearest gamma parameter to a locus, with the attaining gamma point.
std::pair<Dist, std::optional<Rat>> project_to_gamma(const MetricGraph& g,
                                                     const BaseGeodesic& base,
                                                     const Locus& at) {
  auto w = region_distance_witness(g, Region::of_locus(g, at), base.gamma_region);
  if (w.dist.is_inf()) return {w.dist, std::nullopt};
  auto t = base.gamma.param_of(g, w.b);
  return {w.dist, t};
}

Bridge finish_bridge(const MetricGraph& g, const BaseGeodesic& base, BridgeParts parts,
                     const Rat& k) {
  // Interval-extension trimming: while a spine junction projects outside the
  // interval, reroute the far end through that projection.
  Rat eighth = k / 8;
  for (int guard = 0; guard < 32; ++guard) {
    bool changed = false;
    auto junctions = parts.route.junctions(g);
    for (const auto& [loc, t] : junctions) {
      if (t < parts.spine_from || t > parts.spine_to) continue;
      auto [d, proj] = project_to_gamma(g, base, loc);
      if (!proj) continue;
      if (*proj > parts.b1) {
        auto connector = geodesic(g, Region::of_locus(g, loc), base.gamma_region);
        if (!connector) continue;
        Route next = parts.route.sub_route(g, Rat(0), t);
        next.append(g, *connector);
        parts.route = next;
        parts.b1 = *proj;
        parts.z_anchored = false;
        parts.spine_to = parts.route.length() - eighth;
        changed = true;
        break;
      }
      if (*proj < parts.b0) {
        auto connector = geodesic(g, Region::of_locus(g, loc), base.gamma_region);
        if (!connector) continue;
        Route next = connector->reversed(g);
        next.append(g, parts.route.sub_route(g, t, parts.route.length()));
        Rat shift = next.length() - (parts.route.length() - t);
        parts.spine_to = parts.spine_to - t + shift;
        parts.route = next;
        parts.b0 = *proj;
        parts.a_anchored = false;
        parts.spine_from = eighth;
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
  Bridge b;
  b.route = parts.route;
  b.b0 = parts.b0;
  b.b1 = parts.b1;
  b.a_anchored = parts.a_anchored;
  b.z_anchored = parts.z_anchored;
  b.spine_from = parts.spine_from;
  b.spine_to = parts.spine_to;
  // Exact invariants: spine at least k/8 from gamma, legs exactly k/8.
  RouteRegionProfile to_gamma(g, b.route, base.gamma_region);
  if (to_gamma.min_in_range(b.spine_from, b.spine_to) < eighth)
    throw internal_error("bridge spine dips under k/8 from gamma");
  if (!b.a_anchored && !(b.spine_from == eighth))
    throw internal_error("A-side leg length is off");
  if (!b.z_anchored && !(Rat(b.route.length() - b.spine_to) == eighth))
    throw internal_error("Z-side leg length is off");
  return b;
}

}  // namespace

std::variant<Bridge, Separator> find_bridge(const MetricGraph& g,
                                            const BaseGeodesic& base, const Rat& x,
                                            const Rat& k) {
  if (k <= 0) throw input_error("scale must be positive");
  if (x < 0 || x > base.len) throw input_error("parameter outside gamma");
  Rat three_eighth = 3 * k / 8;
  Rat half = k / 2;
  Locus center = base.gamma.point_at(g, x);
  Region ball_half = ball(g, center, half);

  Region gamma_a, gamma_z;
  if (x - three_eighth > 0)
    gamma_a = base.gamma.sub_route(g, Rat(0), Rat(x - three_eighth)).as_region(g);
  if (x + three_eighth < base.len)
    gamma_z = base.gamma.sub_route(g, Rat(x + three_eighth), base.len).as_region(g);

  // Shortest connector from the A side to the Z side outside the open ball,
  // found in a refinement where the ball boundary and all region boundaries
  // are vertices.
  std::vector<Locus> cuts = ball_half.cut_loci(g);
  cuts.push_back(center);
  for (const Region* r : std::initializer_list<const Region*>{&base.A, &base.Z, &gamma_a, &gamma_z}) {
    auto c = r->cut_loci(g);
    cuts.insert(cuts.end(), c.begin(), c.end());
  }
  Refinement ref(g, cuts);
  const MetricGraph& rg = ref.graph();
  VertexId center_v = ref.vertex_of(center);
  if (center_v < 0) throw internal_error("ball center is not a refined vertex");
  std::vector<Dist> from_center = multi_source_dist(rg, {center_v});
  auto allowed = [&](VertexId v) { return from_center[v] >= half; };
  auto side_vertices = [&](const Region& r1, const Region& r2) {
    Region u = ref.to_refined(r1);
    if (!r2.empty()) u.unite(rg, ref.to_refined(r2));
    std::vector<VertexId> out;
    for (VertexId v : u.vertices())
      if (allowed(v)) out.push_back(v);
    return out;
  };
  std::vector<VertexId> sources = side_vertices(base.A, gamma_a);
  std::vector<VertexId> targets = side_vertices(base.Z, gamma_z);
  VertexPath vp = canonical_shortest_path(rg, sources, targets, allowed);
  if (vp.path.empty()) return make_separator(g, base, center, k);
  Route alpha = ref.to_original(Route::from_vertices(rg, vp.path));
  BridgeParts parts = extract_bridge(g, base, alpha, gamma_a, gamma_z, k);
  Bridge b = finish_bridge(g, base, parts, k);
  // The construction surrounds x by 3k/8 (clipped at the ends).
  if (!(b.b0 <= clip(Rat(x - three_eighth), Rat(0), base.len) &&
        b.b1 >= clip(Rat(x + three_eighth), Rat(0), base.len)))
    throw internal_error("bridge fails to surround its sample");
  return b;
}

namespace {

bool surrounds(const BaseGeodesic& base, const Rat& b0, const Rat& b1, const Rat& t,
               const Rat& radius) {
  Rat lo = clip(Rat(t - radius), Rat(0), base.len);
  Rat hi = clip(Rat(t + radius), Rat(0), base.len);
  return b0 <= lo && b1 >= hi;
}

}  // namespace

namespace {

// A bridge running terminal to terminal with its whole route at least k/8
// from gamma; both legs are trivial, so the interval spans everything. Such
// a bridge keeps the assembled paths off gamma's own endpoints.
std::optional<Bridge> find_terminal_bridge(const MetricGraph& g,
                                           const BaseGeodesic& base, const Rat& k) {
  Rat eighth = k / 8;
  std::vector<Locus> cuts;
  for (const Region* r :
       std::initializer_list<const Region*>{&base.A, &base.Z, &base.gamma_region}) {
    auto c = r->cut_loci(g);
    cuts.insert(cuts.end(), c.begin(), c.end());
  }
  Refinement ref(g, cuts);
  const MetricGraph& rg = ref.graph();
  Region rgamma = ref.to_refined(base.gamma_region);
  std::vector<Dist> dg = multi_source_dist(rg, rgamma.vertices());
  auto allowed = [&](VertexId v) { return dg[v] >= eighth; };
  auto side = [&](const Region& r) {
    Region rr = ref.to_refined(r);
    std::vector<VertexId> out;
    for (VertexId v : rr.vertices())
      if (allowed(v)) out.push_back(v);
    return out;
  };
  VertexPath vp = canonical_shortest_path(rg, side(base.A), side(base.Z), allowed);
  if (vp.path.empty()) return std::nullopt;
  Bridge b;
  b.route = ref.to_original(Route::from_vertices(rg, vp.path));
  b.b0 = 0;
  b.b1 = base.len;
  b.a_anchored = b.z_anchored = true;
  b.spine_from = 0;
  b.spine_to = b.route.length();
  return b;
}

}  // namespace

std::variant<CrossingSequence, Separator> build_cover(const MetricGraph& g,
                                                      const BaseGeodesic& base,
                                                      const Rat& k) {
  Rat eighth = k / 8;
  Rat quarter = k / 4;
  std::vector<Rat> samples;
  for (Rat t = 0; t < base.len; t += eighth) samples.push_back(t);
  samples.push_back(base.len);
  std::vector<Bridge> found;
  if (auto tb = find_terminal_bridge(g, base, k)) found.push_back(std::move(*tb));
  for (const Rat& t : samples) {
    auto res = find_bridge(g, base, t, k);
    if (std::holds_alternative<Separator>(res)) return std::get<Separator>(res);
    Bridge b = std::get<Bridge>(std::move(res));
    bool dup = false;
    for (const auto& other : found)
      if (other.b0 == b.b0 && other.b1 == b.b1) dup = true;
    if (!dup) found.push_back(std::move(b));
  }
  // Keep maximal intervals of usable length.
  Rat min_len = std::min(Rat(3 * k / 4), base.len);
  std::vector<Bridge> maximal;
  for (size_t i = 0; i < found.size(); ++i) {
    bool contained = false;
    for (size_t j = 0; j < found.size() && !contained; ++j) {
      if (i == j) continue;
      if (found[j].b0 <= found[i].b0 && found[i].b1 <= found[j].b1 &&
          (found[j].b0 < found[i].b0 || found[i].b1 < found[j].b1))
        contained = true;
    }
    if (!contained && found[i].b1 - found[i].b0 >= min_len)
      maximal.push_back(found[i]);
  }
  // Greedy max-right interval cover of the coverage windows.
  struct Window {
    Rat lo, hi;
    size_t idx;
  };
  std::vector<Window> windows;
  for (size_t i = 0; i < maximal.size(); ++i) {
    Rat lo = maximal[i].b0 == 0 ? Rat(0) : Rat(maximal[i].b0 + quarter);
    Rat hi = maximal[i].b1 == base.len ? base.len : Rat(maximal[i].b1 - quarter);
    if (lo <= hi) windows.push_back({lo, hi, i});
  }
  std::vector<size_t> picked;
  Rat cur = 0;
  bool done_to_end = false;
  while (true) {
    const Window* best = nullptr;
    for (const auto& w : windows) {
      if (w.lo > cur) continue;
      bool better = false;
      if (!best)
        better = true;
      else if (w.hi != best->hi)
        better = w.hi > best->hi;
      else {
        // Prefer anchored bridges so the sequence starts in A and ends in Z.
        const Bridge& bw = maximal[w.idx];
        const Bridge& bb = maximal[best->idx];
        if (bw.z_anchored != bb.z_anchored)
          better = bw.z_anchored;
        else if (bw.a_anchored != bb.a_anchored)
          better = bw.a_anchored;
        else
          better = bw.b0 < bb.b0;
      }
      if (better) best = &w;
    }
    if (!best || (!picked.empty() && best->hi <= cur))
      throw internal_error("interval cover infeasible despite bridges");
    picked.push_back(best->idx);
    cur = best->hi;
    if (cur >= base.len) {
      done_to_end = true;
      break;
    }
  }
  if (!done_to_end) throw internal_error("cover did not reach Z");
  std::sort(picked.begin(), picked.end(), [&](size_t a, size_t b) {
    if (maximal[a].b0 != maximal[b].b0) return maximal[a].b0 < maximal[b].b0;
    return maximal[a].b1 < maximal[b].b1;
  });
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  CrossingSequence seq;
  seq.surround = quarter;
  seq.samples = samples;
  for (size_t idx : picked) seq.bridges.push_back(maximal[idx]);
  for (const Rat& t : samples) {
    bool covered = false;
    for (const auto& b : seq.bridges)
      if (surrounds(base, b.b0, b.b1, t, quarter)) covered = true;
    if (!covered) throw internal_error("sample not k/4-surrounded by the cover");
  }
  return seq;
}

CrossingSequence perfect_subsequence(const MetricGraph& g, const BaseGeodesic& base,
                                     const CrossingSequence& seq, const Rat& k) {
  Rat eighth = k / 8;
  const auto& bridges = seq.bridges;
  int n = static_cast<int>(bridges.size());
  // Initial points along gamma are the interval starts; gamma is a shortest
  // path, so their distance is the parameter gap.
  for (int i = 0; i + 2 < n; ++i)
    if (bridges[i + 1].b0 - bridges[i].b0 < eighth &&
        bridges[i + 2].b0 - bridges[i + 1].b0 < eighth)
      throw internal_error("three mutually close initial points in the cover");
  std::vector<bool> drop(n, false);
  for (int i = 0; i + 1 < n; ++i)
    if (bridges[i + 1].b0 - bridges[i].b0 < eighth) drop[i] = true;
  CrossingSequence out;
  out.surround = eighth;
  out.samples = seq.samples;
  out.perfect = true;
  for (int i = 0; i < n; ++i)
    if (!drop[i]) out.bridges.push_back(bridges[i]);
  for (size_t i = 0; i + 1 < out.bridges.size(); ++i)
    if (out.bridges[i + 1].b0 - out.bridges[i].b0 < eighth)
      throw internal_error("subsequence is not perfect");
  for (const Rat& t : out.samples) {
    bool covered = false;
    for (const auto& b : out.bridges)
      if (surrounds(base, b.b0, b.b1, t, eighth)) covered = true;
    if (!covered) throw internal_error("sample lost its k/8-surround");
  }
  return out;
}

MetaResult build_meta_bridges(const MetricGraph& g, const BaseGeodesic& base,
                              const CrossingSequence& seq, const Rat& k,
                              const Rat& join_threshold, const Rat& a) {
  if (!seq.perfect) throw contract_error("meta-bridges need a perfect sequence");
  MetaResult out;
  std::vector<MetaBridge>& metas = out.metas;
  for (size_t i = 0; i < seq.bridges.size(); ++i) {
    const Bridge& b = seq.bridges[i];
    MetaBridge m;
    m.route = b.route;
    m.b0 = b.b0;
    m.b1 = b.b1;
    m.a_anchored = b.a_anchored;
    m.z_anchored = b.z_anchored;
    m.bridge_ids = {static_cast<int>(i)};
    metas.push_back(std::move(m));
  }
  // Join-tree accounting: union-find over joining steps, each contributing
  // one brown connector with up to two leaf contacts on bridge material.
  std::vector<int> seg_parent;
  std::vector<int> seg_leaves;
  std::vector<Rat> seg_length;
  std::function<int(int)> seg_find = [&](int x) {
    while (seg_parent[x] != x) x = seg_parent[x] = seg_parent[seg_parent[x]];
    return x;
  };
  auto regions = [&](const std::vector<MetaBridge>& ms) {
    std::vector<Region> out_r;
    for (const auto& m : ms) out_r.push_back(m.route.as_region(g));
    return out_r;
  };
  std::vector<Region> reg = regions(metas);

  while (true) {
    // Smallest-connector eligible pair: below a, with no opposite endpoint
    // pair within the joining threshold.
    int pick_i = -1, pick_j = -1;
    Dist pick_d = Dist::infinity();
    for (size_t i = 0; i < metas.size(); ++i)
      for (size_t j = i + 1; j < metas.size(); ++j) {
        Dist d = region_distance(g, reg[i], reg[j]);
        if (!(d < a)) continue;
        // Join only when all four endpoint pairs are far (the close-endpoint
        // cases are the exemptions of the separation rule).
        bool blocked = false;
        for (const Locus& p : {metas[i].route.first(), metas[i].route.last()})
          for (const Locus& q : {metas[j].route.first(), metas[j].route.last()})
            if (locus_distance(g, p, q) < join_threshold) blocked = true;
        if (blocked) continue;
        if (d < pick_d) {
          pick_d = d;
          pick_i = static_cast<int>(i);
          pick_j = static_cast<int>(j);
        }
      }
    if (pick_i < 0) break;
    // Order by interval start so the joined interval is [B.b0, C.b1].
    int bi = pick_i, ci = pick_j;
    if (metas[ci].b0 < metas[bi].b0 ||
        (metas[ci].b0 == metas[bi].b0 && metas[ci].b1 < metas[bi].b1))
      std::swap(bi, ci);
    MetaBridge B = metas[bi];
    MetaBridge C = metas[ci];
    auto alpha = geodesic(g, reg[bi], reg[ci]);
    if (!alpha) throw internal_error("eligible pair without a connector");
    Locus x = alpha->first(), y = alpha->last();
    auto sx = B.route.param_of(g, x);
    auto sy = C.route.param_of(g, y);
    if (!sx || !sy) throw internal_error("connector endpoints left their routes");

    int seg = static_cast<int>(seg_parent.size());
    seg_parent.push_back(seg);
    seg_leaves.push_back(0);
    seg_length.push_back(alpha->length());
    auto absorb = [&](const MetaBridge& m, const Rat& at) {
      bool on_brown = false;
      for (const auto& br : m.brown)
        if (at >= br.from && at <= br.to) {
          on_brown = true;
          int r1 = seg_find(seg), r2 = seg_find(br.segment);
          if (r1 != r2) {
            seg_parent[r1] = r2;
            seg_leaves[r2] += seg_leaves[r1];
            seg_length[r2] += seg_length[r1];
          }
        }
      if (!on_brown) seg_leaves[seg_find(seg)] += 1;
    };
    absorb(B, *sx);
    absorb(C, *sy);
    out.ledger.joins_performed++;

    MetaBridge D;
    D.b0 = B.b0;
    D.b1 = C.b1;
    D.a_anchored = B.a_anchored;
    D.z_anchored = C.z_anchored;
    D.bridge_ids = B.bridge_ids;
    D.bridge_ids.insert(D.bridge_ids.end(), C.bridge_ids.begin(), C.bridge_ids.end());
    D.route = B.route.sub_route(g, Rat(0), *sx);
    D.route.append(g, *alpha);
    Rat c_shift = *sx + alpha->length() - *sy;
    D.route.append(g, C.route.sub_route(g, *sy, C.route.length()));
    for (const auto& br : B.brown) {
      if (br.from >= *sx) continue;
      D.brown.push_back({br.from, std::min(br.to, *sx), br.segment});
    }
    D.brown.push_back({*sx, Rat(*sx + alpha->length()), seg});
    for (const auto& br : C.brown) {
      if (br.to <= *sy) continue;
      D.brown.push_back(
          {Rat(std::max(br.from, *sy) + c_shift), Rat(br.to + c_shift), br.segment});
    }
    // Replace the inclusive range [bi..ci] in interval order by D.
    std::vector<MetaBridge> next;
    for (size_t idx = 0; idx < metas.size(); ++idx) {
      bool between = metas[idx].b0 >= B.b0 && metas[idx].b1 <= C.b1;
      if (static_cast<int>(idx) == bi) {
        next.push_back(D);
        continue;
      }
      if (static_cast<int>(idx) == ci || between) continue;
      next.push_back(metas[idx]);
    }
    metas = std::move(next);
    std::sort(metas.begin(), metas.end(), [](const MetaBridge& p, const MetaBridge& q) {
      if (p.b0 != q.b0) return p.b0 < q.b0;
      return p.b1 < q.b1;
    });
    reg = regions(metas);
  }

  // Final checks: separation rule, join bounds, join-tree bounds, cover.
  for (size_t i = 0; i < metas.size(); ++i)
    for (size_t j = i + 1; j < metas.size(); ++j) {
      Dist d = region_distance(g, reg[i], reg[j]);
      if (d >= a) continue;
      bool exempt = false;
      for (const Locus& p : {metas[i].route.first(), metas[i].route.last()})
        for (const Locus& q : {metas[j].route.first(), metas[j].route.last()})
          if (locus_distance(g, p, q) < join_threshold) exempt = true;
      if (!exempt)
        throw internal_error("close meta-bridges without close endpoints");
    }
  Rat join_bound = 15 * a;
  for (const auto& m : metas) {
    // Maximal brown ranges are the joins.
    std::vector<std::pair<Rat, Rat>> joins;
    for (const auto& br : m.brown) {
      if (!joins.empty() && br.from <= joins.back().second)
        joins.back().second = std::max(joins.back().second, br.to);
      else
        joins.push_back({br.from, br.to});
    }
    for (const auto& [from, to] : joins) {
      Rat len = to - from;
      out.ledger.join_lengths.push_back(len);
      if (!(len < join_bound)) throw internal_error("join longer than 15a");
      Route piece = m.route.sub_route(g, from, to);
      RouteRegionProfile prof(g, piece, base.gamma_region);
      Dist gap = prof.minimum();
      out.ledger.join_gamma_gap.push_back(gap);
      if (gap < a) throw internal_error("join within a of gamma");
    }
  }
  std::map<int, JoinLedger::Tree> trees;
  for (size_t s = 0; s < seg_parent.size(); ++s) {
    int root = seg_find(static_cast<int>(s));
    if (trees.count(root)) continue;
    trees[root] = {seg_leaves[root], seg_length[root]};
  }
  for (auto& [root, tree] : trees) {
    if (tree.rank > 16) throw internal_error("join-tree rank above 16");
    if (tree.rank >= 2 && !(tree.length < a * (tree.rank - 1)))
      throw internal_error("join-tree longer than a(rank-1)");
    out.ledger.trees.push_back(tree);
  }
  for (const Rat& t : seq.samples) {
    bool covered = false;
    for (const auto& m : metas)
      if (surrounds(base, m.b0, m.b1, t, k / 8)) covered = true;
    if (!covered) throw internal_error("meta-bridges lost the k/8 cover");
  }
  return out;
}

}  // namespace coarse
