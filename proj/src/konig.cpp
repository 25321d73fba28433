#include "coarse/fat_minor.hpp"

namespace coarse {

namespace {

void require_geodesic(const MetricGraph& g, const Route& r, const char* what) {
  Dist d = locus_distance(g, r.first(), r.last());
  if (d.is_inf() || !(d == r.length()))
    throw contract_error(std::string(what) + ": route is not a geodesic");
}

}  // namespace

FatRayResult fat_ray_prefix(const MetricGraph& g, const Route& geo, const Rat& r) {
  if (r <= 0) throw input_error("fatness level must be positive");
  require_geodesic(g, geo, "fat_ray_prefix");
  FatRayResult out;
  const Rat& len = geo.length();
  // Greedy blocks: B_0 is the origin, then arcs of length r; on a geodesic
  // the greedy stopping points land at multiples of r.
  std::vector<std::pair<Rat, Rat>> blocks;
  blocks.push_back({Rat(0), Rat(0)});
  Rat start = 0;
  while (start < len) {
    Rat end = std::min(Rat(start + r), len);
    blocks.push_back({start, end});
    start = end;
  }
  // A trailing partial path block cannot anchor the pattern; a full one is
  // closed off by the route's endpoint as a final singleton branch set.
  if (blocks.size() % 2 == 0) {  // last index odd = block is a path
    const auto& last = blocks.back();
    if (last.second - last.first == r)
      blocks.push_back({len, len});
    else
      blocks.pop_back();
  }
  if (blocks.size() < 3) {
    out.too_short = true;
    return out;
  }
  out.blocks = static_cast<int>(blocks.size());
  int sets = static_cast<int>(blocks.size() + 1) / 2;
  FatModel model;
  model.pattern = PatternGraph::path(sets - 1);
  model.level = r;
  for (size_t i = 0; i < blocks.size(); ++i) {
    Route piece = geo.sub_route(g, blocks[i].first, blocks[i].second);
    if (i % 2 == 0)
      model.branch_sets.push_back(piece.as_region(g));
    else
      model.branch_paths.push_back(piece);
  }
  FatVerdict v = verify_fat_model(g, model, r);
  if (!v.ok) throw internal_error("fat ray model failed verification: " + v.failure);
  out.model = std::move(model);
  return out;
}

bool BadPairGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& e : edges)
    if (e.i == i && e.j == j) return true;
  return false;
}

BadPairGraph bad_pair_graph(const MetricGraph& g, const std::vector<Route>& geodesics,
                            const Rat& r, const Rat& n) {
  BadPairGraph out;
  out.n = static_cast<int>(geodesics.size());
  out.r = r;
  out.depth = n;
  if (geodesics.empty()) return out;
  const Locus& o = geodesics[0].first();
  for (const auto& p : geodesics) {
    require_geodesic(g, p, "bad_pair_graph");
    if (!(p.first() == o))
      throw contract_error("bad_pair_graph: routes must share their root");
  }
  // Witnesses range over route waypoints that are vertices, at depth
  // (= arc parameter on a rooted geodesic) strictly greater than n.
  std::vector<std::vector<std::pair<Locus, Rat>>> deep(out.n);
  for (int i = 0; i < out.n; ++i)
    for (const auto& [loc, t] : geodesics[i].junctions(g))
      if (loc.is_vertex() && t > n) deep[i].push_back({loc, t});
  for (int i = 0; i < out.n; ++i)
    for (int j = i + 1; j < out.n; ++j) {
      bool found = false;
      for (const auto& [li, ti] : deep[i]) {
        for (const auto& [lj, tj] : deep[j])
          if (locus_distance(g, li, lj) <= r) {
            out.edges.push_back({i, j, li, lj});
            found = true;
            break;
          }
        if (found) break;
      }
    }
  return out;
}

FatModel fat_star_of_paths(const MetricGraph& g, const std::vector<Route>& geodesics,
                           const Rat& r, const Rat& n) {
  if (geodesics.empty()) throw input_error("need at least one geodesic");
  if (r <= 0 || n < 0) throw input_error("bad parameters");
  BadPairGraph bad = bad_pair_graph(g, geodesics, r, n);
  if (!bad.edges.empty()) {
    const auto& e = bad.edges.front();
    throw contract_error("routes " + std::to_string(e.i) + " and " +
                         std::to_string(e.j) + " form a bad pair");
  }
  int m = static_cast<int>(geodesics.size());
  for (int kth = 1; kth <= m; ++kth) {
    Rat need = 2 * kth * r + n;
    if (!(geodesics[kth - 1].length() > need))
      throw contract_error("route " + std::to_string(kth - 1) +
                           " shorter than 2kr+n = " + rat_str(need));
  }
  FatModel model;
  model.pattern = PatternGraph::wedge_of_paths(m);
  model.level = r;
  model.branch_sets.assign(model.pattern.n(), Region());
  model.branch_paths.assign(model.pattern.m(), Route::trivial(geodesics[0].first()));
  // Center: union of the depth-n initial segments.
  Region center;
  for (const auto& p : geodesics) center.unite(g, p.sub_route(g, Rat(0), n).as_region(g));
  model.branch_sets[0] = center;
  // The k-th route contributes 2k alternating intervals past depth n; the
  // first 2k-1 have length exactly r, the last takes the remainder.
  int vertex_cursor = 1, edge_cursor = 0;
  for (int kth = 1; kth <= m; ++kth) {
    const Route& p = geodesics[kth - 1];
    Rat pos = n;
    for (int piece = 1; piece <= 2 * kth; ++piece) {
      Rat end = (piece == 2 * kth) ? p.length() : Rat(pos + r);
      Route part = p.sub_route(g, pos, end);
      if (piece % 2 == 1)
        model.branch_paths[edge_cursor++] = part;
      else
        model.branch_sets[vertex_cursor++] = part.as_region(g);
      pos = end;
    }
  }
  FatVerdict v = verify_fat_model(g, model, r);
  if (!v.ok) throw internal_error("wedge model failed verification: " + v.failure);
  return model;
}

}  // namespace coarse
