#include "coarse/star_decomp.hpp"

#include <algorithm>
#include <functional>

#include "search_util.hpp"

namespace coarse {

bool AnnulusDecomposition::claim_a_holds(int m) const {
  Rat bound = Rat(15) * m * k * k;
  for (const auto& annulus : boxes)
    for (const auto& box : annulus)
      if (!(box.diam < bound)) return false;
  return true;
}

AnnulusDecomposition annulus_boxes(const MetricGraph& g, VertexId root, long k) {
  if (k < 1) throw input_error("k must be a positive integer");
  if (!g.unit_lengths()) throw input_error("annulus decomposition needs unit lengths");
  if (!g.connected()) throw input_error("annulus decomposition needs a connected graph");
  AnnulusDecomposition dec;
  dec.root = root;
  dec.k = k;
  dec.width = 4 * k + 1;
  dec.levels.assign(g.vertex_count(), 0);
  dec.annulus_of.assign(g.vertex_count(), -1);
  dec.box_of.assign(g.vertex_count(), -1);
  long ecc = rat_to_long(g.eccentricity(root).value());
  int annuli = static_cast<int>(ecc / dec.width) + 1;
  dec.boxes.assign(annuli, {});
  std::vector<std::vector<VertexId>> members(annuli);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    long l = rat_to_long(g.dist(root, v).value());
    dec.levels[v] = l;
    int n = static_cast<int>(l / dec.width);
    dec.annulus_of[v] = n;
    members[n].push_back(v);
  }
  for (int n = 0; n < annuli; ++n) {
    auto classes = near_components(g, Region::of_vertices(members[n]), Rat(k));
    for (const auto& cls : classes) {
      AnnulusDecomposition::Box box;
      box.verts = cls.vertices();
      long mid_level = static_cast<long>(n) * dec.width + 2 * k + 1;
      for (VertexId v : box.verts) {
        dec.box_of[v] = static_cast<int>(dec.boxes[n].size());
        if (dec.levels[v] == mid_level) box.midpoints.push_back(v);
      }
      box.tall_mid = !box.midpoints.empty();
      for (VertexId v : box.verts) {
        for (const auto& [w, e] : g.neighbors(v))
          if (dec.annulus_of[w] == n + 1) {
            box.tall_edge = true;
            break;
          }
        if (box.tall_edge) break;
      }
      box.tall = box.tall_edge || n + 1 == annuli;
      if (box.tall_edge != box.tall_mid) dec.tall_divergences++;
      Rat diam = 0;
      for (size_t i = 0; i < box.verts.size(); ++i) {
        const auto& row = g.dist_from(box.verts[i]);
        for (size_t j = i + 1; j < box.verts.size(); ++j)
          diam = std::max(diam, Rat(row[box.verts[j]].value()));
      }
      box.diam = diam;
      dec.boxes[n].push_back(std::move(box));
    }
  }
  return dec;
}

SuperBoxPartition super_boxes(const MetricGraph& g, const AnnulusDecomposition& dec) {
  int annuli = static_cast<int>(dec.boxes.size());
  // Union-find over (annulus, box) pairs, flattened.
  std::vector<int> offset(annuli + 1, 0);
  for (int n = 0; n < annuli; ++n)
    offset[n + 1] = offset[n] + static_cast<int>(dec.boxes[n].size());
  int total = offset[annuli];
  std::vector<int> parent(total);
  for (int i = 0; i < total; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto flat = [&](int n, int i) { return offset[n] + i; };

  // Short boxes join the class of the tall boxes below them; two tall boxes
  // sharing a short box become siblings.
  std::vector<int> adopted_by(total, -1);
  for (int n = 1; n < annuli; ++n) {
    for (int i = 0; i < static_cast<int>(dec.boxes[n].size()); ++i) {
      if (dec.boxes[n][i].tall) continue;
      std::vector<int> below;
      for (VertexId v : dec.boxes[n][i].verts)
        for (const auto& [w, e] : g.neighbors(v))
          if (dec.annulus_of[w] == n - 1) {
            int b = flat(n - 1, dec.box_of[w]);
            if (!dec.boxes[n - 1][dec.box_of[w]].tall)
              throw internal_error("short box adjacent to a short box below");
            if (std::find(below.begin(), below.end(), b) == below.end())
              below.push_back(b);
          }
      if (below.empty()) throw internal_error("short box with no tall neighbor below");
      for (size_t j = 1; j < below.size(); ++j) {
        int a = find(below[0]), b = find(below[j]);
        if (a != b) parent[a] = b;
      }
      adopted_by[flat(n, i)] = below[0];
    }
  }
  // Sanity: an adopted short box must touch exactly one class.
  for (int n = 1; n < annuli; ++n)
    for (int i = 0; i < static_cast<int>(dec.boxes[n].size()); ++i) {
      int id = flat(n, i);
      if (adopted_by[id] < 0) continue;
      int cls = find(adopted_by[id]);
      for (VertexId v : dec.boxes[n][i].verts)
        for (const auto& [w, e] : g.neighbors(v))
          if (dec.annulus_of[w] == n - 1 &&
              find(flat(n - 1, dec.box_of[w])) != cls)
            throw internal_error("short box touching two distinct classes");
    }

  // Group tall boxes by class root, then attach adopted shorts.
  std::map<int, SuperBox> groups;
  for (int n = 0; n < annuli; ++n)
    for (int i = 0; i < static_cast<int>(dec.boxes[n].size()); ++i) {
      const auto& box = dec.boxes[n][i];
      if (!box.tall) continue;
      SuperBox& sb = groups[find(flat(n, i))];
      sb.annulus = n;
      sb.verts.insert(sb.verts.end(), box.verts.begin(), box.verts.end());
      sb.midpoints.insert(sb.midpoints.end(), box.midpoints.begin(),
                          box.midpoints.end());
    }
  for (int n = 1; n < annuli; ++n)
    for (int i = 0; i < static_cast<int>(dec.boxes[n].size()); ++i) {
      int id = flat(n, i);
      if (adopted_by[id] < 0) continue;
      SuperBox& sb = groups.at(find(adopted_by[id]));
      const auto& box = dec.boxes[n][i];
      sb.verts.insert(sb.verts.end(), box.verts.begin(), box.verts.end());
    }
  SuperBoxPartition part;
  part.box_of.assign(g.vertex_count(), -1);
  for (auto& [root_id, sb] : groups) {
    std::sort(sb.verts.begin(), sb.verts.end());
    std::sort(sb.midpoints.begin(), sb.midpoints.end());
    part.boxes.push_back(std::move(sb));
  }
  std::sort(part.boxes.begin(), part.boxes.end(),
            [](const SuperBox& a, const SuperBox& b) {
              return a.verts.front() < b.verts.front();
            });
  for (size_t i = 0; i < part.boxes.size(); ++i) {
    SuperBox& sb = part.boxes[i];
    Rat diam = 0;
    for (size_t a = 0; a < sb.verts.size(); ++a) {
      const auto& row = g.dist_from(sb.verts[a]);
      for (size_t b = a + 1; b < sb.verts.size(); ++b)
        diam = std::max(diam, Rat(row[sb.verts[b]].value()));
    }
    sb.diam = diam;
    for (VertexId v : sb.verts) {
      if (part.box_of[v] != -1) throw internal_error("super-boxes overlap");
      part.box_of[v] = static_cast<int>(i);
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (part.box_of[v] < 0) throw internal_error("vertex missed by super-boxes");
  return part;
}

ContractionResult contract_super_boxes(const MetricGraph& g,
                                       const SuperBoxPartition& part, const Rat& D) {
  ContractionResult out;
  MetricGraph::Builder b;
  for (size_t i = 0; i < part.boxes.size(); ++i) b.add_vertex(std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : g.edges()) {
    int a = part.box_of[e.u], c = part.box_of[e.v];
    if (a == c) continue;
    if (a > c) std::swap(a, c);
    edges.push_back({a, c});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto [a, c] : edges) b.add_edge(std::to_string(a), std::to_string(c));
  out.quotient = b.build();
  out.map.assign(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.map[v] = part.box_of[v];
  Rat two_d = 2 * D;
  out.certificate = verify_quasi_isometry(g, out.quotient, out.map, two_d, two_d);
  return out;
}

StarOutcome star_pipeline(const MetricGraph& g, VertexId root, long k, int m) {
  if (m < 1) throw input_error("m must be at least 1");
  StarOutcome out;
  out.decomposition = annulus_boxes(g, root, k);
  out.partition = super_boxes(g, out.decomposition);
  Rat D = Rat(15) * m * k * k;
  ContractionResult contraction = contract_super_boxes(g, out.partition, D);
  if (!contraction.certificate.verdict)
    throw internal_error("contraction certificate failed exhaustive verification");
  const MetricGraph& q = contraction.quotient;
  if (!minor_test(q, PatternGraph::star(m))) {
    out.minor_free = true;
    out.contraction = std::move(contraction);
    return out;
  }
  // Witness: a quotient star minor whose leaves carry midpoints, lifted to a
  // k-fat model.
  auto good = [&](VertexId qv) {
    return !out.partition.boxes[qv].midpoints.empty();
  };
  std::vector<VertexId> center_set;
  std::vector<VertexId> leaves;
  for (VertexId v = 0; v < q.vertex_count() && leaves.empty(); ++v) {
    std::vector<VertexId> cand;
    for (const auto& [w, e] : q.neighbors(v))
      if (good(w)) cand.push_back(w);
    if (static_cast<int>(cand.size()) >= m) {
      center_set = {v};
      leaves.assign(cand.begin(), cand.begin() + m);
    }
  }
  if (leaves.empty()) {
    // Grow connected centers until enough good neighbors are collected.
    if (q.vertex_count() > detail::kMaxSearchVertices)
      throw internal_error("quotient too large for the witness search");
    auto cands = detail::connected_sets(q, q.vertex_count());
    for (const auto& c : cands) {
      std::vector<VertexId> nb;
      for (VertexId v : c.verts)
        for (const auto& [w, e] : q.neighbors(v))
          if (!c.bits[w] && good(w) &&
              std::find(nb.begin(), nb.end(), w) == nb.end())
            nb.push_back(w);
      std::sort(nb.begin(), nb.end());
      if (static_cast<int>(nb.size()) >= m) {
        center_set = c.verts;
        leaves.assign(nb.begin(), nb.begin() + m);
        break;
      }
    }
  }
  if (leaves.empty())
    throw internal_error("quotient has a star minor but no witness with midpoints");

  std::vector<VertexId> center_vertices;
  for (VertexId qv : center_set) {
    const auto& vs = out.partition.boxes[qv].verts;
    center_vertices.insert(center_vertices.end(), vs.begin(), vs.end());
  }
  Region center_core = Region::of_vertices(center_vertices);
  Region hull = ball_around(g, induced_region(g, center_vertices), Rat(k) / 2);
  Region enclosure = region_component_of(g, hull, Locus::vertex(center_vertices[0]));

  FatModel model;
  model.pattern = PatternGraph::star(m);
  model.level = Rat(k);
  model.branch_sets.assign(m + 1, Region());
  model.branch_paths.assign(m, Route::trivial(Locus::vertex(center_vertices[0])));
  Region center_region = enclosure;
  for (int i = 0; i < m; ++i) {
    VertexId x = out.partition.boxes[leaves[i]].midpoints.front();
    model.branch_sets[i + 1] = Region::of_vertex(x);
    auto pi = geodesic(g, Region::of_vertex(x), enclosure);
    if (!pi) throw internal_error("midpoint cannot reach the enclosure");
    if (!(pi->length() > k)) throw internal_error("midpoint too close to the enclosure");
    model.branch_paths[i] = pi->sub_route(g, Rat(0), Rat(k));
    center_region.unite(g, pi->sub_route(g, Rat(k), pi->length()).as_region(g));
  }
  model.branch_sets[0] = center_region;
  FatVerdict v = verify_fat_model(g, model, Rat(k));
  if (!v.ok) throw internal_error("star witness failed verification: " + v.failure);
  out.witness = std::move(model);
  return out;
}

MidpointCheck midpoint_separation_check(const MetricGraph& g,
                                        const AnnulusDecomposition& dec,
                                        const SuperBoxPartition& part, long k) {
  MidpointCheck out;
  out.min_box_gap = Dist::infinity();
  out.min_mid_gap = Dist::infinity();
  Rat two_k = Rat(2 * k), four_k = Rat(4 * k);
  for (size_t i = 0; i < part.boxes.size(); ++i) {
    for (VertexId x : part.boxes[i].midpoints) {
      const auto& row = g.dist_from(x);
      for (size_t j = 0; j < part.boxes.size(); ++j) {
        if (i == j) continue;
        for (VertexId v : part.boxes[j].verts) {
          if (row[v] < out.min_box_gap) {
            out.min_box_gap = row[v];
            if (!(row[v] > two_k) && out.witness.empty())
              out.witness = "midpoint " + g.vertex_name(x) + " at distance " +
                            row[v].str() + " from box " + std::to_string(j);
          }
        }
        for (VertexId y : part.boxes[j].midpoints)
          if (row[y] < out.min_mid_gap) out.min_mid_gap = row[y];
      }
    }
  }
  out.ok = out.min_box_gap > two_k && out.min_mid_gap > four_k;
  out.ok_weak = out.min_box_gap >= two_k && out.min_mid_gap > four_k;
  if (!out.ok_weak && out.witness.empty()) out.witness = "midpoint separation broken";
  return out;
}

}  // namespace coarse
