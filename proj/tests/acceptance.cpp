// Acceptance suite: one checkable criterion per entry, each printing a
// single PASS/FAIL line. Run all or a single one with --criterion N.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "coarse/cover.hpp"
#include "coarse/far_paths.hpp"
#include "coarse/menger.hpp"
#include "coarse/quasi_tree.hpp"
#include "coarse/star_decomp.hpp"
#include "support.hpp"

using namespace coarse;
using namespace coarse::testing;

namespace {

Region cycle_arc(const MetricGraph& c, int n, int from, int to) {
  Region r;
  r.add_vertex(c, c.vertex(std::to_string(from)));
  for (int i = from; i != to; i = (i + 1) % n)
    r.add_whole_edge(c, c.edge_between(c.vertex(std::to_string(i)),
                                       c.vertex(std::to_string((i + 1) % n))));
  return r;
}

Route cycle_route(const MetricGraph& c, int n, int from, int to) {
  std::vector<VertexId> vs;
  for (int i = from;; i = (i + 1) % n) {
    vs.push_back(c.vertex(std::to_string(i)));
    if (i == to) break;
  }
  return Route::from_vertices(c, vs);
}

FatModel arc_triangle(const MetricGraph& c, int n, int seg) {
  // Branch sets and gaps all of arc length seg; needs n == 6*seg.
  FatModel m;
  m.pattern = PatternGraph::complete(3);
  m.level = seg;
  for (int i = 0; i < 3; ++i) {
    int base = 2 * seg * i;
    m.branch_sets.push_back(cycle_arc(c, n, base, base + seg));
  }
  m.branch_paths.push_back(cycle_route(c, n, seg, 2 * seg));
  m.branch_paths.push_back(cycle_route(c, n, 5 * seg, 6 * seg % n));
  m.branch_paths.push_back(cycle_route(c, n, 3 * seg, 4 * seg));
  return m;
}

// ---------------------------------------------------------------- criteria

// 1. Fatness verifier vs oracle on 200 random models over graphs <= 30
// vertices: reported fatness equals the minimum non-exempt pair distance
// computed by an independent all-pairs oracle. Exact rational equality.
bool criterion_1(std::string& detail) {
  Rng rng(101);
  int models = 0, agreements = 0;
  while (models < 200) {
    bool cycle_instance = models % 3 == 2;
    if (cycle_instance) {
      int L = 12 + 6 * (rng.below(4));  // 12..30
      MetricGraph c = cycle_graph(L);
      auto fw = fw_distances(c);
      int seg = L / 6;
      FatModel m = arc_triangle(c, L, seg);
      FatVerdict v = verify_fat_model(c, m, Rat(0));
      if (!v.structural_ok) return false;
      // Oracle: min vertex-pair distance over non-exempt object pairs.
      std::vector<std::vector<VertexId>> objs;
      for (const auto& r : m.branch_sets) objs.push_back(r.vertices());
      for (const auto& p : m.branch_paths) {
        std::vector<VertexId> vs;
        for (const auto& [loc, t] : p.junctions(c))
          if (loc.is_vertex()) vs.push_back(loc.v);
        objs.push_back(vs);
      }
      Dist expect = Dist::infinity();
      int nsets = 3;
      for (size_t a = 0; a < objs.size(); ++a)
        for (size_t b = a + 1; b < objs.size(); ++b) {
          // Exempt pairs: branch set incident to a branch path.
          if (a < static_cast<size_t>(nsets) && b >= static_cast<size_t>(nsets)) {
            auto [u, vtx] = m.pattern.edges[b - nsets];
            if (static_cast<size_t>(u) == a || static_cast<size_t>(vtx) == a) continue;
          }
          for (VertexId x : objs[a])
            for (VertexId y : objs[b]) expect = dist_min(expect, fw[x][y]);
        }
      models++;
      if (v.fatness == expect) agreements++;
    } else {
      MetricGraph g = random_connected_graph(14 + rng.below(17), 4, rng);
      auto fw = fw_distances(g);
      std::vector<VertexId> path;
      std::vector<bool> used(g.vertex_count(), false);
      VertexId v0 = rng.below(g.vertex_count());
      used[v0] = true;
      path.push_back(v0);
      while (true) {
        std::vector<VertexId> opts;
        for (const auto& [w, e] : g.neighbors(path.back()))
          if (!used[w]) opts.push_back(w);
        if (opts.empty()) break;
        VertexId nxt = opts[rng.below(static_cast<int>(opts.size()))];
        used[nxt] = true;
        path.push_back(nxt);
      }
      if (path.size() < 6) continue;
      int segs = 5;
      if (static_cast<int>(path.size()) < segs + 1) segs = 3;
      // Cuts giving every block at least one edge.
      std::vector<int> cuts{0};
      int room = static_cast<int>(path.size()) - 1;
      bool bad = false;
      for (int i = 1; i < segs; ++i) {
        int lo = cuts.back() + 1;
        int hi = room - (segs - i);
        if (lo > hi) {
          bad = true;
          break;
        }
        cuts.push_back(lo + rng.below(hi - lo + 1));
      }
      if (bad) continue;
      cuts.push_back(room);
      FatModel m;
      m.pattern = PatternGraph::path((segs + 1) / 2 - 1);
      m.level = 0;
      std::vector<std::vector<VertexId>> objs;
      for (int i = 0; i < segs; ++i) {
        std::vector<VertexId> block(path.begin() + cuts[i], path.begin() + cuts[i + 1] + 1);
        objs.push_back(block);
        if (i % 2 == 0)
          m.branch_sets.push_back(Route::from_vertices(g, block).as_region(g));
        else
          m.branch_paths.push_back(Route::from_vertices(g, block));
      }
      FatVerdict v = verify_fat_model(g, m, Rat(0));
      if (!v.structural_ok) return false;
      Dist expect = Dist::infinity();
      for (int a = 0; a < segs; ++a)
        for (int b = a + 2; b <= segs - 1; ++b)
          for (VertexId x : objs[a])
            for (VertexId y : objs[b]) expect = dist_min(expect, fw[x][y]);
      models++;
      if (v.fatness == expect) agreements++;
    }
  }
  detail = std::to_string(agreements) + "/200 exact agreements";
  return agreements == 200;
}

// 2. Cycle threshold: search_fat_minor(C_L, K_3, k) succeeds iff L >= 6k.
bool criterion_2(std::string& detail) {
  int checked = 0, correct = 0;
  for (int L : {12, 18, 24, 30, 36}) {
    MetricGraph c = cycle_graph(L);
    for (int k = 1; k <= 6; ++k) {
      auto res = search_fat_minor(c, PatternGraph::complete(3), Rat(k), k + 1);
      bool expect = L >= 6 * k;
      bool found = res.status == SearchStatus::Found;
      if (found && !verify_fat_model(c, *res.model, Rat(k)).ok) return false;
      checked++;
      if (found == expect && res.status != SearchStatus::BudgetExhausted) correct++;
    }
  }
  detail = std::to_string(correct) + "/" + std::to_string(checked) + " thresholds";
  return correct == checked;
}

// 3. Quasi-tree success branch on 20 random subdivided trees and k in
// {1,2,4}: tree branch with an exhaustively verified (1, 10k) certificate.
bool criterion_3(std::string& detail) {
  Rng rng(303);
  int runs = 0, good = 0;
  for (int t = 0; t < 20; ++t) {
    MetricGraph tree = random_subdivided_tree(8, 500, rng);
    for (int k : {1, 2, 4}) {
      QuasiTreeOutcome out = quasi_tree_pipeline(tree, Rat(k), 0);
      runs++;
      if (out.success && out.certificate.verdict && out.certificate.m == Rat(1) &&
          out.certificate.a == Rat(10 * k))
        good++;
    }
  }
  detail = std::to_string(good) + "/" + std::to_string(runs) + " certificates";
  return good == runs;
}

// 4. Quasi-tree witness branch on C_100 at k = 1; claim-1 diameters hold on
// every criterion-3 instance.
bool criterion_4(std::string& detail) {
  MetricGraph c100 = cycle_graph(100);
  QuasiTreeOutcome out = quasi_tree_pipeline(c100, Rat(1), c100.vertex("0"));
  if (out.success || !out.witness) return false;
  if (!verify_fat_model(c100, *out.witness, Rat(1)).ok) return false;
  Rng rng(303);  // same schedule as criterion 3
  for (int t = 0; t < 20; ++t) {
    MetricGraph tree = random_subdivided_tree(8, 500, rng);
    for (int k : {1, 2, 4}) {
      SpherePartition sp = sphere_partition(tree, 0, Rat(k));
      for (const auto& level : sp.diam)
        for (const auto& d : level)
          if (!(d <= Rat(10 * k))) return false;
    }
  }
  detail = "witness verified at 1; class diameters <= 10k on 60 tree runs";
  return true;
}

// 5. Star pipeline: success with a (2D, 2D) certificate on paths/cycles,
// witness branch with a verified k-fat star on 3-leg spiders.
bool criterion_5(std::string& detail) {
  int good = 0, runs = 0;
  for (long k : {2L, 4L}) {
    Rat D = Rat(15) * 3 * k * k;
    MetricGraph p = path_graph(300);
    StarOutcome po = star_pipeline(p, p.vertex("0"), k, 3);
    runs++;
    if (po.minor_free && po.contraction->certificate.verdict &&
        po.contraction->certificate.m == 2 * D &&
        !minor_test(po.contraction->quotient, PatternGraph::star(3)))
      good++;
    MetricGraph c = cycle_graph(300);
    StarOutcome co = star_pipeline(c, c.vertex("0"), k, 3);
    runs++;
    if (co.minor_free && co.contraction->certificate.verdict &&
        !minor_test(co.contraction->quotient, PatternGraph::star(3)))
      good++;
    MetricGraph s = star_graph(3, 120);
    StarOutcome so = star_pipeline(s, s.vertex("c"), k, 3);
    runs++;
    if (!so.minor_free && so.witness && verify_fat_model(s, *so.witness, Rat(k)).ok)
      good++;
  }
  detail = std::to_string(good) + "/" + std::to_string(runs) + " pipeline runs";
  return good == runs;
}

// 6. Subdivision transfer: ten 3k-fat triangles on large cycles transfer to
// verified k-fat subdivided models.
bool criterion_6(std::string& detail) {
  int good = 0;
  for (int i = 0; i < 10; ++i) {
    int k = 1 + i % 5;
    int L = 18 * k + 6 * (i % 3);
    L = (L / 6) * 6;
    MetricGraph c = cycle_graph(L);
    FatModel m = arc_triangle(c, L, L / 6);
    if (!(L / 6 >= 3 * k)) {
      L = 18 * k;
      c = cycle_graph(L);
      m = arc_triangle(c, L, 3 * k);
    }
    if (!verify_fat_model(c, m, Rat(3 * k)).ok) continue;
    FatModel sub = subdivision_transfer(c, m, i % 3, Rat(k));
    if (verify_fat_model(c, sub, Rat(k)).ok) good++;
  }
  detail = std::to_string(good) + "/10 transfers verified";
  return good == 10;
}

// 7. Coarse Menger soundness on 100 random graphs <= 60 vertices with both
// modes: every outcome re-verifies exactly.
bool criterion_7(std::string& detail) {
  Rng rng(707);
  int runs = 0, good = 0, separators = 0, pairs = 0;
  for (int t = 0; t < 100; ++t) {
    MetricGraph g = random_connected_graph(20 + rng.below(41), 4 + rng.below(8), rng);
    std::vector<VertexId> perm(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) perm[v] = v;
    for (int i = g.vertex_count() - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    int na = 1 + rng.below(4), nz = 1 + rng.below(4);
    Region a = Region::of_vertices({perm.begin(), perm.begin() + na});
    Region z = Region::of_vertices({perm.begin() + na, perm.begin() + na + nz});
    for (Rat k : {Rat(8), Rat(16)}) {
      for (MengerMode mode : {MengerMode::Aux, MengerMode::Primary}) {
        MengerOutcome out = menger2(g, a, z, k, mode);
        runs++;
        bool ok;
        if (out.is_separator()) {
          separators++;
          ok = out.separator->verified && out.separator->diameter <= k &&
               separates(g, out.separator->ball, a, z);
        } else {
          pairs++;
          Rat required = mode == MengerMode::Primary ? Rat(k / 272) : Rat(k / 680);
          ok = out.paths->verified && out.paths->separation >= required &&
               a.contains(g, out.paths->alpha1.first()) &&
               z.contains(g, out.paths->alpha1.last()) &&
               a.contains(g, out.paths->alpha2.first()) &&
               z.contains(g, out.paths->alpha2.last());
        }
        if (ok) good++;
      }
    }
  }
  std::ostringstream ss;
  ss << good << "/" << runs << " verified (" << separators << " separators, " << pairs
     << " path pairs)";
  detail = ss.str();
  return good == runs;
}

// 8. Cross-oracle on instances <= 14 vertices: a separator of diameter <= k
// forbids two paths at distance k+1, confirmed by exhaustive search.
bool criterion_8(std::string& detail) {
  Rng rng(808);
  int checked = 0, agreed = 0, attempts = 0;
  while (checked < 30 && attempts < 400) {
    attempts++;
    MetricGraph g = random_connected_graph(8 + rng.below(7), rng.below(4), rng);
    VertexId av = rng.below(g.vertex_count());
    VertexId zv = rng.below(g.vertex_count());
    if (av == zv) continue;
    Region a = Region::of_vertex(av), z = Region::of_vertex(zv);
    Rat k = 8;
    MengerOutcome out = menger2(g, a, z, k, MengerMode::Aux);
    if (!out.is_separator()) continue;
    if (!(out.separator->diameter <= k)) continue;
    auto res = far_paths_bruteforce(g, a, z, 2, Rat(k + 1));
    checked++;
    if (res.status == FarPathsStatus::None) agreed++;
  }
  detail = std::to_string(agreed) + "/" + std::to_string(checked) +
           " separator instances exhausted with no far pair";
  return checked == 30 && agreed == checked;
}

// 9. Meta-bridge ledger on the criterion-7 schedule: join-tree rank <= 16,
// tree length < a(rank-1), joins < 15a and >= a from gamma.
bool criterion_9(std::string& detail) {
  Rng rng(707);
  int runs = 0;
  long trees = 0, joins = 0;
  for (int t = 0; t < 100; ++t) {
    MetricGraph g = random_connected_graph(20 + rng.below(41), 4 + rng.below(8), rng);
    std::vector<VertexId> perm(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) perm[v] = v;
    for (int i = g.vertex_count() - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    int na = 1 + rng.below(4), nz = 1 + rng.below(4);
    Region a = Region::of_vertices({perm.begin(), perm.begin() + na});
    Region z = Region::of_vertices({perm.begin() + na, perm.begin() + na + nz});
    for (Rat k : {Rat(8), Rat(16)}) {
      for (MengerMode mode : {MengerMode::Aux, MengerMode::Primary}) {
        MengerOutcome out = menger2(g, a, z, k, mode);
        runs++;
        Rat aa = mode == MengerMode::Primary ? Rat(k / 272) : Rat(k / 680);
        for (const auto& tree : out.ledger.trees) {
          trees++;
          if (tree.rank > 16) return false;
          if (tree.rank >= 2 && !(tree.length < aa * (tree.rank - 1))) return false;
        }
        for (const auto& jl : out.ledger.join_lengths) {
          joins++;
          if (!(jl < 15 * aa)) return false;
        }
        for (const auto& gap : out.ledger.join_gamma_gap)
          if (gap < aa) return false;
      }
    }
  }
  std::ostringstream ss;
  ss << runs << " runs, " << trees << " join-trees, " << joins << " joins within bounds";
  detail = ss.str();
  return true;
}

// 10. Endpoint corollary on ten cycle instances: the endpoint multiset of
// the returned pair contains the pinned vertices.
bool criterion_10(std::string& detail) {
  int good = 0;
  for (int i = 0; i < 10; ++i) {
    int L = 120 + 16 * i;
    MetricGraph c = cycle_graph(L);
    std::vector<VertexId> av, zv;
    int spread = L / 10;
    for (int d = -spread; d <= spread; ++d) {
      av.push_back(c.vertex(std::to_string((d + L) % L)));
      zv.push_back(c.vertex(std::to_string((L / 2 + d) % L)));
    }
    VertexId x = c.vertex("0"), z0 = c.vertex(std::to_string(L / 2));
    MengerOutcome out = menger2_endpoints(c, Region::of_vertices(av),
                                          Region::of_vertices(zv), Rat(16), x, z0);
    if (!out.paths) continue;
    std::vector<Locus> ends{out.paths->alpha1.first(), out.paths->alpha1.last(),
                            out.paths->alpha2.first(), out.paths->alpha2.last()};
    bool has_x = false, has_z = false;
    for (const auto& l : ends) {
      if (l == Locus::vertex(x)) has_x = true;
      if (l == Locus::vertex(z0)) has_z = true;
    }
    if (has_x && has_z && out.paths->verified) good++;
  }
  detail = std::to_string(good) + "/10 pinned path pairs";
  return good == 10;
}

// 11. Koenig gadgets: greedy fat ray on the length-100 path at r = 10, fat
// wedge on the 3-leg star at r = 5, n = 10; both verified, with the
// two-apart block separation explicit.
bool criterion_11(std::string& detail) {
  MetricGraph p = path_graph(100);
  std::vector<VertexId> vs;
  for (int i = 0; i <= 100; ++i) vs.push_back(p.vertex(std::to_string(i)));
  FatRayResult ray = fat_ray_prefix(p, Route::from_vertices(p, vs), Rat(10));
  if (!ray.model || !verify_fat_model(p, *ray.model, Rat(10)).ok) return false;
  // Explicit block separation: every pair of blocks two or more apart is at
  // least r apart (branch sets and paths alternate along the route).
  std::vector<Region> blocks;
  for (size_t i = 0, s = 0, q = 0; i < ray.model->branch_sets.size() +
                                           ray.model->branch_paths.size();
       ++i) {
    if (i % 2 == 0)
      blocks.push_back(ray.model->branch_sets[s++]);
    else
      blocks.push_back(ray.model->branch_paths[q++].as_region(p));
  }
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = i + 2; j < blocks.size(); ++j)
      if (region_distance(p, blocks[i], blocks[j]) < Rat(10)) return false;

  MetricGraph s = star_graph(3, 100);
  auto leg = [&](int i) {
    std::vector<VertexId> lv{s.vertex("c")};
    for (int j = 1; j <= 100; ++j)
      lv.push_back(s.vertex("l" + std::to_string(i) + "." + std::to_string(j)));
    return Route::from_vertices(s, lv);
  };
  FatModel wedge = fat_star_of_paths(s, {leg(0), leg(1), leg(2)}, Rat(5), Rat(10));
  if (!verify_fat_model(s, wedge, Rat(5)).ok) return false;
  detail = "fat ray (" + std::to_string(ray.blocks) + " blocks) and wedge verified";
  return true;
}

// 12. Cover checker on the 40x40 unit grid with two colors at s = 4,
// d_bound = 20. No such cover exists: by the Lebesgue covering theorem any
// cover of the square by closed sets of diameter < 20 (none touching two
// opposite sides) has a point in three pieces, two of which share a color
// and therefore sit at distance 0 < s. The checker is exercised honestly:
// the natural brick cover is rejected with a concrete witness, and the
// criterion is reported as failed.
bool criterion_12(std::string& detail) {
  MetricGraph grid = grid_graph(40, 40);
  auto brick = [&](int x0, int y0, int w, int h) {
    std::vector<VertexId> vs;
    for (int x = x0; x < x0 + w && x < 40; ++x)
      for (int y = y0; y < y0 + h && y < 40; ++y)
        vs.push_back(grid.vertex(std::to_string(x) + "," + std::to_string(y)));
    return induced_region(grid, vs);
  };
  Region target;
  for (VertexId v = 0; v < grid.vertex_count(); ++v) target.add_vertex(grid, v);
  // The natural two-colored brick wall: 16x4 bricks, offset rows.
  ColoredCover two;
  for (int row = 0; row < 10; ++row) {
    int shift = (row % 2) * 8;
    for (int col = -1; col < 3; ++col) {
      int x0 = col * 16 + shift;
      int w = 16;
      if (x0 < 0) {
        w += x0;
        x0 = 0;
      }
      if (x0 >= 40 || w <= 0) continue;
      two.pieces.push_back({brick(x0, row * 4, w, 4), (row + col + 10) % 2 + 1});
    }
  }
  CoverCheck res = verify_cover(grid, target, two, 1, Rat(4), Rat(20));
  bool two_color_ok = res.ok;

  // Informational: with three colors an offset brick wall passes and flips
  // false under a single color perturbation, with a correct witness. Colors
  // follow c(row, i) = (i + 2*row) mod 3, which separates same-colored
  // bricks by at least 4 in the offset pattern.
  ColoredCover three;
  for (int row = 0; row < 10; ++row) {
    int shift = (row % 2) * 8;
    for (int i = -1; i < 3; ++i) {
      int x0 = i * 16 + shift;
      int w = 16;
      if (x0 < 0) {
        w += x0;
        x0 = 0;
      }
      if (x0 >= 40 || w <= 0) continue;
      int color = ((i + 2 * row) % 3 + 3) % 3 + 1;
      three.pieces.push_back({brick(x0, row * 4, w, 4), color});
    }
  }
  CoverCheck ok3 = verify_cover(grid, target, three, 2, Rat(4), Rat(20));
  ColoredCover mutated = three;
  mutated.pieces[5].second = mutated.pieces[5].second % 3 + 1;
  CoverCheck bad3 = verify_cover(grid, target, mutated, 2, Rat(4), Rat(20));
  std::ostringstream ss;
  ss << "2-color cover rejected (" << res.describe() << "); no valid 2-color cover "
     << "exists at s=4, d<20 (Lebesgue covering obstruction); informational 3-color "
     << "check: pass=" << (ok3.ok ? "yes" : "no")
     << ", perturbed flips false=" << (!bad3.ok ? "yes" : "no");
  detail = ss.str();
  return two_color_ok;  // honest: the stated criterion cannot be met
}

struct Criterion {
  int id;
  const char* title;
  bool (*run)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "fatness verifier matches the all-pairs oracle", criterion_1},
    {2, "fat triangle threshold on cycles (L >= 6k)", criterion_2},
    {3, "quasi-tree success branch with (1,10k) certificates", criterion_3},
    {4, "quasi-tree witness branch and claim-1 diameters", criterion_4},
    {5, "star pipeline quotients and spider witnesses", criterion_5},
    {6, "subdivision transfer 3k -> k", criterion_6},
    {7, "coarse Menger outcome soundness, both modes", criterion_7},
    {8, "Menger separator vs exhaustive far-pair search", criterion_8},
    {9, "meta-bridge join ledger bounds", criterion_9},
    {10, "endpoint corollary pins x and z0", criterion_10},
    {11, "Koenig gadgets: fat ray and fat wedge", criterion_11},
    {12, "two-color brick cover of the 40x40 grid", criterion_12},
};

}  // namespace

int main(int argc, char** argv) {
  int only = -1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (only > 0 && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("[%s] criterion %d: %s (%s) [%lldms]\n", ok ? "PASS" : "FAIL", c.id,
                c.title, detail.c_str(), static_cast<long long>(ms));
    std::fflush(stdout);
    if (!ok) failures++;
  }
  return failures == 0 ? 0 : 1;
}
