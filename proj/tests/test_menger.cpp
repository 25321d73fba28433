#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarse/far_paths.hpp"
#include "coarse/menger.hpp"
#include "support.hpp"

using namespace coarse;
using namespace coarse::testing;

namespace {

Region arc_region(const MetricGraph& c, int n, int from, int to) {
  Region r;
  r.add_vertex(c, c.vertex(std::to_string(from)));
  for (int i = from; i != to; i = (i + 1) % n)
    r.add_whole_edge(c, c.edge_between(c.vertex(std::to_string(i)),
                                       c.vertex(std::to_string((i + 1) % n))));
  return r;
}

}  // namespace

TEST_CASE("base geodesic on C_200 arcs") {
  MetricGraph c = cycle_graph(200);
  Region a = arc_region(c, 200, 180, 20);
  Region z = arc_region(c, 200, 80, 120);
  BaseGeodesic base = base_geodesic(c, a, z);
  CHECK(base.len == Rat(60));
  CHECK(a.contains(c, base.gamma.first()));
  CHECK(z.contains(c, base.gamma.last()));
}

TEST_CASE("find_bridge: path gives the separator, cycle a bridge") {
  MetricGraph p = path_graph(40);
  Region a = Region::of_vertex(p.vertex("0"));
  Region z = Region::of_vertex(p.vertex("40"));
  BaseGeodesic base = base_geodesic(p, a, z);
  auto res = find_bridge(p, base, Rat(20), Rat(8));
  REQUIRE(std::holds_alternative<Separator>(res));
  const Separator& s = std::get<Separator>(res);
  CHECK(s.verified);
  CHECK(s.diameter <= Rat(8));
  CHECK(separates(p, s.ball, a, z));

  MetricGraph c = cycle_graph(200);
  Region ca = arc_region(c, 200, 180, 20);
  Region cz = arc_region(c, 200, 80, 120);
  BaseGeodesic cbase = base_geodesic(c, ca, cz);
  auto cres = find_bridge(c, cbase, Rat(30), Rat(16));
  REQUIRE(std::holds_alternative<Bridge>(cres));
  const Bridge& b = std::get<Bridge>(cres);
  CHECK(b.b0 <= Rat(30 - 6));
  CHECK(b.b1 >= Rat(30 + 6));
  // Spine really keeps its distance from gamma.
  RouteRegionProfile prof(c, b.route, cbase.gamma_region);
  CHECK(prof.min_in_range(b.spine_from, b.spine_to) >= Rat(2));
}

TEST_CASE("menger2 on the unit path returns a verified separator") {
  MetricGraph p = path_graph(10);
  Region a = Region::of_vertex(p.vertex("0"));
  Region z = Region::of_vertex(p.vertex("10"));
  for (MengerMode mode : {MengerMode::Aux, MengerMode::Primary}) {
    MengerOutcome out = menger2(p, a, z, Rat(4), mode);
    REQUIRE(out.is_separator());
    CHECK(out.separator->verified);
    CHECK(out.separator->diameter <= Rat(4));
  }
}

TEST_CASE("menger2 on C_200 returns the two arcs") {
  MetricGraph c = cycle_graph(200);
  Region a = arc_region(c, 200, 180, 20);
  Region z = arc_region(c, 200, 80, 120);
  for (MengerMode mode : {MengerMode::Aux, MengerMode::Primary}) {
    MengerOutcome out = menger2(c, a, z, Rat(16), mode);
    REQUIRE(out.paths.has_value());
    CHECK(out.paths->verified);
    CHECK(out.paths->separation >= out.paths->required);
    // The construction finds the genuinely far arcs here.
    CHECK(out.paths->separation >= Rat(30));
  }
}

TEST_CASE("menger2 on the theta graph uses two strands") {
  // Thick terminals: the first stretch of every strand on each side, so no
  // small ball swallows a whole terminal.
  MetricGraph t = theta_graph(3, 60);
  Region a, z;
  a.add_vertex(t, t.vertex("a"));
  z.add_vertex(t, t.vertex("z"));
  for (int i = 0; i < 3; ++i)
    for (int j = 1; j <= 12; ++j) {
      a.add_vertex(t, t.vertex("s" + std::to_string(i) + "." + std::to_string(j)));
      z.add_vertex(t, t.vertex("s" + std::to_string(i) + "." + std::to_string(59 - j + 1)));
    }
  for (MengerMode mode : {MengerMode::Aux, MengerMode::Primary}) {
    MengerOutcome out = menger2(t, a, z, Rat(8), mode);
    REQUIRE(out.paths.has_value());
    CHECK(out.paths->verified);
  }
}

TEST_CASE("menger2 outcome soundness on random graphs, both modes") {
  Rng rng(20240809);
  int runs = 0;
  for (int trial = 0; trial < 18; ++trial) {
    MetricGraph g = random_connected_graph(24 + rng.below(16), 6 + rng.below(6), rng);
    // Random disjoint vertex terminals.
    std::vector<VertexId> perm(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) perm[v] = v;
    for (int i = g.vertex_count() - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    int na = 1 + rng.below(3), nz = 1 + rng.below(3);
    Region a = Region::of_vertices({perm.begin(), perm.begin() + na});
    Region z = Region::of_vertices({perm.begin() + na, perm.begin() + na + nz});
    for (Rat k : {Rat(8), Rat(16)}) {
      for (MengerMode mode : {MengerMode::Aux, MengerMode::Primary}) {
        MengerOutcome out = menger2(g, a, z, k, mode);
        runs++;
        if (out.is_separator()) {
          CHECK(out.separator->verified);
          CHECK(out.separator->diameter <= k);
          CHECK(separates(g, out.separator->ball, a, z));
        } else {
          REQUIRE(out.paths.has_value());
          CHECK(out.paths->verified);
          CHECK(out.paths->separation >= out.paths->required);
          CHECK(a.contains(g, out.paths->alpha1.first()));
          CHECK(z.contains(g, out.paths->alpha1.last()));
        }
        // Meta-bridge ledger bounds.
        Rat aa = mode == MengerMode::Primary ? Rat(k / 272) : Rat(k / 680);
        for (const auto& tree : out.ledger.trees) {
          CHECK(tree.rank <= 16);
          if (tree.rank >= 2) CHECK(tree.length < aa * (tree.rank - 1));
        }
        for (const Rat& jl : out.ledger.join_lengths) CHECK(jl < 15 * aa);
        for (const Dist& gap : out.ledger.join_gamma_gap) CHECK(gap >= aa);
      }
    }
  }
  CHECK(runs == 18 * 4);
}

TEST_CASE("far paths: basics and the constructed parallel-strand instance") {
  // Three length-20 strands whose starts are chained 5 apart; pairwise
  // strand distance is 5, realized between the start vertices.
  MetricGraph::Builder tb;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 20; ++j)
      tb.add_edge("s" + std::to_string(i) + "." + std::to_string(j),
                  "s" + std::to_string(i) + "." + std::to_string(j + 1));
  for (int i = 0; i + 1 < 3; ++i) {
    std::string prev = "s" + std::to_string(i) + ".0";
    for (int j = 1; j < 5; ++j) {
      tb.add_edge(prev, "c" + std::to_string(i) + "." + std::to_string(j));
      prev = "c" + std::to_string(i) + "." + std::to_string(j);
    }
    tb.add_edge(prev, "s" + std::to_string(i + 1) + ".0");
  }
  MetricGraph t = tb.build();
  Region a = Region::of_vertices(
      {t.vertex("s0.0"), t.vertex("s1.0"), t.vertex("s2.0")});
  Region z = Region::of_vertices(
      {t.vertex("s0.20"), t.vertex("s1.20"), t.vertex("s2.20")});
  auto one = far_paths_bruteforce(t, a, z, 1, Rat(0));
  CHECK(one.status == FarPathsStatus::Found);
  auto three = far_paths_bruteforce(t, a, z, 3, Rat(5));
  CHECK(three.status == FarPathsStatus::Found);
  auto too_far = far_paths_bruteforce(t, a, z, 3, Rat(30));
  CHECK(too_far.status == FarPathsStatus::None);

  // The two arcs of a cycle between two terminal arcs.
  MetricGraph c = cycle_graph(40);
  Region ca = arc_region(c, 40, 38, 2);
  Region cz = arc_region(c, 40, 18, 22);
  auto arcs = far_paths_bruteforce(c, ca, cz, 2, Rat(4));
  CHECK(arcs.status == FarPathsStatus::Found);
  auto none = far_paths_bruteforce(c, ca, cz, 2, Rat(5));
  CHECK(none.status == FarPathsStatus::None);
}

TEST_CASE("cross-oracle: separator implies no far pair") {
  Rng rng(777111);
  for (int trial = 0; trial < 10; ++trial) {
    MetricGraph g = random_connected_graph(12, 1 + rng.below(3), rng);
    Region a = Region::of_vertex(rng.below(g.vertex_count()));
    Region z = Region::of_vertex(rng.below(g.vertex_count()));
    if (a.intersects(g, z)) continue;
    Rat k = 8;
    MengerOutcome out = menger2(g, a, z, k, MengerMode::Aux);
    if (!out.is_separator()) continue;
    auto res = far_paths_bruteforce(g, a, z, 2, Rat(k + 1));
    CHECK(res.status == FarPathsStatus::None);
  }
}

TEST_CASE("menger2_endpoints pins both vertices") {
  MetricGraph c = cycle_graph(200);
  Region a = arc_region(c, 200, 180, 20);
  Region z = arc_region(c, 200, 80, 120);
  // Pin the arc midpoints.
  VertexId x = c.vertex("0"), z0 = c.vertex("100");
  // Vertex terminals for the pinning construction.
  std::vector<VertexId> av, zv;
  for (int i = 180; i != 21; i = (i + 1) % 200) av.push_back(c.vertex(std::to_string(i)));
  for (int i = 80; i <= 120; ++i) zv.push_back(c.vertex(std::to_string(i)));
  Region av_r = Region::of_vertices(av), zv_r = Region::of_vertices(zv);
  MengerOutcome out = menger2_endpoints(c, av_r, zv_r, Rat(16), x, z0);
  REQUIRE(out.paths.has_value());
  std::vector<Locus> ends{out.paths->alpha1.first(), out.paths->alpha1.last(),
                          out.paths->alpha2.first(), out.paths->alpha2.last()};
  CHECK(std::count(ends.begin(), ends.end(), Locus::vertex(x)) >= 1);
  CHECK(std::count(ends.begin(), ends.end(), Locus::vertex(z0)) >= 1);

  // Path graph: separator projected back.
  MetricGraph p = path_graph(30);
  Region pa = Region::of_vertices({p.vertex("0"), p.vertex("1")});
  Region pz = Region::of_vertices({p.vertex("29"), p.vertex("30")});
  MengerOutcome pout = menger2_endpoints(p, pa, pz, Rat(4), p.vertex("0"), p.vertex("30"));
  REQUIRE(pout.is_separator());
  CHECK(pout.separator->verified);
  CHECK(separates(p, pout.separator->ball, pa, pz));

  // Singleton A reduces to the plain dichotomy with a pinned start.
  Region single = Region::of_vertex(c.vertex("0"));
  Region ztip = Region::of_vertex(c.vertex("100"));
  MengerOutcome sout = menger2_endpoints(c, single, ztip, Rat(8), x, z0);
  CHECK((sout.is_separator() || sout.paths.has_value()));
}

TEST_CASE("menger2_to_boundary on a path and a rung-ladder") {
  MetricGraph p = path_graph(40);
  Region a = Region::of_vertex(p.vertex("0"));
  BoundaryReport rep = menger2_to_boundary(p, a, Rat(4), {Rat(10), Rat(20), Rat(30)});
  for (const auto& [r, o] : rep.outcomes) CHECK(o.is_separator());
  CHECK(rep.stabilized);

  // Two long parallel columns joined only through A by a long chain: no
  // k-ball can cut both columns, so the far pair survives at every radius.
  MetricGraph::Builder b;
  for (int i = 0; i < 60; ++i) {
    b.add_edge("a" + std::to_string(i), "a" + std::to_string(i + 1));
    b.add_edge("b" + std::to_string(i), "b" + std::to_string(i + 1));
  }
  std::string prev = "a0";
  for (int j = 1; j <= 9; ++j) {
    b.add_edge(prev, "c" + std::to_string(j));
    prev = "c" + std::to_string(j);
  }
  b.add_edge(prev, "b0");
  MetricGraph ladder = b.build();
  Region la;
  for (int i = 0; i <= 6; ++i) {
    la.add_vertex(ladder, ladder.vertex("a" + std::to_string(i)));
    la.add_vertex(ladder, ladder.vertex("b" + std::to_string(i)));
  }
  for (int j = 1; j <= 9; ++j) la.add_vertex(ladder, ladder.vertex("c" + std::to_string(j)));
  BoundaryReport lrep =
      menger2_to_boundary(ladder, la, Rat(4), {Rat(20), Rat(35), Rat(50)});
  for (const auto& [r, o] : lrep.outcomes) CHECK(o.paths.has_value());

  // Radius zero degenerates to Z = A.
  BoundaryReport zrep = menger2_to_boundary(p, a, Rat(4), {Rat(0)});
  CHECK(zrep.outcomes.size() == 1);

  CHECK_THROWS_AS(menger2_to_boundary(p, a, Rat(4), {Rat(100)}), input_error);
}

TEST_CASE("degenerate terminals: touching regions and disconnection") {
  MetricGraph p = path_graph(6);
  Region a = Region::of_vertices({p.vertex("0"), p.vertex("3")});
  Region z = Region::of_vertices({p.vertex("3"), p.vertex("6")});
  MengerOutcome out = menger2(p, a, z, Rat(2), MengerMode::Aux);
  REQUIRE(out.is_separator());
  CHECK(out.separator->verified);

  MetricGraph::Builder b;
  b.add_edge("0", "1");
  b.add_edge("2", "3");
  MetricGraph two = b.build();
  MengerOutcome disc = menger2(two, Region::of_vertex(two.vertex("0")),
                               Region::of_vertex(two.vertex("3")), Rat(2));
  REQUIRE(disc.is_separator());
  CHECK(disc.separator->verified);
}
