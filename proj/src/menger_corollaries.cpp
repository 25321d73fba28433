#include <algorithm>

#include "coarse/menger.hpp"

namespace coarse {

Region distance_sphere(const MetricGraph& g, const Region& a, const Rat& r) {
  if (r < 0) throw input_error("sphere radius must be nonnegative");
  std::vector<Dist> d = dist_to_region(g, a);
  Region out;
  if (r == 0) return a;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (d[v] == r) out.add_vertex(g, v);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    // Interior points reached at exactly r through either endpoint. Segments
    // of `a` on this edge cap the distance along the edge as well.
    auto interior_dist = [&](const Rat& t) -> Dist {
      Dist best = Dist::infinity();
      if (!d[rec.u].is_inf()) best = dist_min(best, d[rec.u] + t);
      if (!d[rec.v].is_inf()) best = dist_min(best, d[rec.v] + Rat(rec.len - t));
      auto it = a.segments().find(e);
      if (it != a.segments().end())
        for (const auto& seg : it->second) {
          if (t < seg.lo) best = dist_min(best, Dist::of(Rat(seg.lo - t)));
          else if (t > seg.hi) best = dist_min(best, Dist::of(Rat(t - seg.hi)));
          else best = Dist::zero();
        }
      return best;
    };
    for (const Dist& du : {d[rec.u]}) {
      if (du.is_inf()) continue;
      Rat t = r - du.value();
      if (t > 0 && t < rec.len && interior_dist(t) == r) {
        Locus l = make_locus(g, e, t);
        if (!l.is_vertex()) out.add_locus(g, l);
      }
    }
    for (const Dist& dv : {d[rec.v]}) {
      if (dv.is_inf()) continue;
      Rat t = Rat(rec.len) - (r - dv.value());
      if (t > 0 && t < rec.len && interior_dist(t) == r) {
        Locus l = make_locus(g, e, t);
        if (!l.is_vertex()) out.add_locus(g, l);
      }
    }
  }
  return out;
}

MengerOutcome menger2_endpoints(const MetricGraph& g, const Region& a,
                                const Region& z, const Rat& k, VertexId x,
                                VertexId z0) {
  if (!a.contains(g, Locus::vertex(x))) throw input_error("x must lie in A");
  if (!z.contains(g, Locus::vertex(z0))) throw input_error("z0 must lie in Z");
  if (!a.pure_vertices() || !z.pure_vertices())
    throw input_error("endpoint pinning expects vertex terminals");
  Dist dxz = g.dist(x, z0);
  if (dxz.is_inf()) {
    // Different components: the empty set separates.
    MengerOutcome out;
    out.mode = MengerMode::Primary;
    Separator sep;
    sep.center = Locus::vertex(x);
    sep.radius = 0;
    sep.ball = Region();
    sep.diameter = Dist::zero();
    sep.verified = separates(g, sep.ball, a, z);
    out.separator = std::move(sep);
    return out;
  }
  // Extended graph: arcs longer than d(x, z0) hang off every other terminal
  // vertex, so the shortest A'-Z' route runs from x to z0.
  Rat arc_len = dxz.value() + 1;
  MetricGraph::Builder b;
  for (VertexId v = 0; v < g.vertex_count(); ++v) b.add_vertex(g.vertex_name(v));
  for (const auto& e : g.edges())
    b.add_edge(g.vertex_name(e.u), g.vertex_name(e.v), e.len);
  std::vector<std::string> a_tips, z_tips;
  for (VertexId v : a.vertices())
    if (v != x) {
      std::string tip = "~pin.a." + g.vertex_name(v);
      b.add_edge(g.vertex_name(v), tip, arc_len);
      a_tips.push_back(tip);
    }
  for (VertexId v : z.vertices())
    if (v != z0) {
      std::string tip = "~pin.z." + g.vertex_name(v);
      b.add_edge(g.vertex_name(v), tip, arc_len);
      z_tips.push_back(tip);
    }
  MetricGraph gx = b.build();
  Region a2 = Region::of_vertex(gx.vertex(g.vertex_name(x)));
  Region z2 = Region::of_vertex(gx.vertex(g.vertex_name(z0)));
  for (const auto& tip : a_tips) a2.add_vertex(gx, gx.vertex(tip));
  for (const auto& tip : z_tips) z2.add_vertex(gx, gx.vertex(tip));

  // The primary construction keeps gamma(0) = x and gamma(len) = z0 among
  // the four endpoints.
  MengerOutcome inner = menger2(gx, a2, z2, k, MengerMode::Primary);
  MengerOutcome out;
  out.mode = MengerMode::Primary;
  out.ledger = inner.ledger;
  auto to_g_locus = [&](const Locus& l) -> Locus {
    if (l.is_vertex()) {
      VertexId v = g.find_vertex(gx.vertex_name(l.v));
      if (v < 0) throw internal_error("locus on an attached arc");
      return Locus::vertex(v);
    }
    const auto& rec = gx.edge(l.e);
    VertexId u = g.find_vertex(gx.vertex_name(rec.u));
    VertexId v = g.find_vertex(gx.vertex_name(rec.v));
    if (u < 0 || v < 0) throw internal_error("locus on an attached arc");
    EdgeId e = g.edge_between(u, v);
    return make_locus(g, e, l.offset);
  };
  if (inner.separator) {
    // Project arc pieces onto their attachment vertices.
    const Separator& s = *inner.separator;
    Region projected;
    auto attach_of = [&](const std::string& name) -> VertexId {
      auto dot = name.rfind('.');
      return g.vertex(name.substr(dot + 1));
    };
    for (VertexId v : s.ball.vertices()) {
      std::string name = gx.vertex_name(v);
      if (name.rfind("~pin.", 0) == 0)
        projected.add_vertex(g, attach_of(name));
      else
        projected.add_vertex(g, g.vertex(name));
    }
    for (const auto& [e, list] : s.ball.segments()) {
      const auto& rec = gx.edge(e);
      std::string nu = gx.vertex_name(rec.u), nv = gx.vertex_name(rec.v);
      bool arc = nu.rfind("~pin.", 0) == 0 || nv.rfind("~pin.", 0) == 0;
      if (arc) {
        std::string base_name = nu.rfind("~pin.", 0) == 0 ? nv : nu;
        projected.add_vertex(g, g.vertex(base_name));
        continue;
      }
      for (const auto& seg : list)
        projected.add_segment(g, g.edge_between(g.vertex(nu), g.vertex(nv)), seg.lo,
                              seg.hi);
    }
    Separator sep;
    sep.center = projected.empty() ? Locus::vertex(x) : projected.any_point(g);
    sep.radius = k / 2;
    sep.ball = projected;
    sep.diameter = region_diameter(g, projected);
    bool ok = separates(g, projected, a, z) && sep.diameter <= k;
    if (!ok) throw internal_error("projected separator failed verification");
    sep.verified = true;
    out.separator = std::move(sep);
    return out;
  }
  // Strip arc prefixes/suffixes and translate back.
  auto strip = [&](const Route& r) {
    Rat lo = 0, hi = r.length();
    // Leading steps on arc edges end at the attachment vertex.
    const auto& steps = r.steps();
    Rat acc = 0;
    for (const auto& st : steps) {
      const auto& rec = gx.edge(st.e);
      bool arc = gx.vertex_name(rec.u).rfind("~pin.", 0) == 0 ||
                 gx.vertex_name(rec.v).rfind("~pin.", 0) == 0;
      if (!arc) break;
      acc += abs(st.to - st.from);
    }
    lo = acc;
    acc = r.length();
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      const auto& rec = gx.edge(it->e);
      bool arc = gx.vertex_name(rec.u).rfind("~pin.", 0) == 0 ||
                 gx.vertex_name(rec.v).rfind("~pin.", 0) == 0;
      if (!arc) break;
      acc -= abs(it->to - it->from);
    }
    hi = acc;
    Route cut = r.sub_route(gx, lo, hi);
    Route out_r = Route::trivial(to_g_locus(cut.first()));
    out_r.set_walk_flag(cut.walk_flag());
    for (const auto& st : cut.steps()) {
      const auto& rec = gx.edge(st.e);
      EdgeId e = g.edge_between(g.vertex(gx.vertex_name(rec.u)),
                                g.vertex(gx.vertex_name(rec.v)));
      out_r.push_step(g, e, st.from, st.to);
    }
    return out_r;
  };
  PathPair pair;
  pair.alpha1 = strip(inner.paths->alpha1);
  pair.alpha2 = strip(inner.paths->alpha2);
  pair.required = inner.paths->required;
  pair.separation =
      region_distance(g, pair.alpha1.as_region(g), pair.alpha2.as_region(g));
  if (!(pair.separation >= pair.required))
    throw internal_error("stripped paths lost their separation");
  std::vector<Locus> ends{pair.alpha1.first(), pair.alpha1.last(),
                          pair.alpha2.first(), pair.alpha2.last()};
  bool has_x = false, has_z0 = false;
  for (const auto& l : ends) {
    if (l == Locus::vertex(x)) has_x = true;
    if (l == Locus::vertex(z0)) has_z0 = true;
  }
  if (!has_x || !has_z0)
    throw internal_error("pinned endpoints missing from the path pair");
  bool terminals_ok =
      a.contains(g, pair.alpha1.first()) && z.contains(g, pair.alpha1.last()) &&
      a.contains(g, pair.alpha2.first()) && z.contains(g, pair.alpha2.last());
  if (!terminals_ok) throw internal_error("stripped paths miss the terminals");
  pair.verified = true;
  out.paths = std::move(pair);
  return out;
}

BoundaryReport menger2_to_boundary(const MetricGraph& g, const Region& a, const Rat& k,
                                   const std::vector<Rat>& radii, MengerMode mode) {
  BoundaryReport report;
  for (const Rat& r : radii) {
    Region sphere = distance_sphere(g, a, r);
    if (sphere.empty())
      throw input_error("radius " + rat_str(r) + " is beyond the reach of A");
    report.outcomes.push_back({r, menger2(g, a, sphere, k, mode)});
  }
  if (!report.outcomes.empty()) {
    bool last_kind = report.outcomes.back().second.is_separator();
    report.stabilized = true;
    for (const auto& [r, o] : report.outcomes)
      if (o.is_separator() != last_kind) report.stabilized = false;
    for (size_t i = 0; i < report.outcomes.size(); ++i) {
      if (i) report.summary += ",";
      report.summary += report.outcomes[i].second.is_separator() ? "separator" : "paths";
    }
  }
  return report;
}

}  // namespace coarse
