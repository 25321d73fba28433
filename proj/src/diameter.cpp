#include "coarse/metric_ops.hpp"

namespace coarse {

namespace {

// Constraint alpha*t + beta*s + gamma*lambda + delta >= 0.
struct Row {
  Rat alpha, beta, gamma, delta;
};

Rat det3(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& e,
         const Rat& f, const Rat& g, const Rat& h, const Rat& i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// Maximize lambda over the polytope given by rows (which must include, for
// boundedness, at least one row with gamma < 0 and box rows on t and s).
// Optimum sits at an intersection of three active constraints.
Rat lp_max_lambda(const std::vector<Row>& rows) {
  bool found = false;
  Rat best;
  size_t m = rows.size();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      for (size_t k = j + 1; k < m; ++k) {
        const Row &A = rows[i], &B = rows[j], &C = rows[k];
        Rat D = det3(A.alpha, A.beta, A.gamma, B.alpha, B.beta, B.gamma, C.alpha,
                     C.beta, C.gamma);
        if (D == 0) continue;
        // Solve equalities: alpha t + beta s + gamma l = -delta.
        Rat t = det3(-A.delta, A.beta, A.gamma, -B.delta, B.beta, B.gamma, -C.delta,
                     C.beta, C.gamma) / D;
        Rat s = det3(A.alpha, -A.delta, A.gamma, B.alpha, -B.delta, B.gamma, C.alpha,
                     -C.delta, C.gamma) / D;
        Rat l = det3(A.alpha, A.beta, -A.delta, B.alpha, B.beta, -B.delta, C.alpha,
                     C.beta, -C.delta) / D;
        bool ok = true;
        for (const Row& r : rows)
          if (r.alpha * t + r.beta * s + r.gamma * l + r.delta < 0) {
            ok = false;
            break;
          }
        if (!ok) continue;
        if (!found || l > best) {
          found = true;
          best = l;
        }
      }
  if (!found) throw internal_error("diameter LP found no feasible vertex");
  return best;
}

// max over t in [0,L] of min(A + t, B + L - t); either of A, B may be inf.
Dist max_point_to_edge(const Dist& A, const Dist& B, const Rat& L) {
  if (A.is_inf() && B.is_inf()) return Dist::infinity();
  if (A.is_inf()) return B + L;
  if (B.is_inf()) return A + L;
  const Rat &a = A.value(), &b = B.value();
  if (a + L <= b) return Dist::of(a + L);
  if (b + L <= a) return Dist::of(b + L);
  return Dist::of((a + b + L) / 2);
}

}  // namespace

namespace {

// On unit graphs with whole-edge regions the farthest pair sits on the
// half-integer grid (the balance points of the piecewise-linear distance),
// so a nine-point evaluation per edge pair is exact.
Dist unit_region_diameter(const MetricGraph& g, const Region& r) {
  std::vector<VertexId> verts = r.vertices();
  std::vector<EdgeId> edges;
  for (const auto& [e, list] : r.segments())
    if (!list.empty()) edges.push_back(e);
  Dist best = Dist::zero();
  for (size_t i = 0; i < verts.size(); ++i) {
    const auto& d = g.dist_from(verts[i]);
    for (size_t j = i + 1; j < verts.size(); ++j) {
      best = dist_max(best, d[verts[j]]);
      if (best.is_inf()) return best;
    }
  }
  const Rat half = rat(1, 2);
  auto point_edge = [&](const std::vector<Dist>& d, EdgeId e) {
    const auto& rec = g.edge(e);
    Dist out = Dist::zero();
    for (const Rat& t : {Rat(0), half, Rat(1)}) {
      Dist via_u = d[rec.u] + t;
      Dist via_v = d[rec.v] + Rat(1 - t);
      out = dist_max(out, dist_min(via_u, via_v));
    }
    return out;
  };
  for (VertexId v : verts) {
    const auto& d = g.dist_from(v);
    for (EdgeId e : edges) {
      best = dist_max(best, point_edge(d, e));
      if (best.is_inf()) return best;
    }
  }
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto& e1 = g.edge(edges[i]);
    const auto& du = g.dist_from(e1.u);
    const auto& dv = g.dist_from(e1.v);
    for (size_t j = i; j < edges.size(); ++j) {
      const auto& e2 = g.edge(edges[j]);
      for (const Rat& t : {Rat(0), half, Rat(1)})
        for (const Rat& s : {Rat(0), half, Rat(1)}) {
          Dist val;
          if (i == j) {
            if (t > s) continue;
            val = Dist::of(Rat(s - t));
            Dist d_uv = du[e1.v];
            if (!d_uv.is_inf()) {
              val = dist_min(val, Dist::of(Rat(t + d_uv.value() + 1 - s)));
              val = dist_min(val, Dist::of(Rat(1 - t + d_uv.value() + s)));
            }
          } else {
            val = Dist::infinity();
            val = dist_min(val, du[e2.u] + Rat(t + s));
            val = dist_min(val, du[e2.v] + Rat(t + 1 - s));
            val = dist_min(val, dv[e2.u] + Rat(1 - t + s));
            val = dist_min(val, dv[e2.v] + Rat(2 - t - s));
          }
          best = dist_max(best, val);
          if (best.is_inf()) return best;
        }
    }
  }
  return best;
}

bool unit_whole_edges(const MetricGraph& g, const Region& r) {
  if (!g.unit_lengths()) return false;
  for (const auto& [e, list] : r.segments())
    for (const auto& seg : list)
      if (!(seg.lo == 0 && seg.hi == g.edge(e).len)) return false;
  return true;
}

}  // namespace

Dist region_diameter(const MetricGraph& g, const Region& r) {
  if (r.empty()) return Dist::zero();
  if (unit_whole_edges(g, r)) return unit_region_diameter(g, r);
  Refinement ref(g, r.cut_loci(g));
  const MetricGraph& rg = ref.graph();
  Region rr = ref.to_refined(r);
  std::vector<VertexId> verts = rr.vertices();
  std::vector<EdgeId> edges;
  for (const auto& [e, list] : rr.segments())
    for (const auto& seg : list)
      if (seg.lo == 0 && seg.hi == rg.edge(e).len) edges.push_back(e);

  Dist best = Dist::zero();
  // vertex - vertex
  for (size_t i = 0; i < verts.size(); ++i) {
    const auto& d = rg.dist_from(verts[i]);
    for (size_t j = i + 1; j < verts.size(); ++j) {
      best = dist_max(best, d[verts[j]]);
      if (best.is_inf()) return best;
    }
    // vertex - edge
    for (EdgeId e : edges) {
      const auto& rec = rg.edge(e);
      best = dist_max(best, max_point_to_edge(d[rec.u], d[rec.v], rec.len));
      if (best.is_inf()) return best;
    }
  }
  // edge - edge
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto& e1 = rg.edge(edges[i]);
    for (size_t j = i; j < edges.size(); ++j) {
      const auto& e2 = rg.edge(edges[j]);
      std::vector<Row> rows;
      // Box constraints.
      rows.push_back({Rat(1), Rat(0), Rat(0), Rat(0)});            // t >= 0
      rows.push_back({Rat(-1), Rat(0), Rat(0), e1.len});           // t <= L1
      rows.push_back({Rat(0), Rat(1), Rat(0), Rat(0)});            // s >= 0
      rows.push_back({Rat(0), Rat(-1), Rat(0), e2.len});           // s <= L2
      bool any_piece = false;
      auto piece = [&](const Rat& c, int at, int bs) {
        rows.push_back({Rat(at), Rat(bs), Rat(-1), c});
        any_piece = true;
      };
      if (i == j) {
        // Two points on one edge, t <= s; direct piece s - t plus routes
        // around through the endpoints.
        rows.push_back({Rat(-1), Rat(1), Rat(0), Rat(0)});  // t <= s
        piece(Rat(0), -1, 1);                               // s - t
        Dist D = rg.dist(e1.u, e1.v);
        if (!D.is_inf()) {
          piece(D.value() + e1.len, 1, -1);   // t + D + (L - s)
          piece(D.value() + e1.len, -1, 1);   // (L - t) + D + s
        }
      } else {
        auto add = [&](VertexId x, VertexId y, bool flip_t, bool flip_s) {
          Dist D = rg.dist(x, y);
          if (D.is_inf()) return;
          Rat c = D.value() + (flip_t ? e1.len : Rat(0)) + (flip_s ? e2.len : Rat(0));
          piece(c, flip_t ? -1 : 1, flip_s ? -1 : 1);
        };
        add(e1.u, e2.u, false, false);
        add(e1.u, e2.v, false, true);
        add(e1.v, e2.u, true, false);
        add(e1.v, e2.v, true, true);
      }
      if (!any_piece) return Dist::infinity();
      best = dist_max(best, Dist::of(lp_max_lambda(rows)));
    }
  }
  return best;
}

}  // namespace coarse
