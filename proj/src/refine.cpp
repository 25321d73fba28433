#include "coarse/refine.hpp"

#include <algorithm>

namespace coarse {

Refinement::Refinement(const MetricGraph& g, const std::vector<Locus>& cuts)
    : orig_(&g) {
  int n = g.vertex_count();
  cuts_.assign(g.edge_count(), {});
  std::vector<std::pair<EdgeId, Rat>> interior;
  for (const auto& l : cuts) {
    if (l.is_vertex()) continue;
    interior.push_back({l.e, l.offset});
  }
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());

  std::vector<std::string> names;
  names.reserve(n + interior.size());
  for (int v = 0; v < n; ++v) names.push_back(g.vertex_name(v));
  for (const auto& [e, off] : interior) {
    VertexId id = static_cast<VertexId>(names.size());
    names.push_back("~r" + std::to_string(id - n));
    cuts_[e].push_back({off, id});
    Locus l;
    l.e = e;
    l.offset = off;
    new_vertex_orig_.push_back(l);
  }

  std::vector<EdgeRec> edges;
  edges_of_.assign(g.edge_count(), {});
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    Rat prev_off = 0;
    VertexId prev_v = rec.u;
    auto emit = [&](const Rat& off, VertexId v) {
      SubEdge s{e, prev_off, off, false};
      VertexId a = prev_v, b = v;
      if (a > b) {
        std::swap(a, b);
        s.flipped = true;
      }
      EdgeId id = static_cast<EdgeId>(edges.size());
      edges.push_back({a, b, s.hi - s.lo});
      sub_.push_back(s);
      edges_of_[e].push_back(id);
      prev_off = off;
      prev_v = v;
    };
    for (const auto& [off, vid] : cuts_[e]) emit(off, vid);
    emit(rec.len, rec.v);
  }
  refined_ = MetricGraph::raw(std::move(names), std::move(edges));
}

VertexId Refinement::vertex_of(const Locus& orig) const {
  if (orig.is_vertex()) return orig.v;
  const auto& list = cuts_[orig.e];
  for (const auto& [off, vid] : list)
    if (off == orig.offset) return vid;
  return -1;
}

Locus Refinement::to_refined(const Locus& orig) const {
  VertexId v = vertex_of(orig);
  if (v >= 0) return Locus::vertex(v);
  // Interior of some sub-edge.
  for (EdgeId id : edges_of_[orig.e]) {
    const SubEdge& s = sub_[id];
    if (orig.offset >= s.lo && orig.offset <= s.hi) {
      Rat off = s.flipped ? Rat(s.hi - orig.offset) : Rat(orig.offset - s.lo);
      return make_locus(refined_, id, off);
    }
  }
  throw internal_error("refine: locus not covered by sub-edges");
}

Locus Refinement::to_original(const Locus& refined) const {
  int n = orig_->vertex_count();
  if (refined.is_vertex()) {
    if (refined.v < n) return Locus::vertex(refined.v);
    return new_vertex_orig_[refined.v - n];
  }
  const SubEdge& s = sub_[refined.e];
  Rat off = s.flipped ? Rat(s.hi - refined.offset) : Rat(s.lo + refined.offset);
  return make_locus(*orig_, s.orig_edge, off);
}

Region Refinement::to_refined(const Region& orig) const {
  Region out;
  for (VertexId v : orig.vertices()) out.add_vertex(refined_, v);
  for (const auto& [e, list] : orig.segments())
    for (const auto& seg : list) {
      // Split the original segment at this edge's cut points.
      for (EdgeId id : edges_of_[e]) {
        const SubEdge& s = sub_[id];
        Rat lo = std::max(seg.lo, s.lo), hi = std::min(seg.hi, s.hi);
        if (lo > hi) continue;
        Rat a = s.flipped ? Rat(s.hi - hi) : Rat(lo - s.lo);
        Rat b = s.flipped ? Rat(s.hi - lo) : Rat(hi - s.lo);
        out.add_segment(refined_, id, a, b);
      }
      // Cut vertices inside the segment.
      for (const auto& [off, vid] : cuts_[e])
        if (seg.lo <= off && off <= seg.hi) out.add_vertex(refined_, vid);
    }
  return out;
}

Region Refinement::to_original(const Region& refined) const {
  Region out;
  int n = orig_->vertex_count();
  for (VertexId v : refined.vertices()) {
    if (v < n)
      out.add_vertex(*orig_, v);
    else
      out.add_locus(*orig_, new_vertex_orig_[v - n]);
  }
  for (const auto& [e, list] : refined.segments()) {
    const SubEdge& s = sub_[e];
    for (const auto& seg : list) {
      Rat a = s.flipped ? Rat(s.hi - seg.hi) : Rat(s.lo + seg.lo);
      Rat b = s.flipped ? Rat(s.hi - seg.lo) : Rat(s.lo + seg.hi);
      out.add_segment(*orig_, s.orig_edge, a, b);
    }
  }
  return out;
}

Route Refinement::to_refined(const Route& orig) const {
  Route out = Route::trivial(to_refined(orig.first()));
  out.set_walk_flag(orig.walk_flag());
  for (const auto& st : orig.steps()) {
    // Split the traversal at this edge's cut offsets.
    Rat lo = std::min(st.from, st.to), hi = std::max(st.from, st.to);
    std::vector<Rat> marks;
    marks.push_back(st.from);
    if (st.to > st.from) {
      for (const auto& [off, vid] : cuts_[st.e])
        if (off > lo && off < hi) marks.push_back(off);
    } else {
      for (auto it = cuts_[st.e].rbegin(); it != cuts_[st.e].rend(); ++it)
        if (it->first > lo && it->first < hi) marks.push_back(it->first);
    }
    marks.push_back(st.to);
    for (size_t i = 0; i + 1 < marks.size(); ++i) {
      // Each span lies within one sub-edge.
      Rat a = marks[i], b = marks[i + 1];
      Rat mid = (a + b) / 2;
      for (EdgeId id : edges_of_[st.e]) {
        const SubEdge& s = sub_[id];
        if (mid >= s.lo && mid <= s.hi) {
          Rat ra = s.flipped ? Rat(s.hi - a) : Rat(a - s.lo);
          Rat rb = s.flipped ? Rat(s.hi - b) : Rat(b - s.lo);
          out.push_step(refined_, id, ra, rb);
          break;
        }
      }
    }
  }
  return out;
}

Route Refinement::to_original(const Route& refined) const {
  Route out = Route::trivial(to_original(refined.first()));
  out.set_walk_flag(refined.walk_flag());
  for (const auto& st : refined.steps()) {
    const SubEdge& s = sub_[st.e];
    Rat a = s.flipped ? Rat(s.hi - st.from) : Rat(s.lo + st.from);
    Rat b = s.flipped ? Rat(s.hi - st.to) : Rat(s.lo + st.to);
    out.push_step(*orig_, s.orig_edge, a, b);
  }
  return out;
}

}  // namespace coarse
