#include "coarse/region.hpp"

#include <algorithm>

namespace coarse {

Locus make_locus(const MetricGraph& g, EdgeId e, const Rat& offset) {
  const auto& rec = g.edge(e);
  if (offset < 0 || offset > rec.len) throw input_error("locus offset out of range");
  if (offset == 0) return Locus::vertex(rec.u);
  if (offset == rec.len) return Locus::vertex(rec.v);
  Locus l;
  l.e = e;
  l.offset = offset;
  return l;
}

std::string locus_str(const MetricGraph& g, const Locus& l) {
  if (l.is_vertex()) return g.vertex_name(l.v);
  const auto& e = g.edge(l.e);
  return g.vertex_name(e.u) + "--" + g.vertex_name(e.v) + "@" + rat_str(l.offset);
}

Dist locus_distance(const MetricGraph& g, const Locus& a, const Locus& b) {
  if (a == b) return Dist::zero();
  if (a.is_vertex() && b.is_vertex()) return g.dist(a.v, b.v);
  // Distances from an interior point split over the two endpoints.
  auto ends = [&](const Locus& l) {
    std::vector<std::pair<VertexId, Rat>> out;
    if (l.is_vertex()) {
      out.push_back({l.v, Rat(0)});
    } else {
      const auto& e = g.edge(l.e);
      out.push_back({e.u, l.offset});
      out.push_back({e.v, e.len - l.offset});
    }
    return out;
  };
  Dist best = Dist::infinity();
  if (!a.is_vertex() && !b.is_vertex() && a.e == b.e)
    best = Dist::of(abs(a.offset - b.offset));
  for (const auto& [pa, ca] : ends(a))
    for (const auto& [pb, cb] : ends(b)) {
      Dist via = g.dist(pa, pb) + ca + cb;
      best = dist_min(best, via);
    }
  return best;
}

Region Region::of_vertex(VertexId v) {
  Region r;
  r.verts_.push_back(v);
  return r;
}

Region Region::of_vertices(const std::vector<VertexId>& vs) {
  Region r;
  r.verts_ = vs;
  std::sort(r.verts_.begin(), r.verts_.end());
  r.verts_.erase(std::unique(r.verts_.begin(), r.verts_.end()), r.verts_.end());
  return r;
}

Region Region::of_locus(const MetricGraph& g, const Locus& l) {
  Region r;
  r.add_locus(g, l);
  return r;
}

void Region::add_vertex(const MetricGraph&, VertexId v) {
  auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
  if (it == verts_.end() || *it != v) verts_.insert(it, v);
}

void Region::add_locus(const MetricGraph& g, const Locus& l) {
  if (l.is_vertex())
    add_vertex(g, l.v);
  else
    add_segment(g, l.e, l.offset, l.offset);
}

void Region::add_whole_edge(const MetricGraph& g, EdgeId e) {
  add_segment(g, e, Rat(0), g.edge(e).len);
}

void Region::add_segment(const MetricGraph& g, EdgeId e, Rat lo, Rat hi) {
  if (lo > hi) std::swap(lo, hi);
  const auto& rec = g.edge(e);
  if (lo < 0 || hi > rec.len) throw input_error("segment out of edge range");
  if (lo == 0) add_vertex(g, rec.u);
  if (hi == rec.len) add_vertex(g, rec.v);
  if (lo == hi && (lo == 0 || hi == rec.len)) return;  // endpoint only
  auto& list = segs_[e];
  Seg s{std::move(lo), std::move(hi)};
  // Merge any segment that touches or overlaps [lo, hi] (closed sets).
  std::vector<Seg> merged;
  bool placed = false;
  for (auto& old : list) {
    if (old.hi < s.lo || old.lo > s.hi) {
      if (old.lo > s.hi && !placed) {
        merged.push_back(s);
        placed = true;
      }
      merged.push_back(old);
    } else {
      s.lo = std::min(s.lo, old.lo);
      s.hi = std::max(s.hi, old.hi);
    }
  }
  if (!placed) merged.push_back(s);
  std::sort(merged.begin(), merged.end(),
            [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
  list = std::move(merged);
}

void Region::unite(const MetricGraph& g, const Region& other) {
  for (VertexId v : other.verts_) add_vertex(g, v);
  for (const auto& [e, list] : other.segs_)
    for (const auto& s : list) add_segment(g, e, s.lo, s.hi);
}

bool Region::contains_vertex(VertexId v) const {
  return std::binary_search(verts_.begin(), verts_.end(), v);
}

bool Region::contains(const MetricGraph& g, const Locus& l) const {
  if (l.is_vertex()) {
    if (contains_vertex(l.v)) return true;
    // A segment reaching the vertex offset also contains it; canonicalization
    // already adds the vertex in that case, so nothing more to check.
    return false;
  }
  auto it = segs_.find(l.e);
  if (it == segs_.end()) return false;
  for (const auto& s : it->second)
    if (s.lo <= l.offset && l.offset <= s.hi) return true;
  return false;
}

bool Region::intersects(const MetricGraph& g, const Region& other) const {
  // vertex-vertex
  {
    auto a = verts_.begin();
    auto b = other.verts_.begin();
    while (a != verts_.end() && b != other.verts_.end()) {
      if (*a == *b) return true;
      if (*a < *b)
        ++a;
      else
        ++b;
    }
  }
  // vertex-in-segment (either direction)
  auto vertex_in_segs = [&](const std::vector<VertexId>& vs,
                            const std::map<EdgeId, std::vector<Seg>>& segs) {
    for (const auto& [e, list] : segs) {
      const auto& rec = g.edge(e);
      for (const auto& s : list) {
        if (s.lo == 0 && std::binary_search(vs.begin(), vs.end(), rec.u)) return true;
        if (s.hi == rec.len && std::binary_search(vs.begin(), vs.end(), rec.v)) return true;
      }
    }
    return false;
  };
  if (vertex_in_segs(verts_, other.segs_)) return true;
  if (vertex_in_segs(other.verts_, segs_)) return true;
  // segment-segment
  for (const auto& [e, list] : segs_) {
    auto it = other.segs_.find(e);
    if (it == other.segs_.end()) continue;
    for (const auto& sa : list)
      for (const auto& sb : it->second)
        if (!(sa.hi < sb.lo || sb.hi < sa.lo)) return true;
  }
  return false;
}

Region Region::intersection(const MetricGraph& g, const Region& other) const {
  Region out;
  for (VertexId v : verts_)
    if (other.contains(g, Locus::vertex(v))) out.add_vertex(g, v);
  for (VertexId v : other.verts_)
    if (contains(g, Locus::vertex(v))) out.add_vertex(g, v);
  for (const auto& [e, list] : segs_) {
    auto it = other.segs_.find(e);
    if (it == other.segs_.end()) continue;
    for (const auto& sa : list)
      for (const auto& sb : it->second) {
        Rat lo = std::max(sa.lo, sb.lo);
        Rat hi = std::min(sa.hi, sb.hi);
        if (lo <= hi) out.add_segment(g, e, lo, hi);
      }
  }
  return out;
}

bool Region::has_positive_length() const {
  for (const auto& [e, list] : segs_)
    for (const auto& s : list)
      if (s.lo < s.hi) return true;
  return false;
}

bool Region::is_single_point(const MetricGraph& g, const Locus& l) const {
  if (empty()) return false;
  if (has_positive_length()) return false;
  // Only degenerate segments and vertices remain.
  std::vector<Locus> pts;
  for (VertexId v : verts_) pts.push_back(Locus::vertex(v));
  for (const auto& [e, list] : segs_)
    for (const auto& s : list) pts.push_back(make_locus(g, e, s.lo));
  for (const auto& p : pts)
    if (!(p == l)) return false;
  return true;
}

std::vector<Locus> Region::cut_loci(const MetricGraph& g) const {
  std::vector<Locus> out;
  for (const auto& [e, list] : segs_)
    for (const auto& s : list) {
      Locus a = make_locus(g, e, s.lo);
      Locus b = make_locus(g, e, s.hi);
      if (!a.is_vertex()) out.push_back(a);
      if (!b.is_vertex() && !(b == a)) out.push_back(b);
    }
  return out;
}

Locus Region::any_point(const MetricGraph& g) const {
  if (!verts_.empty()) return Locus::vertex(verts_.front());
  for (const auto& [e, list] : segs_)
    if (!list.empty()) return make_locus(g, e, list.front().lo);
  throw input_error("empty region has no point");
}

bool operator==(const Region& a, const Region& b) {
  if (a.verts_ != b.verts_) return false;
  if (a.segs_.size() != b.segs_.size()) return false;
  for (const auto& [e, list] : a.segs_) {
    auto it = b.segs_.find(e);
    if (it == b.segs_.end() || it->second.size() != list.size()) return false;
    for (size_t i = 0; i < list.size(); ++i)
      if (list[i].lo != it->second[i].lo || list[i].hi != it->second[i].hi) return false;
  }
  return true;
}

}  // namespace coarse
