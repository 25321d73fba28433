#include "coarse/route.hpp"

#include <algorithm>
#include <map>

namespace coarse {

Route Route::trivial(const Locus& at) {
  Route r;
  r.first_ = r.last_ = at;
  r.length_ = 0;
  return r;
}

Route Route::from_vertices(const MetricGraph& g, const std::vector<VertexId>& vs) {
  if (vs.empty()) throw input_error("route needs at least one vertex");
  Route r = trivial(Locus::vertex(vs[0]));
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    EdgeId e = g.edge_between(vs[i], vs[i + 1]);
    if (e < 0)
      throw input_error("no edge between " + g.vertex_name(vs[i]) + " and " +
                        g.vertex_name(vs[i + 1]));
    const auto& rec = g.edge(e);
    if (rec.u == vs[i])
      r.push_step(g, e, Rat(0), rec.len);
    else
      r.push_step(g, e, rec.len, Rat(0));
  }
  return r;
}

void Route::push_step(const MetricGraph& g, EdgeId e, Rat from, Rat to) {
  if (from == to) return;
  Locus start = make_locus(g, e, from);
  if (!(start == last_)) throw internal_error("route step does not start at route end");
  length_ += abs(to - from);
  last_ = make_locus(g, e, to);
  // Merge with the previous step when it continues along the same edge in
  // the same direction.
  if (!steps_.empty()) {
    Step& p = steps_.back();
    if (p.e == e && p.to == from) {
      bool dir_prev = p.to > p.from, dir_new = to > from;
      if (dir_prev == dir_new) {
        p.to = to;
        return;
      }
    }
  }
  steps_.push_back({e, std::move(from), std::move(to)});
}

void Route::append(const MetricGraph& g, const Route& tail) {
  if (!(tail.first_ == last_)) throw internal_error("route append mismatch");
  for (const auto& s : tail.steps_) push_step(g, s.e, s.from, s.to);
  walk_ = walk_ || tail.walk_;
}

Locus Route::point_at(const MetricGraph& g, const Rat& t) const {
  if (t < 0 || t > length_) throw input_error("route parameter out of range");
  if (steps_.empty()) return first_;
  Rat acc = 0;
  for (const auto& s : steps_) {
    Rat step_len = abs(s.to - s.from);
    if (t <= acc + step_len) {
      Rat within = t - acc;
      Rat off = s.to > s.from ? Rat(s.from + within) : Rat(s.from - within);
      return make_locus(g, s.e, off);
    }
    acc += step_len;
  }
  return last_;
}

Route Route::sub_route(const MetricGraph& g, const Rat& t0, const Rat& t1) const {
  if (t0 > t1) throw input_error("sub_route with t0 > t1");
  if (t0 < 0 || t1 > length_) throw input_error("sub_route parameter out of range");
  Route out = trivial(point_at(g, t0));
  out.walk_ = walk_;
  Rat acc = 0;
  for (const auto& s : steps_) {
    Rat step_len = abs(s.to - s.from);
    Rat lo = acc, hi = acc + step_len;
    acc = hi;
    if (hi <= t0 || lo >= t1) continue;
    Rat a = std::max(lo, t0) - lo;
    Rat b = std::min(hi, t1) - lo;
    Rat from = s.to > s.from ? Rat(s.from + a) : Rat(s.from - a);
    Rat to = s.to > s.from ? Rat(s.from + b) : Rat(s.from - b);
    out.push_step(g, s.e, from, to);
  }
  return out;
}

Route Route::reversed(const MetricGraph& g) const {
  Route out = trivial(last_);
  out.walk_ = walk_;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it)
    out.push_step(g, it->e, it->to, it->from);
  return out;
}

Region Route::as_region(const MetricGraph& g) const {
  Region r;
  r.add_locus(g, first_);
  for (const auto& s : steps_)
    r.add_segment(g, s.e, std::min(s.from, s.to), std::max(s.from, s.to));
  return r;
}

std::vector<std::pair<Locus, Rat>> Route::junctions(const MetricGraph& g) const {
  std::vector<std::pair<Locus, Rat>> out;
  out.push_back({first_, Rat(0)});
  Rat acc = 0;
  for (const auto& s : steps_) {
    acc += abs(s.to - s.from);
    out.push_back({make_locus(g, s.e, s.to), acc});
  }
  return out;
}

std::optional<Rat> Route::param_of(const MetricGraph& g, const Locus& l) const {
  if (l == first_) return Rat(0);
  Rat acc = 0;
  for (const auto& s : steps_) {
    Rat step_len = abs(s.to - s.from);
    const auto& rec = g.edge(s.e);
    // Offset of l when it lies on this step's edge (vertex or interior).
    std::optional<Rat> off;
    if (l.is_vertex()) {
      if (l.v == rec.u) off = Rat(0);
      if (l.v == rec.v) off = rec.len;
    } else if (l.e == s.e) {
      off = l.offset;
    }
    if (off) {
      Rat lo = std::min(s.from, s.to), hi = std::max(s.from, s.to);
      if (*off >= lo && *off <= hi) {
        Rat within = s.to > s.from ? Rat(*off - s.from) : Rat(s.from - *off);
        return acc + within;
      }
    }
    acc += step_len;
  }
  return std::nullopt;
}

bool Route::is_simple(const MetricGraph& g) const {
  // Junction loci (canonicalized) must be pairwise distinct, and step
  // intervals on a common edge must not overlap in their interiors.
  std::vector<Locus> junc;
  junc.push_back(first_);
  for (const auto& s : steps_) junc.push_back(make_locus(g, s.e, s.to));
  auto sorted = junc;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (size_t i = 0; i < steps_.size(); ++i)
    for (size_t j = i + 1; j < steps_.size(); ++j) {
      if (steps_[i].e != steps_[j].e) continue;
      Rat alo = std::min(steps_[i].from, steps_[i].to);
      Rat ahi = std::max(steps_[i].from, steps_[i].to);
      Rat blo = std::min(steps_[j].from, steps_[j].to);
      Rat bhi = std::max(steps_[j].from, steps_[j].to);
      Rat lo = std::max(alo, blo), hi = std::min(ahi, bhi);
      if (lo < hi) return false;           // positive-length overlap
      if (lo == hi && j != i + 1) return false;  // touching non-consecutively
    }
  return true;
}

Route Route::simplified(const MetricGraph& g) const {
  // First-visit splicing over junction loci.
  Route cur = *this;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<Locus, Rat>> js;
    js.push_back({cur.first_, Rat(0)});
    Rat acc = 0;
    for (const auto& s : cur.steps_) {
      acc += abs(s.to - s.from);
      js.push_back({make_locus(g, s.e, s.to), acc});
    }
    std::map<Locus, size_t> seen;
    for (size_t i = 0; i < js.size(); ++i) {
      const Locus& k = js[i].first;
      auto it = seen.find(k);
      if (it != seen.end() && js[it->second].second < js[i].second) {
        Route head = cur.sub_route(g, Rat(0), js[it->second].second);
        Route tail = cur.sub_route(g, js[i].second, cur.length_);
        head.append(g, tail);
        cur = head;
        changed = true;
        break;
      }
      if (it == seen.end()) seen[k] = i;
    }
  }
  cur.walk_ = !cur.is_simple(g);
  return cur;
}

}  // namespace coarse
