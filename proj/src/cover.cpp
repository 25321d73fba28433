#include "coarse/cover.hpp"

namespace coarse {

std::string CoverCheck::describe() const {
  switch (fail) {
    case Fail::None:
      return "cover verified";
    case Fail::BadColor:
      return "piece " + std::to_string(piece_a) + " has an out-of-range color";
    case Fail::CloseSameColor:
      return "pieces " + std::to_string(piece_a) + " and " + std::to_string(piece_b) +
             " share a color at distance " + observed.str();
    case Fail::Oversized:
      return "piece " + std::to_string(piece_a) + " has diameter " + observed.str();
    case Fail::Uncovered:
      return "target point not covered";
  }
  return "";
}

CoverCheck verify_cover(const MetricGraph& g, const Region& target,
                        const ColoredCover& cover, int n, const Rat& s,
                        const Rat& d_bound) {
  if (n < 0) throw input_error("n must be nonnegative");
  if (s <= 0) throw input_error("separation must be positive");
  CoverCheck out;
  for (size_t i = 0; i < cover.pieces.size(); ++i) {
    int c = cover.pieces[i].second;
    if (c < 1 || c > n + 1) {
      out.fail = CoverCheck::Fail::BadColor;
      out.piece_a = static_cast<int>(i);
      return out;
    }
  }
  for (size_t i = 0; i < cover.pieces.size(); ++i) {
    Dist diam = region_diameter(g, cover.pieces[i].first);
    if (!(diam < d_bound)) {
      out.fail = CoverCheck::Fail::Oversized;
      out.piece_a = static_cast<int>(i);
      out.observed = diam;
      return out;
    }
  }
  for (size_t i = 0; i < cover.pieces.size(); ++i)
    for (size_t j = i + 1; j < cover.pieces.size(); ++j) {
      if (cover.pieces[i].second != cover.pieces[j].second) continue;
      Dist d = region_distance(g, cover.pieces[i].first, cover.pieces[j].first);
      if (d < s) {
        out.fail = CoverCheck::Fail::CloseSameColor;
        out.piece_a = static_cast<int>(i);
        out.piece_b = static_cast<int>(j);
        out.observed = d;
        return out;
      }
    }
  // Coverage: refine at every cut point so pieces are vertex/whole-edge
  // granular, then check each target element is inside some piece.
  std::vector<Locus> cuts = target.cut_loci(g);
  for (const auto& [reg, c] : cover.pieces) {
    auto extra = reg.cut_loci(g);
    cuts.insert(cuts.end(), extra.begin(), extra.end());
  }
  Refinement ref(g, cuts);
  const MetricGraph& rg = ref.graph();
  Region rt = ref.to_refined(target);
  std::vector<Region> rp;
  rp.reserve(cover.pieces.size());
  for (const auto& [reg, c] : cover.pieces) rp.push_back(ref.to_refined(reg));
  for (VertexId v : rt.vertices()) {
    bool hit = false;
    for (const auto& p : rp)
      if (p.contains_vertex(v)) {
        hit = true;
        break;
      }
    if (!hit) {
      out.fail = CoverCheck::Fail::Uncovered;
      out.uncovered_at = ref.to_original(Locus::vertex(v));
      return out;
    }
  }
  for (const auto& [e, list] : rt.segments())
    for (const auto& seg : list) {
      if (!(seg.lo == 0 && seg.hi == rg.edge(e).len)) continue;
      bool hit = false;
      for (const auto& p : rp) {
        auto it = p.segments().find(e);
        if (it == p.segments().end()) continue;
        for (const auto& ps : it->second)
          if (ps.lo == 0 && ps.hi == rg.edge(e).len) {
            hit = true;
            break;
          }
        if (hit) break;
      }
      if (!hit) {
        out.fail = CoverCheck::Fail::Uncovered;
        out.uncovered_at = ref.to_original(make_locus(rg, e, rg.edge(e).len / 2));
        return out;
      }
    }
  out.ok = true;
  return out;
}

}  // namespace coarse
