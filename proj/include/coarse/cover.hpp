#pragma once

#include "coarse/metric_ops.hpp"

namespace coarse {

// Cover of a target region by colored regions; colors run 1..n+1.
struct ColoredCover {
  std::vector<std::pair<Region, int>> pieces;
};

struct CoverCheck {
  bool ok = false;
  enum class Fail { None, BadColor, CloseSameColor, Oversized, Uncovered } fail = Fail::None;
  int piece_a = -1, piece_b = -1;  // offenders (piece indices)
  Dist observed;                   // distance or diameter behind the failure
  Locus uncovered_at;              // witness point for coverage failures
  std::string describe() const;
};

// True iff at most n+1 colors are used, same-colored regions are pairwise
// >= s apart, every region has diameter < d_bound, and the union covers the
// target region.
CoverCheck verify_cover(const MetricGraph& g, const Region& target,
                        const ColoredCover& cover, int n, const Rat& s,
                        const Rat& d_bound);

}  // namespace coarse
