#pragma once

#include "coarse/metric_ops.hpp"

namespace coarse {

enum class FarPathsStatus { Found, None, BudgetExhausted };

struct FarPathsResult {
  FarPathsStatus status = FarPathsStatus::None;
  std::vector<std::vector<VertexId>> paths;  // vertex sequences, A to Z
  unsigned long long nodes = 0;
};

// Exhaustive search for n simple A-Z vertex paths pairwise at distance >= r
// (terminal regions are read vertex-granularly).
// Paths start at their last A-contact and stop at their first Z-contact; the
// final path is located by reachability instead of enumeration. Exact within
// the budget; the n = 2 case is the oracle for the coarse Menger dichotomy.
FarPathsResult far_paths_bruteforce(const MetricGraph& g, const Region& a,
                                    const Region& z, int n, const Rat& r,
                                    unsigned long long budget = 50'000'000ULL);

}  // namespace coarse
