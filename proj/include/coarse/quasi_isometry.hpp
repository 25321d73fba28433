#pragma once

#include "coarse/metric_ops.hpp"

namespace coarse {

// Verified map between two graphs' vertex sets. Condition 1 is the two-sided
// distance distortion bound, condition 2 the density of the image.
struct QICertificate {
  std::vector<VertexId> map;  // size = |V(domain)|
  Rat m;                      // multiplicative constant, >= 1
  Rat a;                      // additive constant, >= 0
  bool density_checked = true;
  bool verdict = false;
  // Worst violation witness when verdict is false.
  enum class Fail { None, LowerBound, UpperBound, Density } fail = Fail::None;
  VertexId x = -1, y = -1;  // offending pair (or target vertex for density)
  std::string describe(const MetricGraph& g, const MetricGraph& h) const;
};

// Exhaustively checks both conditions over all vertex pairs of g and all
// vertices of h. check_density=false verifies only the distortion
// condition (a map of bounded distortion rather than a full quasi-isometry).
// threads = 0 uses the process-wide default (1 unless set_verify_threads).
QICertificate verify_quasi_isometry(const MetricGraph& g, const MetricGraph& h,
                                    const std::vector<VertexId>& map, const Rat& m,
                                    const Rat& a, bool check_density = true,
                                    int threads = 0);

// Worker count for exhaustive certificate verification; results are
// identical for every setting.
void set_verify_threads(int threads);
int verify_threads();

struct NetResult {
  MetricGraph net;             // unit-length edges between close net points
  std::vector<Locus> points;   // net point carried by each net vertex
  std::vector<VertexId> nearest;  // g-vertex -> net vertex (nearest, least id)
};
// Greedy eps-net over vertices in id order, then edge-interior candidates at
// eps/2 spacing; edges join net points at distance < 3*eps.
NetResult net_graph(const MetricGraph& g, const Rat& eps);

struct AttachResult {
  MetricGraph extended;          // h plus a star at every h-vertex
  std::vector<VertexId> map;     // g-vertex -> distinct leaf
  QICertificate certificate;     // (m + 3*ceil(a), 0), distortion-only
};
// Moves the images of a verified (m, a) quasi-isometry onto star leaves so
// the distortion becomes purely multiplicative.
AttachResult attach_stars(const MetricGraph& g, const MetricGraph& h,
                          const QICertificate& qi, int x_size);

}  // namespace coarse
