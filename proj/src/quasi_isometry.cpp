#include "coarse/quasi_isometry.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace coarse {

namespace {
std::atomic<int> g_verify_threads{1};
}

void set_verify_threads(int threads) { g_verify_threads = std::max(1, threads); }
int verify_threads() { return g_verify_threads.load(); }

std::string QICertificate::describe(const MetricGraph& g, const MetricGraph& h) const {
  if (verdict) return "verified (" + rat_str(m) + ", " + rat_str(a) + ")";
  switch (fail) {
    case Fail::LowerBound:
      return "lower bound fails at " + g.vertex_name(x) + "," + g.vertex_name(y);
    case Fail::UpperBound:
      return "upper bound fails at " + g.vertex_name(x) + "," + g.vertex_name(y);
    case Fail::Density:
      return "no image within " + rat_str(a) + " of " + h.vertex_name(x);
    default:
      return "unverified";
  }
}

QICertificate verify_quasi_isometry(const MetricGraph& g, const MetricGraph& h,
                                    const std::vector<VertexId>& map, const Rat& m,
                                    const Rat& a, bool check_density, int threads) {
  if (static_cast<int>(map.size()) != g.vertex_count())
    throw input_error("map must be total on the domain's vertices");
  for (VertexId t : map)
    if (t < 0 || t >= h.vertex_count()) throw input_error("map image out of range");
  if (m < 1) throw input_error("multiplicative constant must be >= 1");
  if (a < 0) throw input_error("additive constant must be >= 0");

  QICertificate cert;
  cert.map = map;
  cert.m = m;
  cert.a = a;
  cert.density_checked = check_density;
  cert.verdict = true;

  int n = g.vertex_count();
  if (threads <= 0) threads = verify_threads();
  // Deterministic parallel scan: each worker checks a block of sources and
  // reports the least offending pair; the least pair over workers wins.
  struct Offense {
    bool found = false;
    VertexId x = -1, y = -1;
    QICertificate::Fail kind = QICertificate::Fail::None;
  };
  auto scan = [&](int lo, int hi) {
    Offense off;
    for (int x = lo; x < hi && !off.found; ++x) {
      const auto& dg = g.dist_from(x);
      const auto& dh = h.dist_from(map[x]);
      for (int y = x; y < n; ++y) {
        const Dist& dxy = dg[y];
        const Dist& dfxy = dh[map[y]];
        // Upper: d(fx, fy) <= m*d(x,y) + a. Infinite d(x,y) imposes nothing.
        if (!dxy.is_inf()) {
          if (dfxy.is_inf() || dfxy.value() > m * dxy.value() + a) {
            off = {true, x, y, QICertificate::Fail::UpperBound};
            break;
          }
        }
        // Lower: d(x,y)/m - a <= d(fx, fy).
        if (dxy.is_inf()) {
          if (!dfxy.is_inf()) {
            off = {true, x, y, QICertificate::Fail::LowerBound};
            break;
          }
        } else if (dfxy.value() < dxy.value() / m - a) {
          off = {true, x, y, QICertificate::Fail::LowerBound};
          break;
        }
      }
    }
    return off;
  };
  Offense worst;
  if (threads == 1 || n < 64) {
    worst = scan(0, n);
  } else {
    std::vector<Offense> results(threads);
    std::vector<std::thread> pool;
    int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        results[t] = scan(t * chunk, std::min(n, (t + 1) * chunk));
      });
    for (auto& th : pool) th.join();
    for (const auto& r : results)
      if (r.found) {
        worst = r;
        break;
      }
  }
  if (worst.found) {
    cert.verdict = false;
    cert.fail = worst.kind;
    cert.x = worst.x;
    cert.y = worst.y;
    return cert;
  }

  if (check_density) {
    std::vector<bool> hit(h.vertex_count(), false);
    for (VertexId t : map) hit[t] = true;
    std::vector<VertexId> images;
    for (VertexId v = 0; v < h.vertex_count(); ++v)
      if (hit[v]) images.push_back(v);
    std::vector<Dist> d = multi_source_dist(h, images);
    for (VertexId z = 0; z < h.vertex_count(); ++z)
      if (!(d[z] <= a)) {
        cert.verdict = false;
        cert.fail = QICertificate::Fail::Density;
        cert.x = z;
        return cert;
      }
  }
  return cert;
}

NetResult net_graph(const MetricGraph& g, const Rat& eps) {
  if (eps <= 0) throw input_error("net parameter must be positive");
  NetResult out;
  std::vector<Locus> net;
  auto far_from_net = [&](const Locus& cand) {
    for (const auto& p : net)
      if (locus_distance(g, cand, p) <= eps) return false;
    return true;
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Locus cand = Locus::vertex(v);
    if (far_from_net(cand)) net.push_back(cand);
  }
  // Edge-interior candidates at eps/2 spacing keep long edges covered.
  Rat half = eps / 2;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Rat& len = g.edge(e).len;
    for (Rat off = half; off < len; off += half) {
      Locus cand = make_locus(g, e, off);
      if (!cand.is_vertex() && far_from_net(cand)) net.push_back(cand);
    }
  }
  MetricGraph::Builder b;
  std::vector<std::string> names(net.size());
  for (size_t i = 0; i < net.size(); ++i) {
    names[i] = std::to_string(i);
    b.add_vertex(names[i]);
  }
  for (size_t i = 0; i < net.size(); ++i)
    for (size_t j = i + 1; j < net.size(); ++j)
      if (locus_distance(g, net[i], net[j]) < 3 * eps) b.add_edge(names[i], names[j]);
  out.net = b.build();
  // Builder sorts names numerically, so vertex i of the net graph is net[i].
  out.points = net;
  out.nearest.assign(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Dist best = Dist::infinity();
    for (size_t i = 0; i < net.size(); ++i) {
      Dist d = locus_distance(g, Locus::vertex(v), net[i]);
      if (d < best) {
        best = d;
        out.nearest[v] = static_cast<VertexId>(i);
      }
    }
  }
  return out;
}

AttachResult attach_stars(const MetricGraph& g, const MetricGraph& h,
                          const QICertificate& qi, int x_size) {
  if (!qi.verdict) throw contract_error("attach_stars needs a verified certificate");
  if (x_size < 1) throw input_error("star size must be positive");
  std::vector<int> load(h.vertex_count(), 0);
  for (VertexId t : qi.map) load[t]++;
  for (int c : load)
    if (c > x_size) throw input_error("star size smaller than a fiber of the map");

  long ray_len = rat_to_long(rat_ceil(qi.a));
  MetricGraph::Builder b;
  for (VertexId v = 0; v < h.vertex_count(); ++v) b.add_vertex(h.vertex_name(v));
  for (const auto& e : h.edges())
    b.add_edge(h.vertex_name(e.u), h.vertex_name(e.v), e.len);
  // Star rays subdivided into ceil(a) unit edges; a == 0 degenerates to no
  // new vertices and an unchanged map.
  std::vector<std::vector<std::string>> leaf_names(h.vertex_count());
  if (ray_len > 0) {
    for (VertexId v = 0; v < h.vertex_count(); ++v)
      for (int leaf = 0; leaf < x_size; ++leaf) {
        std::string prev = h.vertex_name(v);
        for (long step = 1; step <= ray_len; ++step) {
          std::string name = "s." + h.vertex_name(v) + "." + std::to_string(leaf) +
                             "." + std::to_string(step);
          b.add_edge(prev, name);
          prev = name;
        }
        leaf_names[v].push_back(prev);
      }
  }
  AttachResult out;
  out.extended = b.build();
  out.map.assign(g.vertex_count(), -1);
  std::vector<int> used(h.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    VertexId target = qi.map[v];
    if (ray_len == 0) {
      out.map[v] = out.extended.vertex(h.vertex_name(target));
    } else {
      out.map[v] = out.extended.vertex(leaf_names[target][used[target]++]);
    }
  }
  Rat m2 = qi.m + 3 * Rat(ray_len);
  out.certificate =
      verify_quasi_isometry(g, out.extended, out.map, m2, Rat(0), false);
  return out;
}

}  // namespace coarse
