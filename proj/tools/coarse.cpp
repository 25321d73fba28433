// Command-line front door: parse graphs and set files, dispatch to the
// pipelines, emit JSON reports and DOT renderings.
//
// Exit codes: 0 verified success, 1 verification failure, 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coarse/cover.hpp"
#include "coarse/far_paths.hpp"
#include "coarse/io.hpp"
#include "coarse/menger.hpp"
#include "coarse/quasi_tree.hpp"
#include "coarse/star_decomp.hpp"

using namespace coarse;
using Json = coarse::io::Json;

namespace {

Json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open file: " + path);
  return Json::parse(f);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Region vertex_set_region(const MetricGraph& g, const std::string& csv) {
  Region r;
  std::istringstream ss(csv);
  std::string name;
  while (std::getline(ss, name, ',')) r.add_vertex(g, g.vertex(name));
  return r;
}

std::vector<VertexId> parse_vertex_list(const MetricGraph& g, const std::string& csv) {
  std::vector<VertexId> out;
  std::istringstream ss(csv);
  std::string name;
  while (std::getline(ss, name, ',')) out.push_back(g.vertex(name));
  return out;
}

PatternGraph parse_pattern(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "k3" || head == "K3") return PatternGraph::complete(3);
  if ((head == "k" || head == "K") && !arg.empty())
    return PatternGraph::complete(std::stoi(arg));
  if (head == "star" || head == "k1") return PatternGraph::star(std::stoi(arg));
  if (head == "path") return PatternGraph::path(std::stoi(arg));
  if (head == "wedge") return PatternGraph::wedge_of_paths(std::stoi(arg));
  if (head.size() > 1 && (head[0] == 'k' || head[0] == 'K') &&
      head.find(',') == std::string::npos && arg.empty())
    return PatternGraph::complete(std::stoi(head.substr(1)));
  if (head == "k1,3" || head == "K1,3") return PatternGraph::star(3);
  throw input_error("unknown pattern: " + spec +
                    " (use k3, k:N, star:M, path:N, wedge:N)");
}

int run(int argc, char** argv) {
  CLI::App app{"coarse metric-graph toolkit"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "verification worker count (default 1)");

  std::string graph_path, sets_path, model_path, cover_path, out_format = "json";
  std::string root_name, pattern_spec, k_str = "1", r_str = "1", n_str = "0";
  std::string a_name, b_name, delta_str, eps_str, m_str = "1", s_str, dbound_str;
  std::string mode_str = "aux", x_name, z_name, path_csv, set_csv, paths_path;
  std::string target_path, map_path;
  int size_budget = 3, leaves = 3, count = 2, edge_index = 0, x_size = 1;
  long pair_budget = 200000;
  unsigned long long node_budget = 50'000'000ULL;

  auto add_graph = [&](CLI::App* cmd) {
    cmd->add_option("graph", graph_path, "graph file (edge list or JSON, - for stdin)")
        ->required();
  };

  auto* dist = app.add_subcommand("dist", "exact distance between two vertices");
  add_graph(dist);
  dist->add_option("a", a_name)->required();
  dist->add_option("b", b_name)->required();

  auto* nearc = app.add_subcommand("near-components", "near-component classes of a vertex set");
  add_graph(nearc);
  nearc->add_option("--scale", k_str, "linkage scale m")->required();
  nearc->add_option("--set", set_csv, "comma-separated vertices (default: all)");

  auto* bott = app.add_subcommand("bottleneck", "midpoint bottleneck property check");
  add_graph(bott);
  bott->add_option("--delta", delta_str)->required();
  bott->add_option("--pair-budget", pair_budget);

  auto* qt = app.add_subcommand("quasi-tree", "tree-or-fat-triangle dichotomy");
  add_graph(qt);
  qt->add_option("--root", root_name)->required();
  qt->add_option("--k", k_str)->required();
  qt->add_option("--format", out_format, "json or dot");

  auto* star = app.add_subcommand("star", "star decomposition pipeline");
  add_graph(star);
  star->add_option("--root", root_name)->required();
  star->add_option("--k", k_str)->required();
  star->add_option("--m", m_str)->required();
  star->add_option("--format", out_format, "json or dot");

  auto* fatcheck = app.add_subcommand("fatcheck", "verify a fat model file");
  add_graph(fatcheck);
  fatcheck->add_option("--model", model_path)->required();
  fatcheck->add_option("--k", k_str)->required();

  auto* fatsearch = app.add_subcommand("fatsearch", "exhaustive fat-minor search");
  add_graph(fatsearch);
  fatsearch->add_option("--pattern", pattern_spec)->required();
  fatsearch->add_option("--k", k_str)->required();
  fatsearch->add_option("--size-budget", size_budget);
  fatsearch->add_option("--node-budget", node_budget);

  auto* subdiv = app.add_subcommand("subdivide-transfer", "3k-fat model to k-fat subdivided model");
  add_graph(subdiv);
  subdiv->add_option("--model", model_path)->required();
  subdiv->add_option("--edge", edge_index, "pattern edge index")->required();
  subdiv->add_option("--k", k_str)->required();

  auto* fatray = app.add_subcommand("fatray", "greedy fat path model along a geodesic");
  add_graph(fatray);
  fatray->add_option("--path", path_csv, "comma-separated vertex route")->required();
  fatray->add_option("--r", r_str)->required();

  auto* fatstar = app.add_subcommand("fatstarpaths", "fat wedge-of-paths model from rooted geodesics");
  add_graph(fatstar);
  fatstar->add_option("--paths", paths_path, "JSON array of vertex arrays")->required();
  fatstar->add_option("--r", r_str)->required();
  fatstar->add_option("--n", n_str)->required();

  auto* menger = app.add_subcommand("menger2", "coarse Menger dichotomy (n = 2)");
  add_graph(menger);
  menger->add_option("--sets", sets_path)->required();
  menger->add_option("--k", k_str)->required();
  menger->add_option("--mode", mode_str, "primary or aux");

  auto* mengere = app.add_subcommand("menger2-endpoints", "dichotomy with pinned endpoints");
  add_graph(mengere);
  mengere->add_option("--sets", sets_path)->required();
  mengere->add_option("--k", k_str)->required();
  mengere->add_option("--x", x_name)->required();
  mengere->add_option("--z0", z_name)->required();

  auto* farp = app.add_subcommand("farpaths", "exhaustive far-paths oracle");
  add_graph(farp);
  farp->add_option("--sets", sets_path)->required();
  farp->add_option("--n", count)->required();
  farp->add_option("--r", r_str)->required();
  farp->add_option("--budget", node_budget);

  auto* coverc = app.add_subcommand("cover-check", "verify a colored cover");
  add_graph(coverc);
  coverc->add_option("--cover", cover_path)->required();
  coverc->add_option("--n", leaves, "color budget is n+1")->required();
  coverc->add_option("--s", s_str)->required();
  coverc->add_option("--d-bound", dbound_str)->required();

  auto* net = app.add_subcommand("net", "greedy eps-net graph with certificate");
  add_graph(net);
  net->add_option("--eps", eps_str)->required();

  auto* attach = app.add_subcommand("attach-stars", "move images onto star leaves");
  add_graph(attach);
  attach->add_option("--target", target_path, "target graph file")->required();
  attach->add_option("--map", map_path, "JSON map: domain name -> target name")->required();
  attach->add_option("--m", m_str)->required();
  attach->add_option("--a", delta_str)->required();
  attach->add_option("--x-size", x_size)->required();

  CLI11_PARSE(app, argc, argv);
  set_verify_threads(threads);

  if (dist->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    Dist d = g.dist(g.vertex(a_name), g.vertex(b_name));
    std::cout << d.str() << "\n";
    return 0;
  }
  if (nearc->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    Region s;
    if (set_csv.empty()) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) s.add_vertex(g, v);
    } else {
      s = vertex_set_region(g, set_csv);
    }
    auto classes = near_components(g, s, rat_parse(k_str));
    Json j;
    j["command"] = "near-components";
    j["classes"] = Json::array();
    for (const auto& c : classes) j["classes"].push_back(io::region_to_json(g, c));
    emit(j);
    return 0;
  }
  if (bott->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    BottleneckResult res = bottleneck_check(g, rat_parse(delta_str), pair_budget);
    Json j;
    j["command"] = "bottleneck";
    j["holds"] = res.holds;
    j["exhaustive"] = res.exhaustive;
    if (!res.holds) j["witness"] = {g.vertex_name(res.x), g.vertex_name(res.y)};
    emit(j);
    return res.holds ? 0 : 1;
  }
  if (qt->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    QuasiTreeOutcome out = quasi_tree_pipeline(g, rat_parse(k_str), g.vertex(root_name));
    if (out.success) {
      if (out_format == "dot") {
        std::cout << io::to_dot(out.success->tree);
        std::cout << "// certificate (1," << rat_str(out.certificate.a)
                  << ") verified=" << (out.certificate.verdict ? "true" : "false")
                  << "\n";
      } else {
        Json j;
        j["command"] = "quasi-tree";
        j["branch"] = "tree";
        Json tree;
        tree["vertices"] = Json::array();
        for (VertexId v = 0; v < out.success->tree.vertex_count(); ++v)
          tree["vertices"].push_back(out.success->tree.vertex_name(v));
        tree["edges"] = Json::array();
        for (const auto& e : out.success->tree.edges())
          tree["edges"].push_back({out.success->tree.vertex_name(e.u),
                                   out.success->tree.vertex_name(e.v)});
        j["tree"] = tree;
        Json cls = Json::array();
        for (VertexId v = 0; v < g.vertex_count(); ++v)
          cls.push_back(out.success->tree.vertex_name(out.success->vertex_class[v]));
        j["vertex_class"] = cls;
        j["certificate"] = {{"m", io::rat_to_json(out.certificate.m)},
                            {"a", io::rat_to_json(out.certificate.a)},
                            {"verified", out.certificate.verdict}};
        emit(j);
      }
      return out.certificate.verdict ? 0 : 1;
    }
    Json j;
    j["command"] = "quasi-tree";
    j["branch"] = "witness";
    j["model"] = io::model_to_json(g, *out.witness);
    FatVerdict v = verify_fat_model(g, *out.witness, rat_parse(k_str));
    j["verified"] = v.ok;
    emit(j);
    return v.ok ? 0 : 1;
  }
  if (star->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    long k = rat_to_long(rat_parse(k_str));
    int m = static_cast<int>(rat_to_long(rat_parse(m_str)));
    StarOutcome out = star_pipeline(g, g.vertex(root_name), k, m);
    Json j;
    j["command"] = "star";
    if (out.minor_free) {
      j["branch"] = "quotient";
      const MetricGraph& q = out.contraction->quotient;
      if (out_format == "dot") {
        std::cout << io::to_dot(q);
        return out.contraction->certificate.verdict ? 0 : 1;
      }
      Json qj;
      qj["vertices"] = Json::array();
      for (VertexId v = 0; v < q.vertex_count(); ++v)
        qj["vertices"].push_back(q.vertex_name(v));
      qj["edges"] = Json::array();
      for (const auto& e : q.edges())
        qj["edges"].push_back({q.vertex_name(e.u), q.vertex_name(e.v)});
      j["quotient"] = qj;
      j["minor_free"] = true;
      j["certificate"] = {{"m", io::rat_to_json(out.contraction->certificate.m)},
                          {"a", io::rat_to_json(out.contraction->certificate.a)},
                          {"verified", out.contraction->certificate.verdict}};
      emit(j);
      return out.contraction->certificate.verdict ? 0 : 1;
    }
    j["branch"] = "witness";
    j["model"] = io::model_to_json(g, *out.witness);
    FatVerdict v = verify_fat_model(g, *out.witness, Rat(k));
    j["verified"] = v.ok;
    emit(j);
    return v.ok ? 0 : 1;
  }
  if (fatcheck->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    FatModel m = io::model_from_json(g, load_json(model_path));
    FatVerdict v = verify_fat_model(g, m, rat_parse(k_str));
    Json j;
    j["command"] = "fatcheck";
    j["ok"] = v.ok;
    j["structural_ok"] = v.structural_ok;
    if (v.structural_ok) j["fatness"] = v.fatness.str();
    if (!v.ok) j["failure"] = v.failure;
    if (!v.tight_pair.empty()) j["tight_pair"] = v.tight_pair;
    emit(j);
    return v.ok ? 0 : 1;
  }
  if (fatsearch->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    FatSearchResult res = search_fat_minor(g, parse_pattern(pattern_spec),
                                           rat_parse(k_str), size_budget, node_budget);
    Json j;
    j["command"] = "fatsearch";
    j["nodes"] = res.nodes;
    switch (res.status) {
      case SearchStatus::Found:
        j["status"] = "found";
        j["model"] = io::model_to_json(g, *res.model);
        break;
      case SearchStatus::None:
        j["status"] = "none";
        break;
      case SearchStatus::BudgetExhausted:
        j["status"] = "budget-exhausted";
        break;
    }
    emit(j);
    return 0;
  }
  if (subdiv->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    FatModel m = io::model_from_json(g, load_json(model_path));
    FatModel out = subdivision_transfer(g, m, edge_index, rat_parse(k_str));
    Json j;
    j["command"] = "subdivide-transfer";
    j["model"] = io::model_to_json(g, out);
    j["verified"] = true;
    emit(j);
    return 0;
  }
  if (fatray->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    Route route = Route::from_vertices(g, parse_vertex_list(g, path_csv));
    FatRayResult res = fat_ray_prefix(g, route, rat_parse(r_str));
    Json j;
    j["command"] = "fatray";
    if (res.too_short) {
      j["status"] = "too-short";
    } else {
      j["status"] = "found";
      j["blocks"] = res.blocks;
      j["model"] = io::model_to_json(g, *res.model);
    }
    emit(j);
    return 0;
  }
  if (fatstar->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    Json doc = load_json(paths_path);
    std::vector<Route> routes;
    for (const auto& arr : doc) {
      std::vector<VertexId> vs;
      for (const auto& v : arr) vs.push_back(g.vertex(v.get<std::string>()));
      routes.push_back(Route::from_vertices(g, vs));
    }
    FatModel m = fat_star_of_paths(g, routes, rat_parse(r_str), rat_parse(n_str));
    Json j;
    j["command"] = "fatstarpaths";
    j["model"] = io::model_to_json(g, m);
    j["verified"] = true;
    emit(j);
    return 0;
  }
  if (menger->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    auto [a, z] = io::sets_from_json(g, load_json(sets_path));
    MengerMode mode = mode_str == "primary" ? MengerMode::Primary : MengerMode::Aux;
    MengerOutcome out = menger2(g, a, z, rat_parse(k_str), mode);
    Json j = io::outcome_to_json(g, out);
    j["command"] = "menger2";
    emit(j);
    bool ok = out.is_separator() ? out.separator->verified : out.paths->verified;
    return ok ? 0 : 1;
  }
  if (mengere->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    auto [a, z] = io::sets_from_json(g, load_json(sets_path));
    MengerOutcome out = menger2_endpoints(g, a, z, rat_parse(k_str), g.vertex(x_name),
                                          g.vertex(z_name));
    Json j = io::outcome_to_json(g, out);
    j["command"] = "menger2-endpoints";
    emit(j);
    bool ok = out.is_separator() ? out.separator->verified : out.paths->verified;
    return ok ? 0 : 1;
  }
  if (farp->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    auto [a, z] = io::sets_from_json(g, load_json(sets_path));
    FarPathsResult res = far_paths_bruteforce(g, a, z, count, rat_parse(r_str),
                                              node_budget);
    Json j;
    j["command"] = "farpaths";
    j["nodes"] = res.nodes;
    switch (res.status) {
      case FarPathsStatus::Found: {
        j["status"] = "found";
        Json paths = Json::array();
        for (const auto& p : res.paths) {
          Json one = Json::array();
          for (VertexId v : p) one.push_back(g.vertex_name(v));
          paths.push_back(one);
        }
        j["paths"] = paths;
        break;
      }
      case FarPathsStatus::None:
        j["status"] = "none";
        break;
      case FarPathsStatus::BudgetExhausted:
        j["status"] = "budget-exhausted";
        break;
    }
    emit(j);
    return 0;
  }
  if (coverc->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    Json doc = load_json(cover_path);
    ColoredCover cover = io::cover_from_json(g, doc);
    Region target;
    if (doc.contains("target")) {
      target = io::region_from_json(g, doc.at("target"));
    } else {
      for (VertexId v = 0; v < g.vertex_count(); ++v) target.add_vertex(g, v);
    }
    CoverCheck res = verify_cover(g, target, cover, leaves, rat_parse(s_str),
                                  rat_parse(dbound_str));
    Json j;
    j["command"] = "cover-check";
    j["ok"] = res.ok;
    if (!res.ok) j["failure"] = res.describe();
    emit(j);
    return res.ok ? 0 : 1;
  }
  if (net->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    Rat eps = rat_parse(eps_str);
    NetResult res = net_graph(g, eps);
    QICertificate cert =
        verify_quasi_isometry(g, res.net, res.nearest, 3 * eps, 3 * eps);
    Json j;
    j["command"] = "net";
    Json nj;
    nj["vertices"] = Json::array();
    for (VertexId v = 0; v < res.net.vertex_count(); ++v)
      nj["vertices"].push_back(res.net.vertex_name(v));
    nj["edges"] = Json::array();
    for (const auto& e : res.net.edges())
      nj["edges"].push_back({res.net.vertex_name(e.u), res.net.vertex_name(e.v)});
    j["net"] = nj;
    Json pts = Json::array();
    for (const auto& p : res.points) pts.push_back(io::locus_to_json(g, p));
    j["points"] = pts;
    Json map = Json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      map.push_back(res.net.vertex_name(res.nearest[v]));
    j["nearest"] = map;
    j["certificate"] = {{"m", io::rat_to_json(3 * eps)},
                        {"a", io::rat_to_json(3 * eps)},
                        {"verified", cert.verdict}};
    emit(j);
    return cert.verdict ? 0 : 1;
  }
  if (attach->parsed()) {
    MetricGraph g = io::load_graph(graph_path);
    MetricGraph h = io::load_graph(target_path);
    Json mdoc = load_json(map_path);
    std::vector<VertexId> map(g.vertex_count(), -1);
    for (auto it = mdoc.begin(); it != mdoc.end(); ++it)
      map[g.vertex(it.key())] = h.vertex(it.value().get<std::string>());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (map[v] < 0) throw input_error("map misses vertex " + g.vertex_name(v));
    QICertificate qi =
        verify_quasi_isometry(g, h, map, rat_parse(m_str), rat_parse(delta_str));
    if (!qi.verdict) {
      Json j;
      j["command"] = "attach-stars";
      j["error"] = "input certificate failed verification: " + qi.describe(g, h);
      emit(j);
      return 1;
    }
    AttachResult res = attach_stars(g, h, qi, x_size);
    Json j;
    j["command"] = "attach-stars";
    Json ej;
    ej["vertices"] = Json::array();
    for (VertexId v = 0; v < res.extended.vertex_count(); ++v)
      ej["vertices"].push_back(res.extended.vertex_name(v));
    ej["edges"] = Json::array();
    for (const auto& e : res.extended.edges())
      ej["edges"].push_back({res.extended.vertex_name(e.u),
                             res.extended.vertex_name(e.v)});
    j["extended"] = ej;
    Json map_out = Json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      map_out.push_back(res.extended.vertex_name(res.map[v]));
    j["map"] = map_out;
    j["certificate"] = {{"m", io::rat_to_json(res.certificate.m)},
                        {"a", io::rat_to_json(res.certificate.a)},
                        {"distortion_only", true},
                        {"verified", res.certificate.verdict}};
    emit(j);
    return res.certificate.verdict ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const contract_error& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
