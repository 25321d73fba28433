#include "coarse/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace coarse::io {

MetricGraph parse_edge_list(std::istream& in) {
  MetricGraph::Builder b;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string u, v, len;
    if (!(ss >> u)) continue;
    if (!(ss >> v)) {
      b.add_vertex(u);
      continue;
    }
    if (ss >> len) {
      try {
        b.add_edge(u, v, rat_parse(len));
      } catch (const std::invalid_argument& e) {
        throw input_error("line " + std::to_string(lineno) + ": " + e.what());
      }
    } else {
      b.add_edge(u, v);
    }
  }
  return b.build();
}

MetricGraph parse_graph_json(const Json& doc) {
  MetricGraph::Builder b;
  if (doc.contains("vertices"))
    for (const auto& v : doc.at("vertices")) b.add_vertex(v.get<std::string>());
  if (doc.contains("edges"))
    for (const auto& e : doc.at("edges")) {
      Rat len = e.contains("len") ? rat_from_json(e.at("len")) : Rat(1);
      b.add_edge(e.at("u").get<std::string>(), e.at("v").get<std::string>(), len);
    }
  return b.build();
}

MetricGraph load_graph(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream f(path);
    if (!f) throw input_error("cannot open graph file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    text = buf.str();
  }
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return parse_graph_json(Json::parse(text));
  std::istringstream ss(text);
  return parse_edge_list(ss);
}

std::string to_dot(const MetricGraph& g) {
  std::ostringstream out;
  out << "graph g {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << "  \"" << g.vertex_name(v) << "\";\n";
  for (const auto& e : g.edges()) {
    out << "  \"" << g.vertex_name(e.u) << "\" -- \"" << g.vertex_name(e.v) << "\"";
    if (e.len != 1) out << " [label=\"" << rat_str(e.len) << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

Json rat_to_json(const Rat& q) {
  if (rat_is_integer(q) && q.get_num().fits_slong_p())
    return Json(q.get_num().get_si());
  return Json(rat_str(q));
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw input_error("expected a rational (integer or \"p/q\")");
}

Json locus_to_json(const MetricGraph& g, const Locus& l) {
  Json j;
  if (l.is_vertex()) {
    j["v"] = g.vertex_name(l.v);
  } else {
    const auto& e = g.edge(l.e);
    j["edge"] = {g.vertex_name(e.u), g.vertex_name(e.v)};
    j["offset"] = rat_to_json(l.offset);
  }
  return j;
}

Locus locus_from_json(const MetricGraph& g, const Json& j) {
  if (j.contains("v")) return Locus::vertex(g.vertex(j.at("v").get<std::string>()));
  VertexId u = g.vertex(j.at("edge").at(0).get<std::string>());
  VertexId v = g.vertex(j.at("edge").at(1).get<std::string>());
  EdgeId e = g.edge_between(u, v);
  if (e < 0) throw input_error("locus names a missing edge");
  Rat off = rat_from_json(j.at("offset"));
  // Offsets are measured from the first named endpoint.
  if (g.edge(e).u != u) off = g.edge(e).len - off;
  return make_locus(g, e, off);
}

Json region_to_json(const MetricGraph& g, const Region& r) {
  Json j;
  j["vertices"] = Json::array();
  for (VertexId v : r.vertices()) j["vertices"].push_back(g.vertex_name(v));
  j["segments"] = Json::array();
  for (const auto& [e, list] : r.segments())
    for (const auto& seg : list) {
      Json s;
      s["edge"] = {g.vertex_name(g.edge(e).u), g.vertex_name(g.edge(e).v)};
      s["from"] = rat_to_json(seg.lo);
      s["to"] = rat_to_json(seg.hi);
      j["segments"].push_back(s);
    }
  return j;
}

Region region_from_json(const MetricGraph& g, const Json& j) {
  Region r;
  if (j.is_array()) {  // plain vertex list
    for (const auto& v : j) r.add_vertex(g, g.vertex(v.get<std::string>()));
    return r;
  }
  if (j.contains("vertices"))
    for (const auto& v : j.at("vertices")) r.add_vertex(g, g.vertex(v.get<std::string>()));
  if (j.contains("segments"))
    for (const auto& s : j.at("segments")) {
      VertexId u = g.vertex(s.at("edge").at(0).get<std::string>());
      VertexId v = g.vertex(s.at("edge").at(1).get<std::string>());
      EdgeId e = g.edge_between(u, v);
      if (e < 0) throw input_error("segment names a missing edge");
      Rat from = rat_from_json(s.at("from"));
      Rat to = rat_from_json(s.at("to"));
      if (g.edge(e).u != u) {
        from = g.edge(e).len - from;
        to = g.edge(e).len - to;
      }
      r.add_segment(g, e, std::min(from, to), std::max(from, to));
    }
  if (j.contains("edges"))
    for (const auto& s : j.at("edges")) {
      VertexId u = g.vertex(s.at(0).get<std::string>());
      VertexId v = g.vertex(s.at(1).get<std::string>());
      EdgeId e = g.edge_between(u, v);
      if (e < 0) throw input_error("region names a missing edge");
      r.add_whole_edge(g, e);
    }
  return r;
}

Json route_to_json(const MetricGraph& g, const Route& r) {
  Json j;
  j["start"] = locus_to_json(g, r.first());
  j["steps"] = Json::array();
  for (const auto& st : r.steps()) {
    Json s;
    const auto& e = g.edge(st.e);
    s["edge"] = {g.vertex_name(e.u), g.vertex_name(e.v)};
    s["from"] = rat_to_json(st.from);
    s["to"] = rat_to_json(st.to);
    j["steps"].push_back(s);
  }
  if (r.walk_flag()) j["walk"] = true;
  return j;
}

Route route_from_json(const MetricGraph& g, const Json& j) {
  if (j.is_array()) {  // plain vertex sequence
    std::vector<VertexId> vs;
    for (const auto& v : j) vs.push_back(g.vertex(v.get<std::string>()));
    return Route::from_vertices(g, vs);
  }
  Route r = Route::trivial(locus_from_json(g, j.at("start")));
  for (const auto& s : j.at("steps")) {
    VertexId u = g.vertex(s.at("edge").at(0).get<std::string>());
    VertexId v = g.vertex(s.at("edge").at(1).get<std::string>());
    EdgeId e = g.edge_between(u, v);
    if (e < 0) throw input_error("route step names a missing edge");
    Rat from = rat_from_json(s.at("from"));
    Rat to = rat_from_json(s.at("to"));
    if (g.edge(e).u != u) {
      from = g.edge(e).len - from;
      to = g.edge(e).len - to;
    }
    r.push_step(g, e, from, to);
  }
  if (j.value("walk", false)) r.set_walk_flag(true);
  return r;
}

Json model_to_json(const MetricGraph& g, const FatModel& m) {
  Json j;
  j["level"] = rat_to_json(m.level);
  Json pat;
  pat["vertices"] = m.pattern.names;
  pat["edges"] = Json::array();
  for (auto [u, v] : m.pattern.edges)
    pat["edges"].push_back({m.pattern.names[u], m.pattern.names[v]});
  j["pattern"] = pat;
  j["branch_sets"] = Json::array();
  for (const auto& r : m.branch_sets) j["branch_sets"].push_back(region_to_json(g, r));
  j["branch_paths"] = Json::array();
  for (const auto& r : m.branch_paths) j["branch_paths"].push_back(route_to_json(g, r));
  return j;
}

FatModel model_from_json(const MetricGraph& g, const Json& j) {
  FatModel m;
  m.level = rat_from_json(j.at("level"));
  const Json& pat = j.at("pattern");
  for (const auto& name : pat.at("vertices"))
    m.pattern.names.push_back(name.get<std::string>());
  auto index_of = [&](const std::string& name) {
    for (size_t i = 0; i < m.pattern.names.size(); ++i)
      if (m.pattern.names[i] == name) return static_cast<int>(i);
    throw input_error("pattern edge names a missing vertex: " + name);
  };
  for (const auto& e : pat.at("edges")) {
    int u = index_of(e.at(0).get<std::string>());
    int v = index_of(e.at(1).get<std::string>());
    if (u > v) std::swap(u, v);
    m.pattern.edges.push_back({u, v});
  }
  for (const auto& r : j.at("branch_sets"))
    m.branch_sets.push_back(region_from_json(g, r));
  for (const auto& r : j.at("branch_paths"))
    m.branch_paths.push_back(route_from_json(g, r));
  return m;
}

Json cover_to_json(const MetricGraph& g, const ColoredCover& c) {
  Json j;
  j["pieces"] = Json::array();
  for (const auto& [region, color] : c.pieces) {
    Json p;
    p["region"] = region_to_json(g, region);
    p["color"] = color;
    j["pieces"].push_back(p);
  }
  return j;
}

ColoredCover cover_from_json(const MetricGraph& g, const Json& j) {
  ColoredCover c;
  for (const auto& p : j.at("pieces"))
    c.pieces.push_back({region_from_json(g, p.at("region")), p.at("color").get<int>()});
  return c;
}

std::pair<Region, Region> sets_from_json(const MetricGraph& g, const Json& j) {
  if (!j.contains("A") || !j.contains("Z"))
    throw input_error("sets file must name A and Z");
  return {region_from_json(g, j.at("A")), region_from_json(g, j.at("Z"))};
}

std::vector<std::string> route_vertex_names(const MetricGraph& g, const Route& r) {
  std::vector<std::string> out;
  for (const auto& [loc, t] : r.junctions(g))
    if (loc.is_vertex()) {
      std::string name = g.vertex_name(loc.v);
      if (out.empty() || out.back() != name) out.push_back(name);
    }
  return out;
}

Json outcome_to_json(const MetricGraph& g, const MengerOutcome& o) {
  Json j;
  j["mode"] = o.mode == MengerMode::Primary ? "primary" : "aux";
  if (o.is_separator()) {
    j["kind"] = "separator";
    Json s;
    s["center"] = locus_to_json(g, o.separator->center);
    s["radius"] = rat_to_json(o.separator->radius);
    s["diameter"] = o.separator->diameter.str();
    s["ball"] = region_to_json(g, o.separator->ball);
    s["verified"] = o.separator->verified;
    j["separator"] = s;
  } else {
    j["kind"] = "paths";
    Json p;
    p["alpha1"] = route_vertex_names(g, o.paths->alpha1);
    p["alpha2"] = route_vertex_names(g, o.paths->alpha2);
    p["alpha1_route"] = route_to_json(g, o.paths->alpha1);
    p["alpha2_route"] = route_to_json(g, o.paths->alpha2);
    p["separation"] = o.paths->separation.str();
    p["required"] = rat_to_json(o.paths->required);
    p["verified"] = o.paths->verified;
    j["paths"] = p;
  }
  Json ledger;
  ledger["joins"] = o.ledger.joins_performed;
  ledger["join_lengths"] = Json::array();
  for (const auto& l : o.ledger.join_lengths)
    ledger["join_lengths"].push_back(rat_to_json(l));
  ledger["join_gamma_gaps"] = Json::array();
  for (const auto& d : o.ledger.join_gamma_gap)
    ledger["join_gamma_gaps"].push_back(d.str());
  ledger["trees"] = Json::array();
  for (const auto& t : o.ledger.trees) {
    Json tt;
    tt["rank"] = t.rank;
    tt["length"] = rat_to_json(t.length);
    ledger["trees"].push_back(tt);
  }
  j["ledger"] = ledger;
  return j;
}

}  // namespace coarse::io
