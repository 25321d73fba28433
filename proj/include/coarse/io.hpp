#pragma once

#include <iosfwd>
#include <nlohmann/json_fwd.hpp>

#include "coarse/cover.hpp"
#include "coarse/fat_minor.hpp"
#include "coarse/menger.hpp"

namespace coarse::io {

using Json = nlohmann::ordered_json;

// Graph ingestion: plain edge list ("u v length", length optional, rational
// literals allowed; a bare token declares an isolated vertex; '#' comments)
// or a JSON document {"vertices": [...], "edges": [{"u":..,"v":..,"len":..}]}.
MetricGraph parse_edge_list(std::istream& in);
MetricGraph parse_graph_json(const Json& doc);
MetricGraph load_graph(const std::string& path);  // "-" reads standard input

std::string to_dot(const MetricGraph& g);

Json rat_to_json(const Rat& q);
Rat rat_from_json(const Json& j);

Json locus_to_json(const MetricGraph& g, const Locus& l);
Locus locus_from_json(const MetricGraph& g, const Json& j);

Json region_to_json(const MetricGraph& g, const Region& r);
Region region_from_json(const MetricGraph& g, const Json& j);

Json route_to_json(const MetricGraph& g, const Route& r);
Route route_from_json(const MetricGraph& g, const Json& j);

Json model_to_json(const MetricGraph& g, const FatModel& m);
FatModel model_from_json(const MetricGraph& g, const Json& j);

Json cover_to_json(const MetricGraph& g, const ColoredCover& c);
ColoredCover cover_from_json(const MetricGraph& g, const Json& j);

// Terminal sets file: {"A": [names...], "Z": [names...]}.
std::pair<Region, Region> sets_from_json(const MetricGraph& g, const Json& j);

Json outcome_to_json(const MetricGraph& g, const MengerOutcome& o);

// Vertex name sequence of a route (junction vertices in order).
std::vector<std::string> route_vertex_names(const MetricGraph& g, const Route& r);

}  // namespace coarse::io
