#include "themetruss/results.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <ostream>

namespace themetruss {

using ordered_json = nlohmann::ordered_json;

ResultRecord make_record(const MaximalPatternTruss& truss, const ItemLabels* labels) {
  ResultRecord r;
  r.pattern = truss.pattern;
  if (labels) {
    for (ItemId item : truss.pattern.items()) {
      auto it = labels->find(item);
      r.labels.push_back(it != labels->end() ? it->second : std::to_string(item));
    }
  }
  r.alpha = truss.alpha;
  r.vertices = truss.vertices;
  r.edges = truss.edges;
  for (auto& community : extract_communities(truss)) r.communities.push_back(std::move(community.vertices));
  if (truss.has_cohesion()) {
    const auto [lo, hi] = std::minmax_element(truss.cohesion.begin(), truss.cohesion.end());
    r.cohesion_min = *lo;
    r.cohesion_max = *hi;
  }
  return r;
}

std::string to_json_line(const ResultRecord& record) {
  ordered_json j;
  j["pattern"] = std::vector<ItemId>(record.pattern.items().begin(), record.pattern.items().end());
  if (!record.labels.empty()) j["labels"] = record.labels;
  j["alpha"] = record.alpha.to_string();
  j["vertices"] = record.vertices;
  ordered_json edges = ordered_json::array();
  for (const Edge& e : record.edges) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  j["communities"] = record.communities;
  j["cohesion_min"] = record.cohesion_min ? ordered_json(record.cohesion_min->to_string()) : ordered_json(nullptr);
  j["cohesion_max"] = record.cohesion_max ? ordered_json(record.cohesion_max->to_string()) : ordered_json(nullptr);
  return j.dump();
}

ResultRecord parse_record(const std::string& line) {
  const auto j = ordered_json::parse(line);
  ResultRecord r;
  r.pattern = Pattern(j.at("pattern").get<std::vector<ItemId>>());
  if (j.contains("labels")) r.labels = j.at("labels").get<std::vector<std::string>>();
  r.alpha = Rational::parse(j.at("alpha").get<std::string>());
  r.vertices = j.at("vertices").get<std::vector<VertexId>>();
  for (const auto& e : j.at("edges")) r.edges.push_back(Edge{e.at(0).get<VertexId>(), e.at(1).get<VertexId>()});
  r.communities = j.at("communities").get<std::vector<std::vector<VertexId>>>();
  if (!j.at("cohesion_min").is_null()) r.cohesion_min = Rational::parse(j.at("cohesion_min").get<std::string>());
  if (!j.at("cohesion_max").is_null()) r.cohesion_max = Rational::parse(j.at("cohesion_max").get<std::string>());
  return r;
}

void write_records(std::ostream& out, const std::map<Pattern, MaximalPatternTruss>& trusses,
                   const ItemLabels* labels) {
  for (const auto& [pattern, truss] : trusses) out << to_json_line(make_record(truss, labels)) << '\n';
}

std::string stats_json_line(const RunStats& stats) {
  ordered_json j;
  j["type"] = "stats";
  j["np"] = stats.metrics.np;
  j["nv"] = stats.metrics.nv;
  j["ne"] = stats.metrics.ne;
  j["mptd_calls"] = stats.mptd_calls;
  j["candidates"] = stats.candidates;
  if (stats.retrieved_nodes) j["retrieved_nodes"] = *stats.retrieved_nodes;
  j["wall_ms"] = std::round(stats.wall_ms * 1000.0) / 1000.0;
  return j.dump();
}

}  // namespace themetruss
