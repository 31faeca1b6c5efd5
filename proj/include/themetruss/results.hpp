#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "themetruss/miners.hpp"
#include "themetruss/model.hpp"
#include "themetruss/truss.hpp"

namespace themetruss {

/// One mined or retrieved truss as written to JSON Lines. Keys are emitted in
/// declaration order.
struct ResultRecord {
  Pattern pattern;
  std::vector<std::string> labels;  // only when an item dictionary is loaded
  Rational alpha;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::vector<std::vector<VertexId>> communities;
  std::optional<Rational> cohesion_min;
  std::optional<Rational> cohesion_max;
};

ResultRecord make_record(const MaximalPatternTruss& truss, const ItemLabels* labels = nullptr);

std::string to_json_line(const ResultRecord& record);
ResultRecord parse_record(const std::string& line);

/// One line per truss, in map (lexicographic pattern) order.
void write_records(std::ostream& out, const std::map<Pattern, MaximalPatternTruss>& trusses,
                   const ItemLabels* labels = nullptr);

struct RunStats {
  Metrics metrics;
  std::uint64_t mptd_calls = 0;
  std::uint64_t candidates = 0;
  std::optional<std::uint64_t> retrieved_nodes;
  double wall_ms = 0.0;
};

std::string stats_json_line(const RunStats& stats);

}  // namespace themetruss
