#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "themetruss/model.hpp"
#include "themetruss/rational.hpp"

namespace themetruss {

/// Gp: vertices with nonzero pattern frequency and the parent edges between
/// them. Also used for any frequency-weighted subgraph handed to the peeler.
struct ThemeNetwork {
  Pattern pattern;
  std::vector<VertexId> vertices;  // ascending
  std::vector<Rational> freq;      // parallel to vertices, all > 0
  std::vector<Edge> edges;         // ascending

  [[nodiscard]] bool empty() const { return edges.empty() && vertices.empty(); }
  /// Frequency of a listed vertex; 0 when the vertex is absent.
  [[nodiscard]] Rational frequency_of(VertexId v) const;
};

/// C*p(alpha): edge-induced, every edge cohesion strictly above alpha.
struct MaximalPatternTruss {
  Pattern pattern;
  Rational alpha;
  std::vector<Edge> edges;         // ascending
  std::vector<VertexId> vertices;  // ascending, endpoints of edges
  std::vector<Rational> cohesion;  // parallel to edges; empty when not computed

  [[nodiscard]] bool empty() const { return edges.empty(); }
  [[nodiscard]] bool has_cohesion() const { return !edges.empty() && cohesion.size() == edges.size(); }
};

struct ThemeCommunity {
  Pattern pattern;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
};

ThemeNetwork induce_theme_network(const DatabaseNetwork& g, const Pattern& p);

/// Theme network of p restricted to `edges` (a subgraph of G, ascending):
/// frequencies recomputed on the endpoints, zero-frequency vertices and their
/// edges dropped.
ThemeNetwork induce_on_edges(const DatabaseNetwork& g, const Pattern& p, std::span<const Edge> edges);

/// Sum over triangles of C containing e of min(fi, fj, fk), from scratch.
Rational edge_cohesion(const ThemeNetwork& c, Edge e);

/// Cohesion of every edge of c, recomputed from scratch; parallel to c.edges.
std::vector<Rational> edge_cohesions(const ThemeNetwork& c);

/// Vertices of an edge set, ascending.
std::vector<VertexId> incident_vertices(std::span<const Edge> edges);

/// Incremental peeling engine over one frequency-weighted subgraph. Each call
/// to peel() deletes every live edge whose cached cohesion is <= threshold and
/// cascades the cohesion updates through the triangles it breaks.
class TrussPeeler {
 public:
  explicit TrussPeeler(const ThemeNetwork& network);

  /// Returns the edges removed by this call, in removal order.
  std::vector<Edge> peel(const Rational& threshold);

  [[nodiscard]] std::size_t live_edges() const { return live_count_; }
  /// Minimum cached cohesion among live edges; nullopt when none remain.
  [[nodiscard]] std::optional<Rational> min_cohesion() const;
  /// Live edges ascending, with their cached cohesions.
  void surviving(std::vector<Edge>& edges, std::vector<Rational>& cohesion) const;

 private:
  struct Arc {
    std::uint32_t to;
    std::uint32_t edge;
  };
  template <typename Fn>
  void for_each_triangle(std::uint32_t edge, Fn&& fn) const;

  std::vector<VertexId> vertex_ids_;
  std::vector<Rational> freq_;
  std::vector<std::uint32_t> src_;
  std::vector<std::uint32_t> dst_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<Rational> cohesion_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint8_t> queued_;
  std::size_t live_count_ = 0;
};

/// Maximal pattern truss of gp at alpha. When `removal_log` is given, the
/// removed edges are appended in deletion order.
MaximalPatternTruss mptd(const ThemeNetwork& gp, const Rational& alpha,
                         std::vector<Edge>* removal_log = nullptr);

/// Connected components, ordered by smallest vertex id.
std::vector<ThemeCommunity> extract_communities(const MaximalPatternTruss& truss);

/// Fills truss.cohesion by recomputing frequencies from g.
void attach_cohesion(MaximalPatternTruss& truss, const DatabaseNetwork& g);

}  // namespace themetruss
