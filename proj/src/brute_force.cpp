#include <bit>
#include <chrono>
#include <string>

#include "themetruss/miners.hpp"

namespace themetruss {

MiningResult brute_force_mine(const DatabaseNetwork& g, const Rational& alpha, std::size_t max_len,
                              const OracleLimits& limits) {
  const std::size_t n = g.n_vertices();
  const std::size_t m_items = g.n_items();
  if (!guards_disabled() && (n > limits.max_vertices || m_items > limits.max_items)) {
    throw GuardExceeded("brute-force oracle limited to " + std::to_string(limits.max_vertices) + " vertices and " +
                        std::to_string(limits.max_items) + " items");
  }
  if (m_items > 63) throw GuardExceeded("brute-force oracle cannot enumerate more than 63 items");
  const auto start = std::chrono::steady_clock::now();

  // per-vertex transactions as item bitmasks
  std::vector<std::vector<std::uint64_t>> masks(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& t : g.database(static_cast<VertexId>(v)).transactions) {
      std::uint64_t mask = 0;
      for (ItemId item : t.items) mask |= std::uint64_t{1} << item;
      masks[v].push_back(mask);
    }
  }
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  for (const Edge& e : g.edges()) adjacent[e.u][e.v] = adjacent[e.v][e.u] = 1;

  MiningResult result;
  result.alpha = alpha;
  const std::uint64_t limit = m_items == 0 ? 0 : (std::uint64_t{1} << m_items);
  for (std::uint64_t pattern_mask = 1; pattern_mask < limit; ++pattern_mask) {
    const auto len = static_cast<std::size_t>(std::popcount(pattern_mask));
    if (max_len != 0 && len > max_len) continue;

    std::vector<Rational> f(n);
    bool anywhere = false;
    for (std::size_t v = 0; v < n; ++v) {
      std::int64_t count = 0;
      for (std::uint64_t t : masks[v]) count += (t & pattern_mask) == pattern_mask ? 1 : 0;
      f[v] = Rational(count, static_cast<std::int64_t>(masks[v].size()));
      anywhere = anywhere || count > 0;
    }
    if (!anywhere) continue;
    ++result.stats.candidates;

    auto present = adjacent;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (f[u].is_zero() || f[v].is_zero()) present[u][v] = 0;
      }
    }
    // recompute every cohesion, drop every failing edge, repeat
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::pair<std::size_t, std::size_t>> failing;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
          if (!present[u][v]) continue;
          Rational eco;
          for (std::size_t w = 0; w < n; ++w) {
            if (present[u][w] && present[v][w]) eco += std::min({f[u], f[v], f[w]});
          }
          if (eco <= alpha) failing.emplace_back(u, v);
        }
      }
      for (auto [u, v] : failing) present[u][v] = present[v][u] = 0;
      changed = !failing.empty();
    }

    MaximalPatternTruss truss;
    std::vector<ItemId> items;
    for (ItemId i = 0; i < m_items; ++i) {
      if (pattern_mask >> i & 1) items.push_back(i);
    }
    truss.pattern = Pattern(std::move(items));
    truss.alpha = alpha;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (present[u][v]) truss.edges.push_back(Edge{static_cast<VertexId>(u), static_cast<VertexId>(v)});
      }
    }
    if (truss.edges.empty()) continue;
    truss.vertices = incident_vertices(truss.edges);
    auto key = truss.pattern;
    result.trusses.emplace(std::move(key), std::move(truss));
  }
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace themetruss
