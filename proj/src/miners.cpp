#include "themetruss/miners.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_set>

#include "themetruss/parallel.hpp"

namespace themetruss {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Peels the full theme network of every candidate; returns the nonempty
/// trusses in candidate order.
std::vector<MaximalPatternTruss> peel_from_graph(const DatabaseNetwork& g, const std::vector<Pattern>& candidates,
                                                 const Rational& alpha, int threads) {
  std::vector<std::optional<MaximalPatternTruss>> slots(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    auto truss = mptd(induce_theme_network(g, candidates[i]), alpha);
    if (!truss.empty()) slots[i] = std::move(truss);
  });
  std::vector<MaximalPatternTruss> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

std::vector<Pattern> singletons(const DatabaseNetwork& g) {
  std::vector<Pattern> out;
  out.reserve(g.n_items());
  for (ItemId item = 0; item < g.n_items(); ++item) out.push_back(Pattern{item});
  return out;
}

std::vector<Edge> intersect(std::span<const Edge> a, std::span<const Edge> b) {
  std::vector<Edge> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersection_size(std::span<const Edge> a, std::span<const Edge> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

// Per-vertex depth-first itemset enumeration with tid-list intersection.
void enumerate_vertex(const TransactionDatabase& db, const Rational& epsilon, std::size_t max_len,
                      std::uint64_t max_candidates, std::unordered_set<Pattern, PatternHash>& out) {
  const auto h = static_cast<Rational::Int>(db.size());
  std::vector<ItemId> items;
  for (const auto& t : db.transactions) items.insert(items.end(), t.items.begin(), t.items.end());
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());

  std::vector<std::vector<std::uint32_t>> tids(items.size());
  for (std::uint32_t t = 0; t < db.size(); ++t) {
    for (ItemId item : db.transactions[t].items) {
      const auto idx = std::lower_bound(items.begin(), items.end(), item) - items.begin();
      tids[static_cast<std::size_t>(idx)].push_back(t);
    }
  }

  std::vector<ItemId> prefix;
  auto dfs = [&](auto&& self, std::size_t start, const std::vector<std::uint32_t>& cover) -> void {
    std::vector<std::uint32_t> next;
    for (std::size_t x = start; x < items.size(); ++x) {
      next.clear();
      std::set_intersection(cover.begin(), cover.end(), tids[x].begin(), tids[x].end(), std::back_inserter(next));
      if (!(Rational(static_cast<Rational::Int>(next.size()), h) > epsilon)) continue;
      prefix.push_back(items[x]);
      out.insert(Pattern(prefix));
      if (out.size() > max_candidates) {
        throw GuardExceeded("TCS candidate set exceeded cap of " + std::to_string(max_candidates) + " (at " +
                            std::to_string(out.size()) + " patterns)");
      }
      if (max_len == 0 || prefix.size() < max_len) self(self, x + 1, next);
      prefix.pop_back();
    }
  };
  std::vector<std::uint32_t> all(db.size());
  for (std::uint32_t t = 0; t < db.size(); ++t) all[t] = t;
  dfs(dfs, 0, all);
}

}  // namespace

bool guards_disabled() {
  const char* flag = std::getenv("THEMETRUSS_GUARD_OFF");
  return flag != nullptr && std::string(flag) == "1";
}

std::vector<Pattern> tcs_candidates(const DatabaseNetwork& g, const Rational& epsilon, std::size_t max_len,
                                    std::uint64_t max_candidates) {
  std::unordered_set<Pattern, PatternHash> seen;
  for (const auto& db : g.databases()) enumerate_vertex(db, epsilon, max_len, max_candidates, seen);
  std::vector<Pattern> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

MiningResult tcs(const DatabaseNetwork& g, const Rational& alpha, const Rational& epsilon,
                 const TcsOptions& options) {
  if (epsilon < Rational(0)) throw std::invalid_argument("epsilon must be >= 0");
  if (options.max_len == 0) throw std::invalid_argument("max_len must be >= 1");
  const auto start = Clock::now();
  MiningResult result;
  result.alpha = alpha;
  const auto candidates = tcs_candidates(g, epsilon, options.max_len, options.max_candidates);
  result.stats.candidates = candidates.size();
  result.stats.mptd_calls = candidates.size();
  for (auto& truss : peel_from_graph(g, candidates, alpha, options.threads)) {
    auto key = truss.pattern;
    result.trusses.emplace(std::move(key), std::move(truss));
  }
  result.stats.wall_ms = elapsed_ms(start);
  return result;
}

MiningResult tcfa(const DatabaseNetwork& g, const Rational& alpha, const MiningOptions& options) {
  if (alpha < Rational(0)) throw std::invalid_argument("alpha must be >= 0");
  const auto start = Clock::now();
  MiningResult result;
  result.alpha = alpha;
  std::vector<Pattern> candidates = singletons(g);
  for (std::size_t k = 1; !candidates.empty() && (options.max_len == 0 || k <= options.max_len); ++k) {
    result.stats.candidates += candidates.size();
    result.stats.mptd_calls += candidates.size();
    std::vector<Pattern> qualified;
    for (auto& truss : peel_from_graph(g, candidates, alpha, options.threads)) {
      qualified.push_back(truss.pattern);
      auto key = truss.pattern;
      result.trusses.emplace(std::move(key), std::move(truss));
    }
    candidates = gen_apriori_candidates(qualified);
  }
  result.stats.wall_ms = elapsed_ms(start);
  return result;
}

MiningResult tcfi(const DatabaseNetwork& g, const Rational& alpha, const MiningOptions& options) {
  if (alpha < Rational(0)) throw std::invalid_argument("alpha must be >= 0");
  const auto start = Clock::now();
  MiningResult result;
  result.alpha = alpha;

  std::vector<Pattern> candidates = singletons(g);
  result.stats.candidates += candidates.size();
  result.stats.mptd_calls += candidates.size();
  std::vector<Pattern> qualified;
  for (auto& truss : peel_from_graph(g, candidates, alpha, options.threads)) {
    qualified.push_back(truss.pattern);
    auto key = truss.pattern;
    result.trusses.emplace(std::move(key), std::move(truss));
  }

  for (std::size_t k = 2; options.max_len == 0 || k <= options.max_len; ++k) {
    candidates = gen_apriori_candidates(qualified);
    if (candidates.empty()) break;
    result.stats.candidates += candidates.size();

    struct Slot {
      std::optional<MaximalPatternTruss> truss;
      bool peeled = false;
    };
    std::vector<Slot> slots(candidates.size());
    const auto& trusses = result.trusses;
    parallel_for(candidates.size(), options.threads, [&](std::size_t i) {
      const Pattern& c = candidates[i];
      // every (k-1)-subset is qualified; pick the pair with the tightest
      // edge intersection
      std::vector<std::span<const Edge>> parents;
      parents.reserve(c.size());
      for (std::size_t d = 0; d < c.size(); ++d) parents.emplace_back(trusses.at(c.without_index(d)).edges);
      std::size_t best_a = 0;
      std::size_t best_b = 1;
      std::size_t best = intersection_size(parents[0], parents[1]);
      for (std::size_t a = 0; a < parents.size() && best > 0; ++a) {
        for (std::size_t b = a + 1; b < parents.size(); ++b) {
          const std::size_t n = intersection_size(parents[a], parents[b]);
          if (n < best) {
            best = n;
            best_a = a;
            best_b = b;
          }
        }
      }
      if (best == 0) return;
      const auto seed = intersect(parents[best_a], parents[best_b]);
      const ThemeNetwork sub = induce_on_edges(g, c, seed);
      if (sub.edges.empty()) return;
      slots[i].peeled = true;
      auto truss = mptd(sub, alpha);
      if (!truss.empty()) slots[i].truss = std::move(truss);
    });

    qualified.clear();
    for (auto& slot : slots) {
      if (slot.peeled) {
        ++result.stats.mptd_calls;
      } else {
        ++result.stats.pruned_by_intersection;
      }
      if (!slot.truss) continue;
      qualified.push_back(slot.truss->pattern);
      auto key = slot.truss->pattern;
      result.trusses.emplace(std::move(key), std::move(*slot.truss));
    }
  }
  result.stats.wall_ms = elapsed_ms(start);
  return result;
}

Metrics count_metrics(const MiningResult& result) {
  Metrics m;
  m.np = result.trusses.size();
  for (const auto& [pattern, truss] : result.trusses) {
    m.nv += truss.vertices.size();
    m.ne += truss.edges.size();
  }
  return m;
}

}  // namespace themetruss
