#pragma once

// Naive reference implementations used as test oracles. Nothing here shares
// code with the library beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "themetruss/miners.hpp"
#include "themetruss/model.hpp"
#include "themetruss/rational.hpp"
#include "themetruss/truss.hpp"

namespace oracle {

using themetruss::DatabaseNetwork;
using themetruss::Edge;
using themetruss::ItemId;
using themetruss::Pattern;
using themetruss::Rational;
using themetruss::Transaction;
using themetruss::TransactionDatabase;
using themetruss::VertexId;

using EdgeSet = std::set<Edge>;
using EdgeMap = std::map<Pattern, std::vector<Edge>>;

struct RandomSpec {
  std::size_t max_vertices = 20;
  std::size_t max_edges = 40;
  std::size_t max_items = 6;
  std::size_t max_transactions = 8;
  double item_prob = 0.55;
  /// Share of vertices that copy one common "theme" transaction; drives
  /// nonempty trusses on longer patterns.
  double theme_prob = 0.5;
};

inline DatabaseNetwork random_network(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> nv(3, spec.max_vertices);
  const std::size_t n = nv(rng);
  const std::size_t n_items = std::uniform_int_distribution<std::size_t>(1, spec.max_items)(rng);
  const std::size_t cap = std::min(spec.max_edges, n * (n - 1) / 2);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(0, cap)(rng);

  std::vector<Edge> all;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) all.push_back(Edge{u, v});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(m);

  std::bernoulli_distribution take(spec.item_prob);
  std::bernoulli_distribution themed(spec.theme_prob);
  std::vector<ItemId> theme;
  for (ItemId i = 0; i < n_items; ++i)
    if (take(rng)) theme.push_back(i);
  if (theme.empty()) theme.push_back(0);

  std::vector<TransactionDatabase> dbs(n);
  std::uniform_int_distribution<std::size_t> ntx(1, spec.max_transactions);
  std::uniform_int_distribution<ItemId> any_item(0, static_cast<ItemId>(n_items - 1));
  for (auto& db : dbs) {
    const std::size_t h = ntx(rng);
    for (std::size_t t = 0; t < h; ++t) {
      std::vector<ItemId> items;
      if (themed(rng)) {
        items = theme;
      } else {
        for (ItemId i = 0; i < n_items; ++i)
          if (take(rng)) items.push_back(i);
      }
      if (items.empty()) items.push_back(any_item(rng));
      db.transactions.push_back(Transaction{items});
    }
  }
  return DatabaseNetwork(n, all, dbs, n_items);
}

inline bool subset(const std::vector<ItemId>& small, const std::vector<ItemId>& big) {
  for (ItemId x : small)
    if (std::find(big.begin(), big.end(), x) == big.end()) return false;
  return true;
}

/// Count of transactions containing p, by linear scans.
inline std::size_t containing(const TransactionDatabase& db, const Pattern& p) {
  const std::vector<ItemId> want(p.items().begin(), p.items().end());
  std::size_t c = 0;
  for (const auto& t : db.transactions)
    if (subset(want, t.items)) ++c;
  return c;
}

inline Rational freq(const TransactionDatabase& db, const Pattern& p) {
  return Rational(static_cast<Rational::Int>(containing(db, p)), static_cast<Rational::Int>(db.size()));
}

using FreqMap = std::map<VertexId, Rational>;

inline Rational cohesion_in(const EdgeSet& edges, const FreqMap& f, Edge e) {
  std::set<VertexId> nu, nv;
  for (const Edge& x : edges) {
    if (x.u == e.u) nu.insert(x.v);
    if (x.v == e.u) nu.insert(x.u);
    if (x.u == e.v) nv.insert(x.v);
    if (x.v == e.v) nv.insert(x.u);
  }
  Rational total;
  for (VertexId w : nu) {
    if (!nv.count(w)) continue;
    total += std::min({f.at(e.u), f.at(e.v), f.at(w)});
  }
  return total;
}

/// Fixpoint of deleting every edge whose cohesion is <= alpha, recomputing
/// all cohesions from scratch after each round.
inline EdgeSet truss_fixpoint(EdgeSet edges, const FreqMap& f, const Rational& alpha) {
  for (;;) {
    std::vector<Edge> drop;
    for (const Edge& e : edges)
      if (cohesion_in(edges, f, e) <= alpha) drop.push_back(e);
    if (drop.empty()) return edges;
    for (const Edge& e : drop) edges.erase(e);
  }
}

/// Theme network of p as (edge set, frequency map).
inline std::pair<EdgeSet, FreqMap> theme_network(const DatabaseNetwork& g, const Pattern& p) {
  FreqMap f;
  for (VertexId v = 0; v < g.n_vertices(); ++v) {
    const Rational x = freq(g.database(v), p);
    if (x > Rational(0)) f.emplace(v, x);
  }
  EdgeSet e;
  for (const Edge& x : g.edges())
    if (f.count(x.u) && f.count(x.v)) e.insert(x);
  return {e, f};
}

inline EdgeSet truss_of(const DatabaseNetwork& g, const Pattern& p, const Rational& alpha) {
  auto [edges, f] = theme_network(g, p);
  return truss_fixpoint(edges, f, alpha);
}

/// Every nonempty pattern over the universe, in bitmask order.
inline std::vector<Pattern> all_patterns(std::size_t n_items) {
  std::vector<Pattern> out;
  for (std::uint32_t mask = 1; mask < (1u << n_items); ++mask) {
    std::vector<ItemId> items;
    for (ItemId i = 0; i < n_items; ++i)
      if (mask & (1u << i)) items.push_back(i);
    out.emplace_back(items);
  }
  return out;
}

/// Pattern -> sorted edges of every nonempty truss, exhaustively.
inline EdgeMap mine(const DatabaseNetwork& g, const Rational& alpha) {
  EdgeMap out;
  for (const Pattern& p : all_patterns(g.n_items())) {
    EdgeSet t = truss_of(g, p, alpha);
    if (!t.empty()) out.emplace(p, std::vector<Edge>(t.begin(), t.end()));
  }
  return out;
}

/// Classical k-truss: every edge lies in at least k-2 triangles.
inline EdgeSet k_truss(EdgeSet edges, int k) {
  for (;;) {
    std::vector<Edge> drop;
    for (const Edge& e : edges) {
      int support = 0;
      for (const Edge& a : edges) {
        VertexId w;
        if (a.u == e.u && a.v != e.v) w = a.v;
        else if (a.v == e.u && a.u != e.v) w = a.u;
        else continue;
        if (edges.count(Edge::make(w, e.v))) ++support;
      }
      if (support < k - 2) drop.push_back(e);
    }
    if (drop.empty()) return edges;
    for (const Edge& e : drop) edges.erase(e);
  }
}

inline EdgeMap edge_map(const std::map<Pattern, themetruss::MaximalPatternTruss>& trusses) {
  EdgeMap out;
  for (const auto& [p, t] : trusses) out.emplace(p, t.edges);
  return out;
}

inline EdgeMap edge_map(const themetruss::MiningResult& r) { return edge_map(r.trusses); }

}  // namespace oracle
