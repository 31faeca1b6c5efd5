#pragma once

#include <vector>

#include "themetruss/model.hpp"

namespace testing_util {

using themetruss::DatabaseNetwork;
using themetruss::Edge;
using themetruss::ItemId;
using themetruss::Transaction;
using themetruss::TransactionDatabase;
using themetruss::VertexId;

inline std::vector<Edge> clique_edges(VertexId n, VertexId offset = 0) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.push_back(Edge{u + offset, v + offset});
  return e;
}

/// Every vertex gets the same database.
inline DatabaseNetwork uniform_network(std::size_t n, std::vector<Edge> edges,
                                       const std::vector<std::vector<ItemId>>& txs, std::size_t n_items = 0) {
  TransactionDatabase db;
  for (const auto& t : txs) db.transactions.push_back(Transaction{t});
  return DatabaseNetwork(n, std::move(edges), std::vector<TransactionDatabase>(n, db), n_items);
}

/// Item 0 present in `hits` of `h` transactions at every vertex, so f({0}) = hits/h.
inline DatabaseNetwork fractional_network(std::size_t n, std::vector<Edge> edges, std::size_t hits, std::size_t h) {
  std::vector<std::vector<ItemId>> txs;
  for (std::size_t i = 0; i < h; ++i) txs.push_back(i < hits ? std::vector<ItemId>{0} : std::vector<ItemId>{1});
  return uniform_network(n, std::move(edges), txs, 2);
}

}  // namespace testing_util
