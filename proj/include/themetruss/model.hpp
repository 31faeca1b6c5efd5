#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "themetruss/rational.hpp"

namespace themetruss {

using VertexId = std::uint32_t;
using ItemId = std::uint32_t;

/// Canonical itemset: strictly ascending item ids. Ascending order is also the
/// total order used by the set-enumeration tree.
class Pattern {
 public:
  Pattern() = default;
  /// Sorts and removes duplicates.
  explicit Pattern(std::vector<ItemId> items);
  Pattern(std::initializer_list<ItemId> items) : Pattern(std::vector<ItemId>(items)) {}

  [[nodiscard]] std::span<const ItemId> items() const { return items_; }
  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] bool empty() const { return items_.empty(); }
  [[nodiscard]] ItemId back() const { return items_.back(); }
  [[nodiscard]] bool contains(ItemId item) const;
  [[nodiscard]] bool is_subset_of(const Pattern& other) const;

  [[nodiscard]] Pattern with(ItemId item) const;
  [[nodiscard]] Pattern union_with(const Pattern& other) const;
  /// Copy with the item at `index` dropped.
  [[nodiscard]] Pattern without_index(std::size_t index) const;

  /// "1,4,7"; empty pattern is "".
  [[nodiscard]] std::string to_string() const;
  static Pattern parse(std::string_view csv);

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<ItemId> items_;
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const noexcept;
};

struct Transaction {
  std::vector<ItemId> items;  // ascending, unique

  [[nodiscard]] bool contains(const Pattern& p) const;
};

struct TransactionDatabase {
  std::vector<Transaction> transactions;

  [[nodiscard]] std::size_t size() const { return transactions.size(); }
  /// Number of transactions containing p.
  [[nodiscard]] std::size_t support(const Pattern& p) const;
};

/// |{t in db : p ⊆ t}| / |db|. The empty pattern has frequency 1.
Rational frequency(const TransactionDatabase& db, const Pattern& p);

/// Undirected edge, always stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  static Edge make(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Malformed network input; carries the offending line when known.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& source, std::size_t line, const std::string& what);
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// G = (V, E, D, S): undirected simple graph whose vertices each carry a
/// transaction database. Immutable after construction.
class DatabaseNetwork {
 public:
  DatabaseNetwork() = default;
  /// Validates edges and databases; throws InputError. `n_items` of 0 infers
  /// the universe as max item id + 1.
  DatabaseNetwork(std::size_t n_vertices, std::vector<Edge> edges,
                  std::vector<TransactionDatabase> databases, std::size_t n_items = 0);

  [[nodiscard]] std::size_t n_vertices() const { return databases_.size(); }
  [[nodiscard]] std::size_t n_edges() const { return edges_.size(); }
  [[nodiscard]] std::size_t n_items() const { return n_items_; }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] std::span<const VertexId> neighbors(VertexId v) const;
  [[nodiscard]] const TransactionDatabase& database(VertexId v) const { return databases_[v]; }
  [[nodiscard]] std::span<const TransactionDatabase> databases() const { return databases_; }
  /// Ascending ids of vertices with at least one transaction containing item.
  [[nodiscard]] std::span<const VertexId> vertices_with_item(ItemId item) const;
  /// Ascending ids of vertices with nonzero frequency for p.
  [[nodiscard]] std::vector<VertexId> vertices_with_pattern(const Pattern& p) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<VertexId> adj_;
  std::vector<TransactionDatabase> databases_;
  std::size_t n_items_ = 0;
  std::vector<std::size_t> item_offsets_;
  std::vector<VertexId> item_vertices_;
};

/// Parses the `edges.tsv` / `tx.tsv` formats. Vertex count is the largest
/// vertex id in the transaction source plus one; edge endpoints beyond it are
/// out of range.
DatabaseNetwork load_network(std::istream& edges, std::istream& transactions,
                             const std::string& edges_name = "edges",
                             const std::string& tx_name = "tx");
DatabaseNetwork load_network_files(const std::filesystem::path& edges,
                                   const std::filesystem::path& transactions);

/// Canonical serialization: edges ascending, transactions in vertex order.
void save_network(const DatabaseNetwork& g, std::ostream& edges, std::ostream& transactions);
void save_network_files(const DatabaseNetwork& g, const std::filesystem::path& edges,
                        const std::filesystem::path& transactions);

/// SHA-256 over the canonical serialization.
std::array<std::uint8_t, 32> fingerprint(const DatabaseNetwork& g);

using ItemLabels = std::map<ItemId, std::string>;
/// `item_id<TAB>label` lines; `#` comments allowed.
ItemLabels load_item_labels(const std::filesystem::path& path);

}  // namespace themetruss
