#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "themetruss/decompose.hpp"

namespace themetruss {

inline constexpr std::uint32_t kNoItem = 0xFFFFFFFFu;

struct IndexBuildOptions {
  /// OpenMP workers for layer 1 and per-parent child construction.
  int threads = 0;
};

/// One SE-tree node. The pattern is the union of the items on the root path
/// and is cached in decomposition.pattern.
struct TCTreeNode {
  ItemId item = kNoItem;
  TrussDecomposition decomposition;
  std::vector<std::uint32_t> children;  // node indices, ascending by item
};

/// TC-Tree: nodes live in a flat arena, index 0 is the root (empty pattern,
/// empty decomposition). Only patterns with nonempty C*p(0) get a node.
class TCTree {
 public:
  TCTree();

  [[nodiscard]] const TCTreeNode& root() const { return nodes_.front(); }
  [[nodiscard]] const TCTreeNode& node(std::uint32_t index) const { return nodes_[index]; }
  [[nodiscard]] std::span<const TCTreeNode> nodes() const { return nodes_; }
  /// Pattern nodes, excluding the root.
  [[nodiscard]] std::size_t n_nodes() const { return nodes_.size() - 1; }
  [[nodiscard]] std::size_t n_items() const { return n_items_; }
  [[nodiscard]] const std::array<std::uint8_t, 32>& source_fingerprint() const { return fingerprint_; }
  /// Largest alpha* over all nodes.
  [[nodiscard]] Rational max_alpha_star() const;

  friend bool operator==(const TCTree& a, const TCTree& b);

 private:
  friend TCTree build_tctree(const DatabaseNetwork&, const IndexBuildOptions&);
  friend TCTree load_index(std::span<const std::uint8_t>);

  std::vector<TCTreeNode> nodes_;
  std::size_t n_items_ = 0;
  std::array<std::uint8_t, 32> fingerprint_{};
};

TCTree build_tctree(const DatabaseNetwork& g, const IndexBuildOptions& options = {});

struct QueryAnswer {
  Pattern query_pattern;
  Rational alpha;
  std::map<Pattern, MaximalPatternTruss> trusses;
  /// Patterns in the order the breadth-first traversal produced them.
  std::vector<Pattern> visit_order;
  std::size_t retrieved_nodes = 0;
};

/// All nonempty C*p(alpha) with p ⊆ q, traversing only children whose item is
/// in q and pruning subtrees whose truss vanishes.
QueryAnswer query_tctree(const TCTree& tree, const Pattern& q, const Rational& alpha);

/// Pattern containing every item of the tree's universe.
Pattern full_pattern(const TCTree& tree);

class IndexFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kIndexFormatVersion = 1;

/// Little-endian binary, see README for the layout.
std::vector<std::uint8_t> save_index(const TCTree& tree);
TCTree load_index(std::span<const std::uint8_t> bytes);

void save_index_file(const TCTree& tree, const std::filesystem::path& path);
TCTree load_index_file(const std::filesystem::path& path);

/// CRC-64/XZ of a byte range.
std::uint64_t crc64(std::span<const std::uint8_t> bytes);

}  // namespace themetruss
