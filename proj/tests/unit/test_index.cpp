#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "helpers.hpp"
#include "themetruss/index.hpp"
#include "themetruss/miners.hpp"

using namespace themetruss;
using namespace testing_util;

namespace {

const std::vector<Rational> kAlphas{Rational(0), Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(1),
                                    Rational(2)};

std::string error_of(const std::vector<std::uint8_t>& bytes) {
  try {
    load_index(bytes);
  } catch (const IndexFormatError& e) {
    return e.what();
  }
  return "";
}

const TCTreeNode* find(const TCTree& tree, const Pattern& p) {
  const TCTreeNode* node = &tree.root();
  for (ItemId item : p.items()) {
    const TCTreeNode* next = nullptr;
    for (auto c : node->children)
      if (tree.node(c).item == item) next = &tree.node(c);
    if (!next) return nullptr;
    node = next;
  }
  return node;
}

}  // namespace

TEST_SUITE("index") {
  TEST_CASE("SE-tree shape with one item never in a triangle") {
    // items 0, 2, 3 shared on a triangle; item 1 only on a pendant path
    std::vector<TransactionDatabase> dbs(5);
    for (VertexId v = 0; v < 3; ++v) dbs[v].transactions = {Transaction{{0, 2, 3}}};
    dbs[3].transactions = {Transaction{{1}}};
    dbs[4].transactions = {Transaction{{1, 2}}};
    std::vector<Edge> edges = clique_edges(3);
    edges.push_back(Edge{2, 3});
    edges.push_back(Edge{3, 4});
    const DatabaseNetwork g(5, edges, dbs);
    const TCTree tree = build_tctree(g);
    CHECK(tree.n_nodes() == 7);
    CHECK(find(tree, Pattern{1}) == nullptr);
    CHECK(find(tree, Pattern{0, 1}) == nullptr);
    const TCTreeNode* n13 = find(tree, Pattern{0, 2, 3});
    REQUIRE(n13 != nullptr);
    CHECK(n13->decomposition.pattern == Pattern{0, 2, 3});
    CHECK(n13->item == 3);
    // children ascend by item
    for (const auto& node : tree.nodes()) {
      for (std::size_t i = 0; i + 1 < node.children.size(); ++i)
        CHECK(tree.node(node.children[i]).item < tree.node(node.children[i + 1]).item);
      for (auto c : node.children) {
        if (node.item != kNoItem) CHECK(tree.node(c).item > node.item);
        CHECK_FALSE(tree.node(c).decomposition.empty());
      }
    }
  }

  TEST_CASE("no triangles gives a bare root") {
    const auto g = uniform_network(3, {Edge{0, 1}, Edge{1, 2}}, {{0, 1}});
    const TCTree tree = build_tctree(g);
    CHECK(tree.n_nodes() == 0);
    CHECK(query_tctree(tree, full_pattern(tree), Rational(0)).trusses.empty());
  }

  TEST_CASE("query matches exhaustive mining") {
    std::mt19937_64 rng(200);
    for (int round = 0; round < 60; ++round) {
      const DatabaseNetwork g = oracle::random_network(rng);
      const TCTree tree = build_tctree(g);
      CHECK(tree.n_nodes() == oracle::mine(g, Rational(0)).size());
      std::size_t prev_retrieved = SIZE_MAX;
      for (const Rational& alpha : kAlphas) {
        const auto expect = oracle::mine(g, alpha);
        const auto all = query_tctree(tree, full_pattern(tree), alpha);
        CHECK(oracle::edge_map(all.trusses) == expect);
        CHECK(all.retrieved_nodes == all.trusses.size());
        CHECK(all.retrieved_nodes <= prev_retrieved);
        prev_retrieved = all.retrieved_nodes;
        CHECK(all.visit_order.size() == all.trusses.size());
        for (std::size_t i = 1; i < all.visit_order.size(); ++i)
          CHECK(all.visit_order[i - 1].size() <= all.visit_order[i].size());

        for (int trial = 0; trial < 4; ++trial) {
          std::vector<ItemId> items;
          for (ItemId i = 0; i < g.n_items(); ++i)
            if (rng() % 2) items.push_back(i);
          const Pattern q(items);
          oracle::EdgeMap filtered;
          for (const auto& [p, e] : expect)
            if (p.is_subset_of(q)) filtered.emplace(p, e);
          const auto sub = query_tctree(tree, q, alpha);
          CHECK(oracle::edge_map(sub.trusses) == filtered);
          for (const auto& [p, t] : sub.trusses) CHECK(all.trusses.count(p) == 1);
        }
      }
      if (tree.n_nodes() > 0) CHECK(query_tctree(tree, full_pattern(tree), tree.max_alpha_star()).trusses.empty());
    }
  }

  TEST_CASE("single-item query returns at most that item") {
    const auto g = uniform_network(3, clique_edges(3), {{0, 1, 2}});
    const TCTree tree = build_tctree(g);
    CHECK(tree.n_nodes() == 7);
    const auto a = query_tctree(tree, Pattern{1}, Rational(0));
    REQUIRE(a.trusses.size() == 1);
    CHECK(a.trusses.begin()->first == Pattern{1});
    CHECK(query_tctree(tree, Pattern{9}, Rational(0)).trusses.empty());
  }

  TEST_CASE("threaded build and persistence are byte-identical") {
    std::mt19937_64 rng(201);
    for (int round = 0; round < 20; ++round) {
      const DatabaseNetwork g = oracle::random_network(rng);
      IndexBuildOptions one, many;
      one.threads = 1;
      many.threads = 4;
      const TCTree a = build_tctree(g, one);
      const TCTree b = build_tctree(g, many);
      const auto bytes = save_index(a);
      CHECK(bytes == save_index(b));
      const TCTree back = load_index(bytes);
      CHECK(back == a);
      CHECK(save_index(back) == bytes);
    }
  }

  TEST_CASE("load rejects damaged files") {
    const auto g = uniform_network(4, clique_edges(4), {{0, 1}, {1}});
    const auto bytes = save_index(build_tctree(g));

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK(error_of(bad_magic).find("magic") != std::string::npos);

    auto bad_version = bytes;
    bad_version[8] = 9;
    CHECK(error_of(bad_version).find("version") != std::string::npos);

    for (std::size_t pos : {std::size_t{20}, bytes.size() / 2, bytes.size() - 9, bytes.size() - 1}) {
      auto flipped = bytes;
      flipped[pos] ^= 0x10;
      CHECK(error_of(flipped).find("checksum") != std::string::npos);
    }

    for (std::size_t len : {std::size_t{0}, std::size_t{5}, std::size_t{30}, bytes.size() - 1}) {
      const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(len));
      CHECK_FALSE(error_of(cut).empty());
    }
    CHECK(error_of(bytes).empty());
  }

  TEST_CASE("crc64 check value") {
    const std::string text = "123456789";
    const std::vector<std::uint8_t> data(text.begin(), text.end());
    CHECK(crc64(data) == 0x995DC9BBDF1939FAULL);
  }
}
