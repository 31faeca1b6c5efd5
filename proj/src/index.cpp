#include "themetruss/index.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "themetruss/parallel.hpp"

namespace themetruss {

TCTree::TCTree() : nodes_(1) {}

Rational TCTree::max_alpha_star() const {
  Rational best(0);
  for (const auto& n : nodes_) best = std::max(best, n.decomposition.alpha_star());
  return best;
}

namespace {

bool same_subtree(const TCTree& a, std::uint32_t x, const TCTree& b, std::uint32_t y) {
  const auto& nx = a.node(x);
  const auto& ny = b.node(y);
  if (nx.item != ny.item || !(nx.decomposition == ny.decomposition) || nx.children.size() != ny.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < nx.children.size(); ++i) {
    if (!same_subtree(a, nx.children[i], b, ny.children[i])) return false;
  }
  return true;
}

}  // namespace

bool operator==(const TCTree& a, const TCTree& b) {
  return a.n_items_ == b.n_items_ && a.fingerprint_ == b.fingerprint_ && a.n_nodes() == b.n_nodes() &&
         same_subtree(a, 0, b, 0);
}

TCTree build_tctree(const DatabaseNetwork& g, const IndexBuildOptions& options) {
  TCTree tree;
  tree.n_items_ = g.n_items();
  tree.fingerprint_ = fingerprint(g);

  // layer 1: independent per item
  std::vector<std::optional<TrussDecomposition>> first(g.n_items());
  parallel_for(g.n_items(), options.threads, [&](std::size_t item) {
    auto d = decompose(induce_theme_network(g, Pattern{static_cast<ItemId>(item)}));
    if (!d.empty()) first[item] = std::move(d);
  });

  // E*p(0) of every node on the frontier, indexed by node
  std::vector<std::vector<Edge>> frontier_edges;
  std::vector<std::uint32_t> frontier;
  for (std::size_t item = 0; item < first.size(); ++item) {
    if (!first[item]) continue;
    const auto index = static_cast<std::uint32_t>(tree.nodes_.size());
    tree.nodes_.push_back(TCTreeNode{static_cast<ItemId>(item), std::move(*first[item]), {}});
    tree.nodes_[0].children.push_back(index);
    frontier.push_back(index);
  }
  auto edges_of = [&](std::uint32_t index) { return tree.nodes_[index].decomposition.edges_above(Rational(0)); };
  frontier_edges.resize(frontier.size());
  parallel_for(frontier.size(), options.threads, [&](std::size_t i) { frontier_edges[i] = edges_of(frontier[i]); });

  // parent of every frontier node, to find its siblings
  std::vector<std::uint32_t> parent_of(tree.nodes_.size(), 0);

  while (!frontier.empty()) {
    // position of each frontier node inside frontier[]
    std::vector<std::size_t> position(tree.nodes_.size(), 0);
    for (std::size_t i = 0; i < frontier.size(); ++i) position[frontier[i]] = i;

    std::vector<std::vector<TCTreeNode>> built(frontier.size());
    parallel_for(frontier.size(), options.threads, [&](std::size_t i) {
      const std::uint32_t f = frontier[i];
      const auto& siblings = tree.nodes_[parent_of[f]].children;
      const Pattern& pf = tree.nodes_[f].decomposition.pattern;
      for (std::uint32_t b : siblings) {
        if (tree.nodes_[b].item <= tree.nodes_[f].item) continue;
        std::vector<Edge> seed;
        const auto& ef = frontier_edges[i];
        const auto& eb = frontier_edges[position[b]];
        std::set_intersection(ef.begin(), ef.end(), eb.begin(), eb.end(), std::back_inserter(seed));
        if (seed.empty()) continue;
        const Pattern pc = pf.with(tree.nodes_[b].item);
        const ThemeNetwork sub = induce_on_edges(g, pc, seed);
        if (sub.edges.empty()) continue;
        auto d = decompose(sub);
        if (d.empty()) continue;
        built[i].push_back(TCTreeNode{tree.nodes_[b].item, std::move(d), {}});
      }
    });

    std::vector<std::uint32_t> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& child : built[i]) {
        const auto index = static_cast<std::uint32_t>(tree.nodes_.size());
        tree.nodes_.push_back(std::move(child));
        tree.nodes_[frontier[i]].children.push_back(index);
        next.push_back(index);
        parent_of.push_back(frontier[i]);
      }
    }
    frontier = std::move(next);
    frontier_edges.assign(frontier.size(), {});
    parallel_for(frontier.size(), options.threads, [&](std::size_t i) { frontier_edges[i] = edges_of(frontier[i]); });
  }
  return tree;
}

QueryAnswer query_tctree(const TCTree& tree, const Pattern& q, const Rational& alpha) {
  QueryAnswer answer;
  answer.query_pattern = q;
  answer.alpha = alpha;
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const std::uint32_t f = queue.front();
    queue.pop_front();
    for (std::uint32_t c : tree.node(f).children) {
      const TCTreeNode& child = tree.node(c);
      if (!q.contains(child.item)) continue;
      // C*p(alpha) is nonempty exactly when some level lies above alpha
      if (child.decomposition.levels.empty() || !(child.decomposition.alpha_star() > alpha)) continue;
      auto truss = reconstruct(child.decomposition, alpha);
      answer.visit_order.push_back(truss.pattern);
      answer.trusses.emplace(truss.pattern, std::move(truss));
      ++answer.retrieved_nodes;
      queue.push_back(c);
    }
  }
  return answer;
}

Pattern full_pattern(const TCTree& tree) {
  std::vector<ItemId> items(tree.n_items());
  for (std::size_t i = 0; i < items.size(); ++i) items[i] = static_cast<ItemId>(i);
  return Pattern(std::move(items));
}

}  // namespace themetruss
