#include "themetruss/truss.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace themetruss {

Rational ThemeNetwork::frequency_of(VertexId v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return Rational(0);
  return freq[static_cast<std::size_t>(it - vertices.begin())];
}

std::vector<VertexId> incident_vertices(std::span<const Edge> edges) {
  std::vector<VertexId> out;
  out.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    out.push_back(e.u);
    out.push_back(e.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ThemeNetwork induce_theme_network(const DatabaseNetwork& g, const Pattern& p) {
  ThemeNetwork gp;
  gp.pattern = p;
  gp.vertices = g.vertices_with_pattern(p);
  gp.freq.reserve(gp.vertices.size());
  for (VertexId v : gp.vertices) gp.freq.push_back(frequency(g.database(v), p));
  for (VertexId u : gp.vertices) {
    for (VertexId w : g.neighbors(u)) {
      if (w > u && std::binary_search(gp.vertices.begin(), gp.vertices.end(), w)) {
        gp.edges.push_back(Edge{u, w});
      }
    }
  }
  return gp;
}

ThemeNetwork induce_on_edges(const DatabaseNetwork& g, const Pattern& p, std::span<const Edge> edges) {
  ThemeNetwork gp;
  gp.pattern = p;
  for (VertexId v : incident_vertices(edges)) {
    Rational f = frequency(g.database(v), p);
    if (f.is_zero()) continue;
    gp.vertices.push_back(v);
    gp.freq.push_back(f);
  }
  for (const Edge& e : edges) {
    if (std::binary_search(gp.vertices.begin(), gp.vertices.end(), e.u) &&
        std::binary_search(gp.vertices.begin(), gp.vertices.end(), e.v)) {
      gp.edges.push_back(e);
    }
  }
  return gp;
}

namespace {

std::uint32_t local_index(const std::vector<VertexId>& vertices, VertexId v) {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) {
    throw std::invalid_argument("edge endpoint " + std::to_string(v) + " not among network vertices");
  }
  return static_cast<std::uint32_t>(it - vertices.begin());
}

const Rational& min3(const Rational& a, const Rational& b, const Rational& c) {
  const Rational& ab = b < a ? b : a;
  return c < ab ? c : ab;
}

}  // namespace

Rational edge_cohesion(const ThemeNetwork& c, Edge e) {
  std::vector<VertexId> nu;
  std::vector<VertexId> nv;
  for (const Edge& x : c.edges) {
    if (x.u == e.u) nu.push_back(x.v);
    if (x.v == e.u) nu.push_back(x.u);
    if (x.u == e.v) nv.push_back(x.v);
    if (x.v == e.v) nv.push_back(x.u);
  }
  std::sort(nu.begin(), nu.end());
  std::sort(nv.begin(), nv.end());
  std::vector<VertexId> common;
  std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
  const Rational fu = c.frequency_of(e.u);
  const Rational fv = c.frequency_of(e.v);
  Rational sum;
  for (VertexId w : common) sum += min3(fu, fv, c.frequency_of(w));
  return sum;
}

std::vector<Rational> edge_cohesions(const ThemeNetwork& c) {
  const std::size_t n = c.vertices.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const Edge& e : c.edges) {
    const auto a = local_index(c.vertices, e.u);
    const auto b = local_index(c.vertices, e.v);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  std::vector<Rational> out;
  out.reserve(c.edges.size());
  std::vector<std::uint32_t> common;
  for (const Edge& e : c.edges) {
    const auto a = local_index(c.vertices, e.u);
    const auto b = local_index(c.vertices, e.v);
    common.clear();
    std::set_intersection(adj[a].begin(), adj[a].end(), adj[b].begin(), adj[b].end(),
                          std::back_inserter(common));
    Rational sum;
    for (auto w : common) sum += min3(c.freq[a], c.freq[b], c.freq[w]);
    out.push_back(sum);
  }
  return out;
}

// ------------------------------------------------------------ TrussPeeler

TrussPeeler::TrussPeeler(const ThemeNetwork& network)
    : vertex_ids_(network.vertices), freq_(network.freq) {
  if (freq_.size() != vertex_ids_.size()) throw std::invalid_argument("frequency list size mismatch");
  if (!std::is_sorted(vertex_ids_.begin(), vertex_ids_.end())) {
    std::vector<std::size_t> order(vertex_ids_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vertex_ids_[a] < vertex_ids_[b]; });
    std::vector<VertexId> ids;
    std::vector<Rational> f;
    for (auto i : order) {
      ids.push_back(vertex_ids_[i]);
      f.push_back(freq_[i]);
    }
    vertex_ids_ = std::move(ids);
    freq_ = std::move(f);
  }

  const std::size_t n = vertex_ids_.size();
  const std::size_t m = network.edges.size();
  src_.resize(m);
  dst_.resize(m);
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t e = 0; e < m; ++e) {
    src_[e] = local_index(vertex_ids_, network.edges[e].u);
    dst_[e] = local_index(vertex_ids_, network.edges[e].v);
    ++degree[src_[e]];
    ++degree[dst_[e]];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  arcs_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < m; ++e) {
    arcs_[cursor[src_[e]]++] = Arc{dst_[e], static_cast<std::uint32_t>(e)};
    arcs_[cursor[dst_[e]]++] = Arc{src_[e], static_cast<std::uint32_t>(e)};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }

  alive_.assign(m, 1);
  queued_.assign(m, 0);
  live_count_ = m;
  cohesion_.assign(m, Rational(0));
  for (std::size_t e = 0; e < m; ++e) {
    Rational sum;
    for_each_triangle(static_cast<std::uint32_t>(e),
                      [&](std::uint32_t, std::uint32_t, const Rational& w) { sum += w; });
    cohesion_[e] = sum;
  }
}

template <typename Fn>
void TrussPeeler::for_each_triangle(std::uint32_t edge, Fn&& fn) const {
  const std::uint32_t a = src_[edge];
  const std::uint32_t b = dst_[edge];
  std::size_t i = offsets_[a];
  std::size_t j = offsets_[b];
  const std::size_t iend = offsets_[a + 1];
  const std::size_t jend = offsets_[b + 1];
  while (i < iend && j < jend) {
    const Arc& x = arcs_[i];
    const Arc& y = arcs_[j];
    if (x.to < y.to) {
      ++i;
    } else if (y.to < x.to) {
      ++j;
    } else {
      if (alive_[x.edge] && alive_[y.edge]) fn(x.edge, y.edge, min3(freq_[a], freq_[b], freq_[x.to]));
      ++i;
      ++j;
    }
  }
}

std::vector<Edge> TrussPeeler::peel(const Rational& threshold) {
  std::vector<std::uint32_t> queue;
  for (std::uint32_t e = 0; e < cohesion_.size(); ++e) {
    if (alive_[e] && cohesion_[e] <= threshold) {
      queued_[e] = 1;
      queue.push_back(e);
    }
  }
  std::vector<Edge> removed;
  removed.reserve(queue.size());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t e = queue[head];
    for_each_triangle(e, [&](std::uint32_t ea, std::uint32_t eb, const Rational& w) {
      for (std::uint32_t other : {ea, eb}) {
        cohesion_[other] -= w;
        if (!queued_[other] && cohesion_[other] <= threshold) {
          queued_[other] = 1;
          queue.push_back(other);
        }
      }
    });
    alive_[e] = 0;
    --live_count_;
    removed.push_back(Edge::make(vertex_ids_[src_[e]], vertex_ids_[dst_[e]]));
  }
  return removed;
}

std::optional<Rational> TrussPeeler::min_cohesion() const {
  std::optional<Rational> best;
  for (std::size_t e = 0; e < cohesion_.size(); ++e) {
    if (alive_[e] && (!best || cohesion_[e] < *best)) best = cohesion_[e];
  }
  return best;
}

void TrussPeeler::surviving(std::vector<Edge>& edges, std::vector<Rational>& cohesion) const {
  std::vector<std::pair<Edge, std::uint32_t>> live;
  live.reserve(live_count_);
  for (std::uint32_t e = 0; e < cohesion_.size(); ++e) {
    if (alive_[e]) live.emplace_back(Edge::make(vertex_ids_[src_[e]], vertex_ids_[dst_[e]]), e);
  }
  std::sort(live.begin(), live.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  edges.clear();
  cohesion.clear();
  for (const auto& [edge, id] : live) {
    edges.push_back(edge);
    cohesion.push_back(cohesion_[id]);
  }
}

// ------------------------------------------------------------------ MPTD

MaximalPatternTruss mptd(const ThemeNetwork& gp, const Rational& alpha, std::vector<Edge>* removal_log) {
  TrussPeeler peeler(gp);
  auto removed = peeler.peel(alpha);
  if (removal_log) removal_log->insert(removal_log->end(), removed.begin(), removed.end());
  MaximalPatternTruss truss;
  truss.pattern = gp.pattern;
  truss.alpha = alpha;
  peeler.surviving(truss.edges, truss.cohesion);
  truss.vertices = incident_vertices(truss.edges);
  return truss;
}

// ----------------------------------------------------------- communities

namespace {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // root is the smallest local index
  }
};

}  // namespace

std::vector<ThemeCommunity> extract_communities(const MaximalPatternTruss& truss) {
  const auto& vs = truss.vertices;
  DisjointSets sets(vs.size());
  for (const Edge& e : truss.edges) sets.unite(local_index(vs, e.u), local_index(vs, e.v));

  std::vector<std::int64_t> slot(vs.size(), -1);
  std::vector<ThemeCommunity> out;
  for (std::uint32_t i = 0; i < vs.size(); ++i) {
    const auto root = sets.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int64_t>(out.size());
      out.push_back(ThemeCommunity{truss.pattern, {}, {}});
    }
    out[static_cast<std::size_t>(slot[root])].vertices.push_back(vs[i]);
  }
  for (const Edge& e : truss.edges) {
    const auto root = sets.find(local_index(vs, e.u));
    out[static_cast<std::size_t>(slot[root])].edges.push_back(e);
  }
  return out;
}

void attach_cohesion(MaximalPatternTruss& truss, const DatabaseNetwork& g) {
  const ThemeNetwork sub = induce_on_edges(g, truss.pattern, truss.edges);
  if (sub.edges.size() != truss.edges.size()) {
    throw std::invalid_argument("truss contains a vertex without the pattern");
  }
  truss.cohesion = edge_cohesions(sub);
}

}  // namespace themetruss
