#include "themetruss/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

namespace themetruss {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kSeedStream = 2;
constexpr std::uint64_t kDatabaseStream = 3;

/// k distinct values from [0, n), Floyd's algorithm, in random order.
std::vector<ItemId> sample_distinct(SplitRng& rng, std::size_t n, std::size_t k) {
  std::unordered_set<ItemId> chosen;
  std::vector<ItemId> out;
  out.reserve(k);
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<ItemId>(rng.below(j + 1));
    if (chosen.insert(t).second) {
      out.push_back(t);
    } else {
      chosen.insert(static_cast<ItemId>(j));
      out.push_back(static_cast<ItemId>(j));
    }
  }
  return out;
}

}  // namespace

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (stream * 0xd1b54a32d192ed03ULL);
  engine_.seed(splitmix64(state));
}

std::uint64_t SplitRng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double SplitRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t ceil_exp(double coeff, std::size_t degree) {
  return static_cast<std::size_t>(std::ceil(std::exp(coeff * static_cast<double>(degree))));
}

void validate(const SynthConfig& cfg) {
  const std::size_t n = cfg.n_vertices;
  if (n == 0) throw ConfigError("n_vertices must be >= 1");
  if (cfg.n_items == 0) throw ConfigError("n_items must be >= 1");
  if (cfg.n_seeds == 0) throw ConfigError("n_seeds must be >= 1");
  if (cfg.n_seeds > n) throw ConfigError("n_seeds (" + std::to_string(cfg.n_seeds) + ") exceeds n_vertices (" +
                                         std::to_string(n) + ")");
  if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0)) throw ConfigError("mutation_rate must be in [0, 1]");
  if (!(cfg.tx_count_coeff >= 0.0) || !(cfg.tx_len_coeff >= 0.0) || !std::isfinite(cfg.tx_count_coeff) ||
      !std::isfinite(cfg.tx_len_coeff)) {
    throw ConfigError("transaction coefficients must be finite and >= 0");
  }
  if (cfg.n_edges + 1 < n) throw ConfigError("n_edges must be at least n_vertices - 1");
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (cfg.n_edges > max_edges) throw ConfigError("n_edges exceeds the simple-graph maximum");
}

DatabaseNetwork generate(const SynthConfig& cfg, SynthReport* report) {
  validate(cfg);
  const std::size_t n = cfg.n_vertices;

  // graph: random recursive spanning tree, then uniform extra edges
  SplitRng graph_rng(cfg.rng_seed, kGraphStream);
  std::vector<VertexId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[graph_rng.below(i)]);
  std::unordered_set<std::uint64_t> keys;
  std::vector<Edge> edges;
  edges.reserve(cfg.n_edges);
  auto add = [&](VertexId a, VertexId b) {
    const Edge e = Edge::make(a, b);
    if (keys.insert((std::uint64_t{e.u} << 32) | e.v).second) edges.push_back(e);
  };
  for (std::size_t i = 1; i < n; ++i) add(order[i], order[graph_rng.below(i)]);
  while (edges.size() < cfg.n_edges) {
    const auto a = static_cast<VertexId>(graph_rng.below(n));
    const auto b = static_cast<VertexId>(graph_rng.below(n));
    if (a != b) add(a, b);
  }
  std::sort(edges.begin(), edges.end());

  std::vector<std::vector<VertexId>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  SynthReport local_report;
  auto tx_length = [&](std::size_t d) {
    const std::size_t len = ceil_exp(cfg.tx_len_coeff, d);
    if (len > cfg.n_items) {
      ++local_report.clamped_vertices;
      return cfg.n_items;
    }
    return len;
  };

  // seeds
  SplitRng seed_rng(cfg.rng_seed, kSeedStream);
  std::vector<VertexId> seeds = sample_distinct(seed_rng, n, cfg.n_seeds);

  SplitRng db_rng(cfg.rng_seed, kDatabaseStream);
  std::vector<TransactionDatabase> dbs(n);
  std::vector<char> built(n, 0);
  std::vector<char> discovered(n, 0);
  std::deque<VertexId> queue;

  for (VertexId s : seeds) {
    const std::size_t d = adj[s].size();
    const std::size_t count = ceil_exp(cfg.tx_count_coeff, d);
    const std::size_t len = tx_length(d);
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t k = cfg.seed_length == SeedLength::kUniform ? 1 + db_rng.below(len) : len;
      Transaction tx{sample_distinct(db_rng, cfg.n_items, k)};
      std::sort(tx.items.begin(), tx.items.end());
      dbs[s].transactions.push_back(std::move(tx));
    }
    built[s] = 1;
    discovered[s] = 1;
    queue.push_back(s);
  }

  std::vector<const Transaction*> pool;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    if (!built[v]) {
      pool.clear();
      for (VertexId w : adj[v]) {
        if (!built[w]) continue;
        for (const auto& t : dbs[w].transactions) pool.push_back(&t);
      }
      const std::size_t d = adj[v].size();
      const std::size_t count = ceil_exp(cfg.tx_count_coeff, d);
      const std::size_t len = tx_length(d);
      for (std::size_t t = 0; t < count; ++t) {
        const Transaction& source = *pool[db_rng.below(pool.size())];
        std::vector<ItemId> items;
        items.reserve(source.items.size());
        for (ItemId item : source.items) {
          if (cfg.n_items > 1 && db_rng.unit() < cfg.mutation_rate) {
            auto replacement = static_cast<ItemId>(db_rng.below(cfg.n_items - 1));
            if (replacement >= item) ++replacement;
            items.push_back(replacement);
          } else {
            items.push_back(item);
          }
        }
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
        if (items.size() > len) {
          // keep a random subset of the target size
          for (std::size_t i = 0; i < len; ++i) std::swap(items[i], items[i + db_rng.below(items.size() - i)]);
          items.resize(len);
        }
        while (items.size() < len) {
          const auto item = static_cast<ItemId>(db_rng.below(cfg.n_items));
          if (std::find(items.begin(), items.end(), item) == items.end()) items.push_back(item);
        }
        std::sort(items.begin(), items.end());
        dbs[v].transactions.push_back(Transaction{std::move(items)});
      }
      built[v] = 1;
    }
    for (VertexId w : adj[v]) {
      if (!discovered[w]) {
        discovered[w] = 1;
        queue.push_back(w);
      }
    }
  }
  if (report) *report = local_report;
  return DatabaseNetwork(n, std::move(edges), std::move(dbs), cfg.n_items);
}

}  // namespace themetruss
