#include "themetruss/model.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace themetruss {

// ---------------------------------------------------------------- Pattern

Pattern::Pattern(std::vector<ItemId> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool Pattern::contains(ItemId item) const {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool Pattern::is_subset_of(const Pattern& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

Pattern Pattern::with(ItemId item) const {
  Pattern out;
  out.items_.reserve(items_.size() + 1);
  auto pos = std::lower_bound(items_.begin(), items_.end(), item);
  out.items_.assign(items_.begin(), pos);
  if (pos == items_.end() || *pos != item) out.items_.push_back(item);
  out.items_.insert(out.items_.end(), pos, items_.end());
  return out;
}

Pattern Pattern::union_with(const Pattern& other) const {
  Pattern out;
  out.items_.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(out.items_));
  return out;
}

Pattern Pattern::without_index(std::size_t index) const {
  Pattern out;
  out.items_.reserve(items_.size() - 1);
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i != index) out.items_.push_back(items_[i]);
  }
  return out;
}

std::string Pattern::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(items_[i]);
  }
  return out;
}

namespace {

bool parse_u32(std::string_view text, std::uint32_t& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Pattern Pattern::parse(std::string_view csv) {
  std::vector<ItemId> items;
  while (!csv.empty()) {
    const auto comma = csv.find(',');
    const auto token = csv.substr(0, comma);
    ItemId id = 0;
    if (!parse_u32(token, id)) throw InputError("invalid item id '" + std::string(token) + "'");
    items.push_back(id);
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
    if (csv.empty()) throw InputError("trailing comma in pattern");
  }
  return Pattern(std::move(items));
}

std::size_t PatternHash::operator()(const Pattern& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (ItemId item : p.items()) {
    h ^= item + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ----------------------------------------------------------- Transactions

bool Transaction::contains(const Pattern& p) const {
  const auto pi = p.items();
  return std::includes(items.begin(), items.end(), pi.begin(), pi.end());
}

std::size_t TransactionDatabase::support(const Pattern& p) const {
  return static_cast<std::size_t>(std::count_if(
      transactions.begin(), transactions.end(), [&](const Transaction& t) { return t.contains(p); }));
}

Rational frequency(const TransactionDatabase& db, const Pattern& p) {
  if (db.size() == 0) return Rational(0);
  return Rational(static_cast<Rational::Int>(db.support(p)), static_cast<Rational::Int>(db.size()));
}

// ---------------------------------------------------------------- Network

InputError::InputError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {}

DatabaseNetwork::DatabaseNetwork(std::size_t n_vertices, std::vector<Edge> edges,
                                 std::vector<TransactionDatabase> databases, std::size_t n_items)
    : edges_(std::move(edges)), databases_(std::move(databases)) {
  if (databases_.size() != n_vertices) {
    throw InputError("expected " + std::to_string(n_vertices) + " databases, got " +
                     std::to_string(databases_.size()));
  }
  for (Edge& e : edges_) {
    if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(e.u));
    e = Edge::make(e.u, e.v);
    if (e.v >= n_vertices) throw InputError("vertex id " + std::to_string(e.v) + " out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw InputError("duplicate edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
  }

  ItemId max_item = 0;
  bool any_item = false;
  for (std::size_t v = 0; v < databases_.size(); ++v) {
    if (databases_[v].size() == 0) {
      throw InputError("vertex " + std::to_string(v) + " has no transactions");
    }
    for (Transaction& t : databases_[v].transactions) {
      if (t.items.empty()) throw InputError("vertex " + std::to_string(v) + " has an empty transaction");
      std::sort(t.items.begin(), t.items.end());
      if (std::adjacent_find(t.items.begin(), t.items.end()) != t.items.end()) {
        throw InputError("duplicate item in a transaction of vertex " + std::to_string(v));
      }
      max_item = std::max(max_item, t.items.back());
      any_item = true;
    }
  }
  const std::size_t inferred = any_item ? std::size_t{max_item} + 1 : 0;
  if (n_items != 0 && n_items < inferred) {
    throw InputError("item id " + std::to_string(max_item) + " outside universe of size " +
                     std::to_string(n_items));
  }
  n_items_ = n_items != 0 ? n_items : inferred;

  std::vector<std::size_t> degree(n_vertices, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  adj_offsets_.assign(n_vertices + 1, 0);
  for (std::size_t v = 0; v < n_vertices; ++v) adj_offsets_[v + 1] = adj_offsets_[v] + degree[v];
  adj_.resize(adj_offsets_.back());
  std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[cursor[e.u]++] = e.v;
    adj_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n_vertices; ++v) {
    std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v]),
              adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v + 1]));
  }

  // inverted index: item -> vertices carrying it
  std::vector<std::vector<VertexId>> by_item(n_items_);
  for (std::size_t v = 0; v < n_vertices; ++v) {
    std::vector<ItemId> seen;
    for (const Transaction& t : databases_[v].transactions) seen.insert(seen.end(), t.items.begin(), t.items.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (ItemId item : seen) by_item[item].push_back(static_cast<VertexId>(v));
  }
  item_offsets_.assign(n_items_ + 1, 0);
  for (std::size_t i = 0; i < n_items_; ++i) item_offsets_[i + 1] = item_offsets_[i] + by_item[i].size();
  item_vertices_.reserve(item_offsets_.back());
  for (auto& list : by_item) item_vertices_.insert(item_vertices_.end(), list.begin(), list.end());
}

std::span<const VertexId> DatabaseNetwork::neighbors(VertexId v) const {
  return std::span<const VertexId>(adj_).subspan(adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]);
}

std::span<const VertexId> DatabaseNetwork::vertices_with_item(ItemId item) const {
  if (item >= n_items_) return {};
  return std::span<const VertexId>(item_vertices_)
      .subspan(item_offsets_[item], item_offsets_[item + 1] - item_offsets_[item]);
}

std::vector<VertexId> DatabaseNetwork::vertices_with_pattern(const Pattern& p) const {
  std::vector<VertexId> candidates;
  if (p.empty()) {
    candidates.resize(n_vertices());
    for (std::size_t v = 0; v < candidates.size(); ++v) candidates[v] = static_cast<VertexId>(v);
    return candidates;
  }
  // start from the rarest item
  const auto items = p.items();
  ItemId rarest = items[0];
  for (ItemId item : items) {
    if (vertices_with_item(item).size() < vertices_with_item(rarest).size()) rarest = item;
  }
  const auto base = vertices_with_item(rarest);
  candidates.assign(base.begin(), base.end());
  if (p.size() == 1) return candidates;
  std::vector<VertexId> scratch;
  for (ItemId item : items) {
    if (item == rarest) continue;
    const auto list = vertices_with_item(item);
    scratch.clear();
    std::set_intersection(candidates.begin(), candidates.end(), list.begin(), list.end(),
                          std::back_inserter(scratch));
    candidates.swap(scratch);
    if (candidates.empty()) return candidates;
  }
  std::erase_if(candidates, [&](VertexId v) { return databases_[v].support(p) == 0; });
  return candidates;
}

// -------------------------------------------------------------------- I/O

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

/// Splits at the first run of spaces/tabs.
std::pair<std::string_view, std::string_view> split_field(std::string_view s) {
  const auto pos = s.find_first_of(" \t");
  if (pos == std::string_view::npos) return {s, {}};
  return {s.substr(0, pos), trim(s.substr(pos))};
}

}  // namespace

DatabaseNetwork load_network(std::istream& edges_in, std::istream& tx_in, const std::string& edges_name,
                             const std::string& tx_name) {
  std::vector<TransactionDatabase> dbs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(tx_in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto [vfield, items] = split_field(view);
    VertexId v = 0;
    if (!parse_u32(vfield, v)) throw InputError(tx_name, lineno, "invalid vertex id '" + std::string(vfield) + "'");
    if (items.empty()) throw InputError(tx_name, lineno, "empty transaction");
    Transaction t;
    std::string_view rest = items;
    while (true) {
      const auto comma = rest.find(',');
      const auto token = trim(rest.substr(0, comma));
      ItemId item = 0;
      if (!parse_u32(token, item)) throw InputError(tx_name, lineno, "invalid item id '" + std::string(token) + "'");
      t.items.push_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    std::sort(t.items.begin(), t.items.end());
    if (std::adjacent_find(t.items.begin(), t.items.end()) != t.items.end()) {
      throw InputError(tx_name, lineno, "duplicate item within transaction");
    }
    if (v >= dbs.size()) dbs.resize(std::size_t{v} + 1);
    dbs[v].transactions.push_back(std::move(t));
  }
  for (std::size_t v = 0; v < dbs.size(); ++v) {
    if (dbs[v].size() == 0) throw InputError(tx_name + ": vertex " + std::to_string(v) + " has no transactions");
  }
  const std::size_t n = dbs.size();

  std::vector<Edge> edges;
  std::set<Edge> seen;
  lineno = 0;
  while (std::getline(edges_in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto [a, rest] = split_field(view);
    auto [b, extra] = split_field(rest);
    VertexId u = 0;
    VertexId w = 0;
    if (!parse_u32(a, u) || !parse_u32(b, w) || !extra.empty()) {
      throw InputError(edges_name, lineno, "malformed edge line '" + std::string(view) + "'");
    }
    if (u == w) throw InputError(edges_name, lineno, "self-loop on vertex " + std::to_string(u));
    if (u >= n || w >= n) {
      throw InputError(edges_name, lineno,
                       "vertex id " + std::to_string(std::max(u, w)) + " out of range (n=" + std::to_string(n) + ")");
    }
    const Edge e = Edge::make(u, w);
    if (!seen.insert(e).second) {
      throw InputError(edges_name, lineno, "duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    edges.push_back(e);
  }
  return DatabaseNetwork(n, std::move(edges), std::move(dbs));
}

DatabaseNetwork load_network_files(const std::filesystem::path& edges, const std::filesystem::path& transactions) {
  std::ifstream ein(edges);
  if (!ein) throw InputError("cannot open " + edges.string());
  std::ifstream tin(transactions);
  if (!tin) throw InputError("cannot open " + transactions.string());
  return load_network(ein, tin, edges.string(), transactions.string());
}

void save_network(const DatabaseNetwork& g, std::ostream& edges, std::ostream& transactions) {
  for (const Edge& e : g.edges()) edges << e.u << '\t' << e.v << '\n';
  for (std::size_t v = 0; v < g.n_vertices(); ++v) {
    for (const Transaction& t : g.database(static_cast<VertexId>(v)).transactions) {
      transactions << v << '\t';
      for (std::size_t i = 0; i < t.items.size(); ++i) {
        if (i) transactions << ',';
        transactions << t.items[i];
      }
      transactions << '\n';
    }
  }
}

void save_network_files(const DatabaseNetwork& g, const std::filesystem::path& edges,
                        const std::filesystem::path& transactions) {
  std::ofstream eout(edges, std::ios::binary);
  std::ofstream tout(transactions, std::ios::binary);
  if (!eout || !tout) throw InputError("cannot write network files");
  save_network(g, eout, tout);
}

std::array<std::uint8_t, 32> fingerprint(const DatabaseNetwork& g) {
  std::ostringstream edges;
  std::ostringstream tx;
  save_network(g, edges, tx);
  const std::string payload = edges.str() + "\n--\n" + tx.str();
  std::array<std::uint8_t, 32> digest{};
  unsigned int len = 0;
  EVP_Digest(payload.data(), payload.size(), digest.data(), &len, EVP_sha256(), nullptr);
  return digest;
}

ItemLabels load_item_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  ItemLabels labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto [idfield, label] = split_field(view);
    ItemId id = 0;
    if (!parse_u32(idfield, id)) throw InputError(path.string(), lineno, "invalid item id");
    labels[id] = std::string(label);
  }
  return labels;
}

}  // namespace themetruss
