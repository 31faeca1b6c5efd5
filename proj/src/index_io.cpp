#include <boost/crc.hpp>

#include <cstring>
#include <fstream>
#include <iterator>

#include "themetruss/index.hpp"

namespace themetruss {
namespace {

constexpr char kMagic[8] = {'T', 'C', 'T', 'R', 'E', 'E', '0', '1'};

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  template <typename T>
  void le(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> data) : data_(data) {}
  template <typename T>
  T le() {
    need(sizeof(T));
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(static_cast<T>(data_[pos_ + i]) << (8 * i));
    pos_ += sizeof(T);
    return value;
  }
  void bytes(void* dst, std::size_t n) {
    need(n);
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
  }
  [[nodiscard]] std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw IndexFormatError("index file truncated");
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kHeaderSize = sizeof(kMagic) + 4 + 32 + 4 + 4;

}  // namespace

std::uint64_t crc64(std::span<const std::uint8_t> bytes) {
  boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, ~0ULL, ~0ULL, true, true> crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

// magic, version, fingerprint, item universe, node count, then node records
// in preorder: item, level count, levels (num, den, edge count, edges), child
// count. Trailing CRC-64 over everything before it.
std::vector<std::uint8_t> save_index(const TCTree& tree) {
  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.le<std::uint32_t>(kIndexFormatVersion);
  w.bytes(tree.source_fingerprint().data(), 32);
  w.le<std::uint32_t>(static_cast<std::uint32_t>(tree.n_items()));
  w.le<std::uint32_t>(static_cast<std::uint32_t>(tree.nodes().size()));

  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const std::uint32_t index = stack.back();
    stack.pop_back();
    const TCTreeNode& node = tree.node(index);
    w.le<std::uint32_t>(node.item);
    w.le<std::uint32_t>(static_cast<std::uint32_t>(node.decomposition.levels.size()));
    for (const TrussLevel& level : node.decomposition.levels) {
      const auto num = level.alpha.numerator();
      const auto den = level.alpha.denominator();
      if (num > INT64_MAX || num < INT64_MIN || den > static_cast<Rational::Int>(UINT64_MAX)) {
        throw IndexFormatError("threshold " + level.alpha.to_string() + " does not fit the index format");
      }
      w.le<std::uint64_t>(static_cast<std::uint64_t>(static_cast<std::int64_t>(num)));
      w.le<std::uint64_t>(static_cast<std::uint64_t>(den));
      w.le<std::uint32_t>(static_cast<std::uint32_t>(level.removed.size()));
      for (const Edge& e : level.removed) {
        w.le<std::uint32_t>(e.u);
        w.le<std::uint32_t>(e.v);
      }
    }
    w.le<std::uint32_t>(static_cast<std::uint32_t>(node.children.size()));
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
  }
  const std::uint64_t checksum = crc64(w.buffer());
  w.le<std::uint64_t>(checksum);
  return std::move(w.buffer());
}

TCTree load_index(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic)) throw IndexFormatError("index file truncated");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) throw IndexFormatError("bad magic: not a TC-Tree index");
  if (bytes.size() < kHeaderSize + 8) throw IndexFormatError("index file truncated");
  Reader header(bytes.subspan(sizeof(kMagic)));
  const auto version = header.le<std::uint32_t>();
  if (version != kIndexFormatVersion) {
    throw IndexFormatError("unsupported index format version " + std::to_string(version) + " (expected " +
                           std::to_string(kIndexFormatVersion) + ")");
  }
  const auto body = bytes.first(bytes.size() - 8);
  Reader tail(bytes.last(8));
  if (crc64(body) != tail.le<std::uint64_t>()) {
    throw IndexFormatError("index checksum mismatch (file corrupted or truncated)");
  }

  Reader r(body.subspan(sizeof(kMagic) + 4));
  TCTree tree;
  std::array<std::uint8_t, 32> fp{};
  r.bytes(fp.data(), fp.size());
  tree.fingerprint_ = fp;
  tree.n_items_ = r.le<std::uint32_t>();
  const auto node_count = r.le<std::uint32_t>();
  if (node_count == 0) throw IndexFormatError("index has no root node");
  tree.nodes_.clear();
  tree.nodes_.reserve(node_count);

  struct Pending {
    std::uint32_t parent;
    std::uint32_t remaining_children;
  };
  std::vector<Pending> stack;
  for (std::uint32_t n = 0; n < node_count; ++n) {
    TCTreeNode node;
    node.item = r.le<std::uint32_t>();
    Pattern pattern;
    if (n == 0) {
      if (node.item != kNoItem) throw IndexFormatError("root node carries an item");
    } else {
      while (!stack.empty() && stack.back().remaining_children == 0) stack.pop_back();
      if (stack.empty()) throw IndexFormatError("node records exceed the tree structure");
      const auto parent = stack.back().parent;
      --stack.back().remaining_children;
      pattern = tree.nodes_[parent].decomposition.pattern.with(node.item);
      tree.nodes_[parent].children.push_back(n);
    }
    node.decomposition.pattern = std::move(pattern);
    const auto levels = r.le<std::uint32_t>();
    for (std::uint32_t k = 0; k < levels; ++k) {
      const auto num = static_cast<std::int64_t>(r.le<std::uint64_t>());
      const auto den = r.le<std::uint64_t>();
      if (den == 0) throw IndexFormatError("zero denominator in index");
      TrussLevel level{Rational(num, static_cast<Rational::Int>(den)), {}};
      const auto edges = r.le<std::uint32_t>();
      if (std::size_t{edges} * 8 > r.remaining()) throw IndexFormatError("index file truncated");
      level.removed.reserve(edges);
      for (std::uint32_t e = 0; e < edges; ++e) {
        const auto u = r.le<std::uint32_t>();
        const auto v = r.le<std::uint32_t>();
        level.removed.push_back(Edge{u, v});
      }
      node.decomposition.levels.push_back(std::move(level));
    }
    const auto children = r.le<std::uint32_t>();
    tree.nodes_.push_back(std::move(node));
    stack.push_back(Pending{n, children});
  }
  for (const auto& pending : stack) {
    if (pending.remaining_children != 0) throw IndexFormatError("node records end before the tree structure does");
  }
  if (r.remaining() != 0) throw IndexFormatError("trailing bytes after node records");
  return tree;
}

void save_index_file(const TCTree& tree, const std::filesystem::path& path) {
  const auto bytes = save_index(tree);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IndexFormatError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

TCTree load_index_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexFormatError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_index(bytes);
}

}  // namespace themetruss
