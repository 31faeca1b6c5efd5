#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "themetruss/index.hpp"
#include "themetruss/miners.hpp"
#include "themetruss/results.hpp"
#include "themetruss/synth.hpp"

namespace themetruss::cli {
namespace {

struct BadFlag : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_flag_rational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const RationalError& e) {
    throw BadFlag(flag + ": " + e.what());
  }
}

/// Opens --out or falls back to the given stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct MineArgs {
  std::string algo = "tcfi";
  std::string alpha;
  std::string epsilon = "0";
  std::optional<std::size_t> max_len;
  std::uint64_t max_candidates = 10'000'000;
  std::string edges;
  std::string tx;
  std::string items;
  std::string out;
  int threads = 0;
  bool stats = false;
};

struct IndexBuildArgs {
  std::string edges;
  std::string tx;
  std::string out;
  int threads = 0;
};

struct IndexQueryArgs {
  std::string idx;
  std::string pattern = "all";
  std::string alpha;
  std::string out;
  std::string edges;
  std::string tx;
  std::string items;
  bool stats = false;
};

struct GenArgs {
  SynthConfig cfg;
  std::string seed_length = "formula";
  std::string out_dir;
};

int do_mine(const MineArgs& a, std::ostream& out, std::ostream& err) {
  const Rational alpha = parse_flag_rational("--alpha", a.alpha);
  if (alpha < Rational(0)) throw BadFlag("--alpha must be >= 0");
  const DatabaseNetwork g = load_network_files(a.edges, a.tx);
  std::optional<ItemLabels> labels;
  if (!a.items.empty()) labels = load_item_labels(a.items);

  MiningResult result;
  if (a.algo == "tcs") {
    const Rational epsilon = parse_flag_rational("--epsilon", a.epsilon);
    if (epsilon < Rational(0)) throw BadFlag("--epsilon must be >= 0");
    TcsOptions opts;
    opts.threads = a.threads;
    opts.max_len = a.max_len.value_or(8);
    opts.max_candidates = a.max_candidates;
    if (opts.max_len == 0) throw BadFlag("--max-len must be >= 1 for tcs");
    result = tcs(g, alpha, epsilon, opts);
  } else {
    MiningOptions opts;
    opts.threads = a.threads;
    opts.max_len = a.max_len.value_or(0);
    result = a.algo == "tcfa" ? tcfa(g, alpha, opts) : tcfi(g, alpha, opts);
  }

  Output sink(a.out, out);
  write_records(sink.get(), result.trusses, labels ? &*labels : nullptr);
  if (a.stats) {
    RunStats stats;
    stats.metrics = count_metrics(result);
    stats.mptd_calls = result.stats.mptd_calls;
    stats.candidates = result.stats.candidates;
    stats.wall_ms = result.stats.wall_ms;
    sink.get() << stats_json_line(stats) << '\n';
  }
  (void)err;
  return kOk;
}

int do_index_build(const IndexBuildArgs& a, std::ostream& err) {
  const DatabaseNetwork g = load_network_files(a.edges, a.tx);
  IndexBuildOptions opts;
  opts.threads = a.threads;
  const TCTree tree = build_tctree(g, opts);
  save_index_file(tree, a.out);
  err << "indexed " << tree.n_nodes() << " patterns\n";
  return kOk;
}

const TCTreeNode& find_node(const TCTree& tree, const Pattern& p) {
  const TCTreeNode* node = &tree.root();
  for (ItemId item : p.items()) {
    const TCTreeNode* next = nullptr;
    for (std::uint32_t c : node->children) {
      if (tree.node(c).item == item) {
        next = &tree.node(c);
        break;
      }
    }
    if (!next) throw std::logic_error("pattern missing from index");
    node = next;
  }
  return *node;
}

int do_index_query(const IndexQueryArgs& a, std::ostream& out, std::ostream& err) {
  const Rational alpha = parse_flag_rational("--alpha", a.alpha);
  if (alpha < Rational(0)) throw BadFlag("--alpha must be >= 0");
  const TCTree tree = load_index_file(a.idx);
  Pattern q;
  if (a.pattern == "all") {
    q = full_pattern(tree);
  } else {
    try {
      q = Pattern::parse(a.pattern);
    } catch (const InputError& e) {
      throw BadFlag(std::string("--pattern: ") + e.what());
    }
  }
  if (a.edges.empty() != a.tx.empty()) throw BadFlag("--edges and --tx must be given together");
  std::optional<ItemLabels> labels;
  if (!a.items.empty()) labels = load_item_labels(a.items);

  const auto start = std::chrono::steady_clock::now();
  QueryAnswer answer = query_tctree(tree, q, alpha);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!a.edges.empty()) {
    const DatabaseNetwork g = load_network_files(a.edges, a.tx);
    if (fingerprint(g) != tree.source_fingerprint()) {
      err << "warning: network files differ from the ones the index was built from\n";
    } else {
      for (auto& [pattern, truss] : answer.trusses) attach_cohesion(truss, g);
    }
  }

  Output sink(a.out, out);
  for (const auto& [pattern, truss] : answer.trusses) {
    ResultRecord record = make_record(truss, labels ? &*labels : nullptr);
    if (!record.cohesion_min) {
      // the smallest cohesion in C*p(alpha) is the first threshold above alpha
      const TrussDecomposition& dec = find_node(tree, pattern).decomposition;
      record.cohesion_min = dec.levels[dec.first_level_above(alpha)].alpha;
    }
    sink.get() << to_json_line(record) << '\n';
  }
  if (a.stats) {
    RunStats stats;
    MiningResult as_result;
    as_result.trusses = answer.trusses;
    stats.metrics = count_metrics(as_result);
    stats.retrieved_nodes = answer.retrieved_nodes;
    stats.wall_ms = wall_ms;
    sink.get() << stats_json_line(stats) << '\n';
  }
  err << "retrieved " << answer.retrieved_nodes << " nodes\n";
  return kOk;
}

int do_gen(const GenArgs& a, std::ostream& err) {
  SynthConfig cfg = a.cfg;
  if (a.seed_length == "formula") {
    cfg.seed_length = SeedLength::kFormula;
  } else if (a.seed_length == "uniform") {
    cfg.seed_length = SeedLength::kUniform;
  } else {
    throw BadFlag("--seed-length must be formula or uniform");
  }
  SynthReport report;
  const DatabaseNetwork g = generate(cfg, &report);
  if (report.clamped_vertices > 0) {
    err << "warning: transaction length clamped to |S| on " << report.clamped_vertices << " vertices\n";
  }
  std::filesystem::create_directories(a.out_dir);
  save_network_files(g, std::filesystem::path(a.out_dir) / "edges.tsv", std::filesystem::path(a.out_dir) / "tx.tsv");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Theme community mining, decomposition and indexing for database networks", "themetruss"};
  app.require_subcommand(1);

  MineArgs mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine all maximal pattern trusses at a threshold");
  mine_cmd->add_option("--algo", mine.algo, "tcs, tcfa or tcfi")->check(CLI::IsMember({"tcs", "tcfa", "tcfi"}));
  mine_cmd->add_option("--alpha", mine.alpha, "Cohesion threshold, a/b or decimal")->required();
  mine_cmd->add_option("--epsilon", mine.epsilon, "TCS frequency pre-filter");
  mine_cmd->add_option("--max-len", mine.max_len, "Longest pattern (tcs default 8, others unbounded)");
  mine_cmd->add_option("--max-candidates", mine.max_candidates, "TCS candidate cap");
  mine_cmd->add_option("--edges", mine.edges, "edges.tsv")->required();
  mine_cmd->add_option("--tx", mine.tx, "tx.tsv")->required();
  mine_cmd->add_option("--items", mine.items, "Optional items.tsv labels");
  mine_cmd->add_option("--out", mine.out, "Output JSON Lines (default stdout)");
  mine_cmd->add_option("--threads", mine.threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  mine_cmd->add_flag("--stats", mine.stats, "Append a stats record");

  auto* index_cmd = app.add_subcommand("index", "Build or query a TC-Tree index");
  index_cmd->require_subcommand(1);
  IndexBuildArgs build;
  auto* build_cmd = index_cmd->add_subcommand("build", "Build the index");
  build_cmd->add_option("--edges", build.edges, "edges.tsv")->required();
  build_cmd->add_option("--tx", build.tx, "tx.tsv")->required();
  build_cmd->add_option("--out", build.out, "Index file")->required();
  build_cmd->add_option("--threads", build.threads, "Worker threads")->check(CLI::NonNegativeNumber);

  IndexQueryArgs query;
  auto* query_cmd = index_cmd->add_subcommand("query", "Query the index");
  query_cmd->add_option("--idx", query.idx, "Index file")->required();
  query_cmd->add_option("--pattern", query.pattern, "Comma-separated item ids, or 'all'");
  query_cmd->add_option("--alpha", query.alpha, "Cohesion threshold")->required();
  query_cmd->add_option("--out", query.out, "Output JSON Lines (default stdout)");
  query_cmd->add_option("--edges", query.edges, "Network edges, for cohesion values and fingerprint check");
  query_cmd->add_option("--tx", query.tx, "Network transactions");
  query_cmd->add_option("--items", query.items, "Optional items.tsv labels");
  query_cmd->add_flag("--stats", query.stats, "Append a stats record");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic database network");
  gen_cmd->add_option("--vertices", gen.cfg.n_vertices, "Vertex count")->required();
  gen_cmd->add_option("--edges", gen.cfg.n_edges, "Edge count")->required();
  gen_cmd->add_option("--seeds", gen.cfg.n_seeds, "Seed vertex count");
  gen_cmd->add_option("--items", gen.cfg.n_items, "Item universe size");
  gen_cmd->add_option("--rng-seed", gen.cfg.rng_seed, "Random seed");
  gen_cmd->add_option("--mutation-rate", gen.cfg.mutation_rate, "Per-item change probability");
  gen_cmd->add_option("--tx-count-coeff", gen.cfg.tx_count_coeff, "Transactions per vertex: ceil(exp(c*d))");
  gen_cmd->add_option("--tx-len-coeff", gen.cfg.tx_len_coeff, "Transaction length: ceil(exp(c*d))");
  gen_cmd->add_option("--seed-length", gen.seed_length, "Seed itemset length: formula or uniform");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadFlags;
  }

  try {
    if (*mine_cmd) return do_mine(mine, out, err);
    if (*build_cmd) return do_index_build(build, err);
    if (*query_cmd) return do_index_query(query, out, err);
    if (*gen_cmd) return do_gen(gen, err);
  } catch (const BadFlag& e) {
    err << "error: " << e.what() << '\n';
    return kBadFlags;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const IndexFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kGuardExceeded;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kBadFlags;
}

}  // namespace themetruss::cli
