#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "themetruss/results.hpp"

namespace fs = std::filesystem;
using themetruss::Rational;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = themetruss::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("themetruss_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  std::string str(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

/// Triangle with three identical databases, plus a pendant vertex.
void write_fixture(const TempDir& dir) {
  write(dir / "edges.tsv", "0\t1\n1\t2\n0\t2\n2\t3\n");
  std::string tx;
  for (int v = 0; v < 3; ++v) tx += std::to_string(v) + "\t0,1\n" + std::to_string(v) + "\t0\n" + std::to_string(v) + "\t1,2\n";
  tx += "3\t2\n";
  write(dir / "tx.tsv", tx);
  write(dir / "items.tsv", "0\tbread\n1\tmilk\n2\teggs\n");
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("mine on the identical-database triangle") {
    TempDir dir;
    write_fixture(dir);
    const auto r = run({"mine", "--algo", "tcfi", "--alpha", "0", "--edges", dir.str("edges.tsv"), "--tx",
                        dir.str("tx.tsv"), "--stats"});
    REQUIRE(r.code == 0);
    const auto out = lines(r.out);
    // f > 0 for {0}, {1}, {2}, {0,1}, {1,2}
    REQUIRE(out.size() == 6);
    CHECK(out[0] ==
          R"({"pattern":[0],"alpha":"0","vertices":[0,1,2],"edges":[[0,1],[0,2],[1,2]],"communities":[[0,1,2]],"cohesion_min":"2/3","cohesion_max":"2/3"})");
    CHECK(out[1].find(R"("pattern":[0,1])") != std::string::npos);
    CHECK(out[5].find(R"({"type":"stats","np":5,"nv":15,"ne":15,)") == 0);
    const auto rec = themetruss::parse_record(out[0]);
    CHECK(rec.cohesion_min == Rational(2, 3));
  }

  TEST_CASE("fraction and decimal alphas agree; algorithms agree") {
    TempDir dir;
    write_fixture(dir);
    const std::vector<std::string> base{"--edges", dir.str("edges.tsv"), "--tx", dir.str("tx.tsv")};
    auto mine = [&](std::vector<std::string> extra) {
      std::vector<std::string> args{"mine"};
      args.insert(args.end(), extra.begin(), extra.end());
      args.insert(args.end(), base.begin(), base.end());
      return run(args);
    };
    const auto a = mine({"--alpha", "1/3"});
    const auto b = mine({"--alpha", "0.5"});
    const auto c = mine({"--alpha", "1/2"});
    CHECK(b.out == c.out);
    CHECK(lines(a.out).size() == 2);
    CHECK(lines(b.out).size() == 2);
    CHECK(mine({"--alpha", "2/3"}).out.empty());
    CHECK(mine({"--algo", "tcfa", "--alpha", "1/3"}).out == a.out);
    CHECK(mine({"--algo", "tcs", "--alpha", "1/3"}).out == a.out);
    CHECK(mine({"--alpha", "1/3", "--threads", "3"}).out == a.out);
  }

  TEST_CASE("labels and output file") {
    TempDir dir;
    write_fixture(dir);
    const auto r = run({"mine", "--alpha", "1/2", "--edges", dir.str("edges.tsv"), "--tx", dir.str("tx.tsv"),
                        "--items", dir.str("items.tsv"), "--out", dir.str("out.jsonl")});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(dir / "out.jsonl").find(R"("labels":["bread"])") != std::string::npos);
  }

  TEST_CASE("tcs with epsilon 1 yields only stats") {
    TempDir dir;
    write_fixture(dir);
    const auto r = run({"mine", "--algo", "tcs", "--epsilon", "1", "--alpha", "0", "--edges", dir.str("edges.tsv"),
                        "--tx", dir.str("tx.tsv"), "--stats"});
    REQUIRE(r.code == 0);
    const auto out = lines(r.out);
    REQUIRE(out.size() == 1);
    CHECK(out[0].find(R"("np":0)") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    TempDir dir;
    write_fixture(dir);
    const std::string e = dir.str("edges.tsv"), t = dir.str("tx.tsv");
    CHECK(run({}).code == 2);
    CHECK(run({"mine", "--alpha", "0", "--edges", e}).code == 2);
    CHECK(run({"mine", "--alpha", "zero", "--edges", e, "--tx", t}).code == 2);
    CHECK(run({"mine", "--alpha", "-1", "--edges", e, "--tx", t}).code == 2);
    CHECK(run({"mine", "--algo", "fast", "--alpha", "0", "--edges", e, "--tx", t}).code == 2);
    CHECK(run({"mine", "--alpha", "0", "--edges", e, "--tx", t, "--bogus"}).code == 2);
    write(dir / "bad.tsv", "0\t0\n");
    const auto bad = run({"mine", "--alpha", "0", "--edges", dir.str("bad.tsv"), "--tx", t});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("bad.tsv:1") != std::string::npos);
    CHECK(run({"mine", "--alpha", "0", "--edges", dir.str("missing.tsv"), "--tx", t}).code == 3);
    CHECK(run({"mine", "--algo", "tcs", "--max-candidates", "2", "--alpha", "0", "--edges", e, "--tx", t}).code == 4);
    CHECK(run({"gen", "--vertices", "5", "--edges", "6", "--seeds", "9", "--out-dir", dir.str("g")}).code == 5);
    CHECK(run({"gen", "--vertices", "5", "--edges", "x", "--out-dir", dir.str("g")}).code == 2);
    CHECK(run({"index", "query", "--idx", t, "--alpha", "0"}).code == 3);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("index build and query reproduce mining") {
    TempDir dir;
    write_fixture(dir);
    const std::string e = dir.str("edges.tsv"), t = dir.str("tx.tsv"), idx = dir.str("net.idx");
    REQUIRE(run({"index", "build", "--edges", e, "--tx", t, "--out", idx}).code == 0);
    for (const std::string alpha : {"0", "1/3", "0.5"}) {
      const auto mined = run({"mine", "--alpha", alpha, "--edges", e, "--tx", t});
      const auto q = run({"index", "query", "--idx", idx, "--pattern", "all", "--alpha", alpha, "--edges", e, "--tx", t});
      REQUIRE(q.code == 0);
      CHECK(q.out == mined.out);
      CHECK(q.err.find("retrieved") != std::string::npos);
    }
    const auto none = run({"index", "query", "--idx", idx, "--alpha", "1"});
    CHECK(none.code == 0);
    CHECK(none.out.empty());

    // QBP: only sub-patterns of {0,2}; item 7 is absent from the tree
    const auto sub = run({"index", "query", "--idx", idx, "--pattern", "0,2,7", "--alpha", "0", "--stats"});
    const auto out = lines(sub.out);
    REQUIRE(out.size() == 3);
    CHECK(out[0].find(R"("pattern":[0])") != std::string::npos);
    CHECK(out[1].find(R"("pattern":[2])") != std::string::npos);
    // without the network, the smallest cohesion is the first threshold above alpha
    CHECK(out[0].find(R"("cohesion_min":"2/3","cohesion_max":null)") != std::string::npos);
    CHECK(out[2].find(R"("retrieved_nodes":2)") != std::string::npos);
  }

  TEST_CASE("fingerprint mismatch warns") {
    TempDir dir;
    write_fixture(dir);
    const std::string e = dir.str("edges.tsv"), t = dir.str("tx.tsv"), idx = dir.str("net.idx");
    REQUIRE(run({"index", "build", "--edges", e, "--tx", t, "--out", idx}).code == 0);
    write(dir / "tx2.tsv", slurp(dir / "tx.tsv") + "3\t0\n");
    const auto q = run({"index", "query", "--idx", idx, "--alpha", "0", "--edges", e, "--tx", dir.str("tx2.tsv")});
    CHECK(q.code == 0);
    CHECK(q.err.find("warning") != std::string::npos);
  }

  TEST_CASE("gen is deterministic and readable") {
    TempDir dir;
    const std::vector<std::string> args{"gen", "--vertices", "60", "--edges", "200", "--seeds", "4",
                                        "--items", "12", "--rng-seed", "17", "--out-dir"};
    auto a = args, b = args;
    a.push_back(dir.str("a"));
    b.push_back(dir.str("b"));
    REQUIRE(run(a).code == 0);
    REQUIRE(run(b).code == 0);
    CHECK(slurp(dir / "a" / "edges.tsv") == slurp(dir / "b" / "edges.tsv"));
    CHECK(slurp(dir / "a" / "tx.tsv") == slurp(dir / "b" / "tx.tsv"));
    const auto r = run({"mine", "--alpha", "0", "--edges", dir.str("a/edges.tsv"), "--tx", dir.str("a/tx.tsv")});
    CHECK(r.code == 0);
  }
}
