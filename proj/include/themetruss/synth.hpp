#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "themetruss/model.hpp"

namespace themetruss {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How seed vertices pick the length of each sampled itemset.
enum class SeedLength {
  kFormula,  // ceil(exp(tx_len_coeff * d)), the same as every other vertex
  kUniform,  // uniform in [1, formula]
};

struct SynthConfig {
  std::size_t n_vertices = 2000;
  std::size_t n_edges = 10000;
  std::size_t n_seeds = 20;
  std::size_t n_items = 50;
  double mutation_rate = 0.10;
  double tx_count_coeff = 0.1;
  double tx_len_coeff = 0.13;
  SeedLength seed_length = SeedLength::kFormula;
  std::uint64_t rng_seed = 1;
};

/// ceil(exp(coeff * degree)).
std::size_t ceil_exp(double coeff, std::size_t degree);

/// Throws ConfigError for infeasible configurations.
void validate(const SynthConfig& cfg);

struct SynthReport {
  /// Vertices whose transaction length had to be clamped to |S|.
  std::size_t clamped_vertices = 0;
};

/// Random connected graph (random recursive spanning tree plus uniform extra
/// edges), seed databases sampled from S, then breadth-first propagation:
/// each transaction of a non-seed vertex is copied from an already-built
/// neighbour and every item is replaced by a different random item with
/// probability mutation_rate.
DatabaseNetwork generate(const SynthConfig& cfg, SynthReport* report = nullptr);

/// Deterministic stream derived from (seed, stream id) with SplitMix64. Stream
/// assignment: 1 graph, 2 seed choice, 3 databases.
class SplitRng {
 public:
  SplitRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound), rejection sampled.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1) with 53 random bits.
  double unit();

 private:
  std::mt19937_64 engine_;
};

}  // namespace themetruss
