#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "themetruss/truss.hpp"

namespace themetruss {

/// A size guard tripped (TCS candidate cap, brute-force oracle limits).
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MiningStats {
  std::uint64_t mptd_calls = 0;
  std::uint64_t candidates = 0;         // patterns considered for MPTD
  std::uint64_t pruned_by_intersection = 0;
  double wall_ms = 0.0;
};

/// C(alpha): every nonempty maximal pattern truss, keyed by pattern in
/// lexicographic order.
struct MiningResult {
  Rational alpha;
  std::map<Pattern, MaximalPatternTruss> trusses;
  MiningStats stats;
};

struct MiningOptions {
  /// OpenMP worker count; 0 keeps the runtime default, 1 runs the serial path.
  int threads = 0;
  /// Longest pattern mined; 0 means unbounded.
  std::size_t max_len = 0;
};

struct TcsOptions {
  int threads = 0;
  std::size_t max_len = 8;
  std::uint64_t max_candidates = 10'000'000;
};

/// Length-k unions of pairs in `prev` (all length k-1, ascending) whose every
/// length-(k-1) sub-pattern is in `prev`. Output ascending.
std::vector<Pattern> gen_apriori_candidates(const std::vector<Pattern>& prev);

/// Candidate set {p : some vertex has f(p) > epsilon, |p| <= max_len}, ascending.
std::vector<Pattern> tcs_candidates(const DatabaseNetwork& g, const Rational& epsilon,
                                    std::size_t max_len, std::uint64_t max_candidates);

MiningResult tcs(const DatabaseNetwork& g, const Rational& alpha, const Rational& epsilon,
                 const TcsOptions& options = {});
MiningResult tcfa(const DatabaseNetwork& g, const Rational& alpha, const MiningOptions& options = {});
MiningResult tcfi(const DatabaseNetwork& g, const Rational& alpha, const MiningOptions& options = {});

struct OracleLimits {
  std::size_t max_vertices = 64;
  std::size_t max_items = 12;
};

/// Naive reference miner: every pattern up to max_len with positive frequency
/// somewhere, each peeled by recomputing all cohesions every round. Shares no
/// code with the production peeler. Limits are lifted when the environment
/// variable THEMETRUSS_GUARD_OFF=1 is set.
MiningResult brute_force_mine(const DatabaseNetwork& g, const Rational& alpha, std::size_t max_len,
                              const OracleLimits& limits = {});

struct Metrics {
  std::uint64_t np = 0;
  std::uint64_t nv = 0;
  std::uint64_t ne = 0;
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics count_metrics(const MiningResult& result);

/// True when THEMETRUSS_GUARD_OFF=1.
bool guards_disabled();

}  // namespace themetruss
