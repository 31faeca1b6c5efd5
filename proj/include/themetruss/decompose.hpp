#pragma once

#include <vector>

#include "themetruss/truss.hpp"

namespace themetruss {

/// Edges that leave the truss once the threshold reaches `alpha`.
struct TrussLevel {
  Rational alpha;
  std::vector<Edge> removed;  // ascending

  friend bool operator==(const TrussLevel&, const TrussLevel&) = default;
};

/// Lp: C*p(0) split into disjoint removed-edge sets at strictly increasing
/// thresholds. C*p(alpha) is the union of the levels whose threshold exceeds
/// alpha.
struct TrussDecomposition {
  Pattern pattern;
  std::vector<TrussLevel> levels;

  [[nodiscard]] bool empty() const { return levels.empty(); }
  /// Largest threshold; 0 for an empty decomposition.
  [[nodiscard]] Rational alpha_star() const { return levels.empty() ? Rational(0) : levels.back().alpha; }
  [[nodiscard]] std::size_t edge_count() const;
  /// First level index whose threshold is > alpha.
  [[nodiscard]] std::size_t first_level_above(const Rational& alpha) const;
  /// E*p(alpha), ascending.
  [[nodiscard]] std::vector<Edge> edges_above(const Rational& alpha) const;

  friend bool operator==(const TrussDecomposition&, const TrussDecomposition&) = default;
};

TrussDecomposition decompose(const ThemeNetwork& gp);

/// C*p(alpha) from the stored levels. Cohesion is left empty; call
/// attach_cohesion() when it is needed.
MaximalPatternTruss reconstruct(const TrussDecomposition& decomposition, const Rational& alpha);

}  // namespace themetruss
