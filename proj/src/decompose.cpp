#include "themetruss/decompose.hpp"

#include <algorithm>

namespace themetruss {

std::size_t TrussDecomposition::edge_count() const {
  std::size_t n = 0;
  for (const auto& level : levels) n += level.removed.size();
  return n;
}

std::size_t TrussDecomposition::first_level_above(const Rational& alpha) const {
  auto it = std::upper_bound(levels.begin(), levels.end(), alpha,
                             [](const Rational& a, const TrussLevel& level) { return a < level.alpha; });
  return static_cast<std::size_t>(it - levels.begin());
}

std::vector<Edge> TrussDecomposition::edges_above(const Rational& alpha) const {
  std::vector<Edge> out;
  const std::size_t first = first_level_above(alpha);
  for (std::size_t k = first; k < levels.size(); ++k) {
    out.insert(out.end(), levels[k].removed.begin(), levels[k].removed.end());
  }
  if (levels.size() - first > 1) std::sort(out.begin(), out.end());
  return out;
}

TrussDecomposition decompose(const ThemeNetwork& gp) {
  TrussDecomposition out;
  out.pattern = gp.pattern;
  TrussPeeler peeler(gp);
  peeler.peel(Rational(0));
  while (auto threshold = peeler.min_cohesion()) {
    TrussLevel level{*threshold, peeler.peel(*threshold)};
    std::sort(level.removed.begin(), level.removed.end());
    out.levels.push_back(std::move(level));
  }
  return out;
}

MaximalPatternTruss reconstruct(const TrussDecomposition& decomposition, const Rational& alpha) {
  MaximalPatternTruss truss;
  truss.pattern = decomposition.pattern;
  truss.alpha = alpha;
  truss.edges = decomposition.edges_above(alpha);
  truss.vertices = incident_vertices(truss.edges);
  return truss;
}

}  // namespace themetruss
