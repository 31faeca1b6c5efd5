#include <algorithm>
#include <stdexcept>

#include "themetruss/miners.hpp"

namespace themetruss {

// Prefix join: every k-set whose (k-1)-subsets are all present has two such
// subsets sharing its first k-2 items, so joining only same-prefix pairs
// yields the same set as testing all pairs.
std::vector<Pattern> gen_apriori_candidates(const std::vector<Pattern>& prev) {
  std::vector<Pattern> out;
  if (prev.empty()) return out;
  const std::size_t len = prev.front().size();
  if (len == 0) throw std::invalid_argument("apriori generation needs patterns of length >= 1");
  for (const Pattern& p : prev) {
    if (p.size() != len) throw std::invalid_argument("apriori input patterns differ in length");
  }
  std::vector<Pattern> sorted(prev);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const auto same_prefix = [len](const Pattern& a, const Pattern& b) {
    return std::equal(a.items().begin(), a.items().begin() + static_cast<std::ptrdiff_t>(len - 1),
                      b.items().begin());
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size() && same_prefix(sorted[i], sorted[j]); ++j) {
      Pattern candidate = sorted[i].with(sorted[j].back());
      bool all_present = true;
      // the two subsets dropping one of the last two items are i and j
      for (std::size_t drop = 0; drop + 2 < candidate.size() && all_present; ++drop) {
        all_present = std::binary_search(sorted.begin(), sorted.end(), candidate.without_index(drop));
      }
      if (all_present) out.push_back(std::move(candidate));
    }
  }
  return out;  // ascending: i-major over a sorted list with ascending last items
}

}  // namespace themetruss
