#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <span>
#include <vector>

namespace dowker {

// Sorted, duplicate-free list of indices. Every row and column of a relation
// is stored this way.
using IndexSet = std::vector<std::size_t>;

namespace detail {

inline bool is_subset(std::span<const std::size_t> small, std::span<const std::size_t> big) {
  return small.size() <= big.size() &&
         std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline IndexSet set_union(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

inline void sort_unique(IndexSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool is_sorted_unique(std::span<const std::size_t> s) {
  return std::adjacent_find(s.begin(), s.end(), [](std::size_t a, std::size_t b) { return a >= b; }) ==
         s.end();
}

enum class Absorption : unsigned char { kept, face, duplicate };

// Classifies each set against the others: `face` when it is strictly contained
// in another set, `duplicate` when it equals a lower-indexed set, `kept`
// otherwise. Only sets flagged in `eligible` take part (all sets when the mask
// is empty); ineligible sets are always `kept`.
//
// Candidates are found through an inverted index keyed on the rarest element
// of each set, so the scan is proportional to local overlap rather than n^2.
inline std::vector<Absorption> classify_containment(const std::vector<IndexSet>& sets,
                                                    std::size_t universe,
                                                    const std::vector<bool>& eligible = {}) {
  const auto is_eligible = [&](std::size_t s) { return eligible.empty() || eligible[s]; };

  std::vector<std::vector<std::size_t>> holders(universe);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (!is_eligible(s)) continue;
    for (std::size_t e : sets[s]) holders[e].push_back(s);
  }

  std::vector<Absorption> out(sets.size(), Absorption::kept);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (!is_eligible(s) || sets[s].empty()) continue;
    std::size_t rarest = sets[s].front();
    for (std::size_t e : sets[s]) {
      if (holders[e].size() < holders[rarest].size()) rarest = e;
    }
    for (std::size_t other : holders[rarest]) {
      if (other == s || !is_subset(sets[s], sets[other])) continue;
      if (sets[other].size() > sets[s].size()) {
        out[s] = Absorption::face;
        break;
      }
      if (other < s) out[s] = Absorption::duplicate;
    }
  }
  return out;
}

}  // namespace detail
}  // namespace dowker
