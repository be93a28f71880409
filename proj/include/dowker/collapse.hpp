#pragma once

#include <cstddef>
#include <optional>

#include "dowker/detail/sets.hpp"
#include "dowker/error.hpp"
#include "dowker/relation.hpp"

namespace dowker {

struct RowDomination {
  std::size_t dominated;
  std::size_t dominating;

  bool operator==(const RowDomination&) const = default;
};

/// Finds a pair of distinct rows with R(dominated) ⊆ R(dominating).
///
/// Rows are scanned in ascending order and the first dominated one is
/// reported together with its lowest-indexed dominator. When two rows are
/// equal the higher-indexed one is the dominated row.
inline std::optional<RowDomination> find_dominated_row(const Relation& r) {
  for (std::size_t x = 0; x < r.rows(); ++x) {
    const auto row = r.row(x);
    // Every dominator of x meets each of x's columns; scan the thinnest one.
    std::size_t thin = row.front();
    for (std::size_t y : row) {
      if (r.col(y).size() < r.col(thin).size()) thin = y;
    }
    for (std::size_t other : r.col(thin)) {
      if (other == x || !detail::is_subset(row, r.row(other))) continue;
      if (r.row(other).size() > row.size() || other < x) return RowDomination{x, other};
    }
  }
  return std::nullopt;
}

namespace detail {

// Removes every dominated row at once. Removing a row does not change any other
// row's column set, so this equals removing dominated rows one at a time in
// ascending order until none is left.
inline Relation prune_dominated_rows(const Relation& r) {
  return transpose(make_column_irreducible(transpose(r)));
}

}  // namespace detail

/// Strong-collapse core: alternately strips dominated rows and dominated
/// columns until a full pass of both removes nothing. The Dowker complex of the
/// core has the same homotopy type as that of the input.
inline Relation collapse_core(const Relation& r) {
  Relation cur = r;
  for (;;) {
    Relation next = make_column_irreducible(detail::prune_dominated_rows(cur));
    if (next.rows() == cur.rows() && next.cols() == cur.cols()) return next;
    cur = std::move(next);
  }
}

/// Sound but incomplete contractibility test: true iff the core is 1x1.
/// A false answer means "not strong collapsible", not "not contractible".
inline bool is_strong_collapsible(const Relation& r) {
  if (r.empty()) throw PreconditionError("is_strong_collapsible: empty relation");
  const Relation core = collapse_core(r);
  return core.rows() == 1 && core.cols() == 1;
}

}  // namespace dowker
