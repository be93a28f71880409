#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dowker/collapse.hpp"
#include "dowker/detail/sets.hpp"
#include "dowker/error.hpp"
#include "dowker/relation.hpp"

#ifndef NDEBUG
#include "dowker/homology.hpp"
#endif

namespace dowker {

// ---------------------------------------------------------------------------
// Star geometry on the relation

/// Vertices of the closed star of row x: every row sharing a column with x,
/// x included.
inline IndexSet closed_star_vertices(const Relation& r, std::size_t x) {
  IndexSet out;
  for (std::size_t y : r.row(x)) out.insert(out.end(), r.col(y).begin(), r.col(y).end());
  detail::sort_unique(out);
  return out;
}

/// Vertices of the closed star of the closed star of x: rows whose closed
/// star meets that of x.
inline IndexSet two_hop_vertices(const Relation& r, std::size_t x) {
  IndexSet out;
  for (std::size_t v : closed_star_vertices(r, x)) {
    for (std::size_t y : r.row(v)) out.insert(out.end(), r.col(y).begin(), r.col(y).end());
  }
  detail::sort_unique(out);
  return out;
}

/// δ_x: number of vertices in the closed star of x.
inline std::size_t star_vertex_count(const Relation& r, std::size_t x) {
  return closed_star_vertices(r, x).size();
}

/// ε_x: number of toplexes in the closed star of x.
inline std::size_t star_toplex_count(const Relation& r, std::size_t x) { return r.row(x).size(); }

/// Pair candidates for row x, restricted to rows after x. Rows sharing a
/// column with x come first, then the remaining two-hop rows; each class is in
/// ascending row order.
inline std::vector<std::size_t> candidate_vertices(const Relation& r, std::size_t x) {
  const IndexSet near = closed_star_vertices(r, x);
  const IndexSet reach = two_hop_vertices(r, x);
  std::vector<std::size_t> out;
  for (std::size_t v : near) {
    if (v > x) out.push_back(v);
  }
  for (std::size_t v : reach) {
    if (v > x && !std::binary_search(near.begin(), near.end(), v)) out.push_back(v);
  }
  return out;
}

/// Number of distinct pair sub-complexes: half the sum over rows of the
/// two-hop neighbourhood size minus one. Bounds the pair tests of reduce().
inline std::size_t comparison_budget(const Relation& r) {
  std::size_t sum = 0;
  for (std::size_t x = 0; x < r.rows(); ++x) sum += two_hop_vertices(r, x).size() - 1;
  return sum / 2;
}

// ---------------------------------------------------------------------------
// Reduction step

struct StepReport {
  std::string xi;
  std::string xj;
  std::string z;
  std::size_t cols_before = 0;
  std::size_t cols_after = 0;
  std::size_t faces_absorbed = 0;
  std::size_t duplicates_merged = 0;
  std::size_t delta_z = 0;
  std::size_t epsilon_z = 0;
  // Labels of the columns removed by the clean-up, split by cause.
  std::vector<std::string> absorbed_columns;
  std::vector<std::string> merged_columns;

  bool operator==(const StepReport&) const = default;
};

struct StepResult {
  Relation relation;
  StepReport report;
};

/// Glues the cone z * (St(xi) ∪ St(xj)) and collapses xi and xj away: row z
/// with R(z) = R(xi) ∪ R(xj) is appended, rows xi and xj are removed, and
/// columns inside R(z) are cleaned.
///
/// The caller must have checked that the union of the two closed stars is
/// contractible (is_strong_collapsible on its sub-relation); otherwise the
/// homotopy type is not preserved.
inline StepResult reduction_step(const Relation& r, std::size_t xi, std::size_t xj, const std::string& z_label) {
  if (xi == xj) throw PreconditionError("reduction_step: xi and xj must differ");
  if (xi >= r.rows() || xj >= r.rows()) throw PreconditionError("reduction_step: row out of range");

  const IndexSet rz = detail::set_union(r.row(xi), r.row(xj));
  const Relation coned = add_row(r, z_label, rz);
  const std::size_t pair[] = {xi, xj};
  // Every column of R(xi) ∪ R(xj) now holds z, so no column empties and the
  // column indexing of r is kept.
  const Relation merged = remove_row_indices(coned, pair);
  ColumnCleanup cleanup = clean_columns(merged, std::span<const std::size_t>(rz));

  StepReport rep;
  rep.xi = r.row_label(xi);
  rep.xj = r.row_label(xj);
  rep.z = z_label;
  rep.cols_before = r.cols();
  rep.cols_after = cleanup.relation.cols();
  rep.faces_absorbed = cleanup.faces.size();
  rep.duplicates_merged = cleanup.duplicates.size();
  for (std::size_t y : cleanup.faces) rep.absorbed_columns.push_back(r.col_label(y));
  for (std::size_t y : cleanup.duplicates) rep.merged_columns.push_back(r.col_label(y));
  const std::size_t z = cleanup.relation.rows() - 1;
  rep.delta_z = star_vertex_count(cleanup.relation, z);
  rep.epsilon_z = star_toplex_count(cleanup.relation, z);
  return StepResult{std::move(cleanup.relation), std::move(rep)};
}

/// Recomputes δ and ε of every surviving vertex from scratch and checks them
/// against the four-case update rules:
///
///   xi, xj            removed
///   z                 δ = δi + δj - δ(i∩j) - 1
///                     ε = εi + εj - ε(i∩j) - #faces - #same/2
///   xi, xj ∈ St(xk)   δ = δk - 1,  ε = εk - (#faces + #same/2 within St(xk))
///   otherwise         unchanged
///
/// δ counts the star's centre, so the two merged vertices of the union collapse
/// into z (the trailing -1).
inline bool verify_step_equations(const Relation& before, const Relation& after, const StepReport& rep) {
  std::unordered_map<std::string_view, std::size_t> prev;
  std::unordered_map<std::string_view, std::size_t> next;
  for (std::size_t x = 0; x < before.rows(); ++x) prev.emplace(before.row_label(x), x);
  for (std::size_t x = 0; x < after.rows(); ++x) next.emplace(after.row_label(x), x);
  std::unordered_map<std::string_view, std::size_t> prev_col;
  for (std::size_t y = 0; y < before.cols(); ++y) prev_col.emplace(before.col_label(y), y);

  if (!prev.contains(rep.xi) || !prev.contains(rep.xj) || !next.contains(rep.z)) return false;
  if (next.contains(rep.xi) || next.contains(rep.xj) || prev.contains(rep.z)) return false;
  if (after.rows() + 1 != before.rows()) return false;
  if (rep.faces_absorbed + rep.duplicates_merged != before.cols() - after.cols()) return false;
  if (rep.absorbed_columns.size() != rep.faces_absorbed || rep.merged_columns.size() != rep.duplicates_merged) {
    return false;
  }

  std::vector<char> removed(before.cols(), 0);
  for (const auto& l : rep.absorbed_columns) {
    auto it = prev_col.find(l);
    if (it == prev_col.end()) return false;
    removed[it->second] = 1;
  }
  for (const auto& l : rep.merged_columns) {
    auto it = prev_col.find(l);
    if (it == prev_col.end()) return false;
    removed[it->second] = 2;
  }

  const std::size_t xi = prev.at(rep.xi);
  const std::size_t xj = prev.at(rep.xj);
  const std::size_t z = next.at(rep.z);
  const IndexSet star_i = closed_star_vertices(before, xi);
  const IndexSet star_j = closed_star_vertices(before, xj);

  const std::size_t delta_z = star_i.size() + star_j.size() - detail::intersection_size(star_i, star_j) - 1;
  const std::size_t eps_z = before.row(xi).size() + before.row(xj).size() -
                            detail::intersection_size(before.row(xi), before.row(xj)) - rep.faces_absorbed -
                            rep.duplicates_merged;
  if (star_vertex_count(after, z) != delta_z || rep.delta_z != delta_z) return false;
  if (star_toplex_count(after, z) != eps_z || rep.epsilon_z != eps_z) return false;

  for (std::size_t k = 0; k < after.rows(); ++k) {
    if (k == z) continue;
    const auto it = prev.find(after.row_label(k));
    if (it == prev.end()) return false;
    const std::size_t bk = it->second;
    const IndexSet star_k = closed_star_vertices(before, bk);
    const bool both = std::binary_search(star_k.begin(), star_k.end(), xi) &&
                      std::binary_search(star_k.begin(), star_k.end(), xj);
    std::size_t lost = 0;
    for (std::size_t y : before.row(bk)) lost += removed[y] != 0;

    const std::size_t delta_prev = star_k.size();
    const std::size_t eps_prev = before.row(bk).size();
    const std::size_t delta_now = star_vertex_count(after, k);
    const std::size_t eps_now = star_toplex_count(after, k);
    if (both) {
      if (delta_now != delta_prev - 1 || eps_now != eps_prev - lost) return false;
    } else {
      if (lost != 0 || delta_now != delta_prev || eps_now != eps_prev) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Full reduction

struct PairTest {
  std::string x;
  std::string candidate;
  bool collapsible = false;

  bool operator==(const PairTest&) const = default;
};

struct StarMaxima {
  std::size_t delta_max = 0;
  std::size_t epsilon_max = 0;

  bool operator==(const StarMaxima&) const = default;
};

inline StarMaxima star_maxima(const Relation& r) {
  StarMaxima m;
  for (std::size_t x = 0; x < r.rows(); ++x) {
    m.delta_max = std::max(m.delta_max, star_vertex_count(r, x));
    m.epsilon_max = std::max(m.epsilon_max, star_toplex_count(r, x));
  }
  return m;
}

struct ReductionStats {
  std::size_t steps_applied = 0;
  std::size_t contractibility_tests = 0;
  std::size_t comparison_budget = 0;
  std::size_t delta_max_seen = 0;
  std::size_t epsilon_max_seen = 0;
  std::size_t rows_before = 0;
  std::size_t rows_after = 0;
  std::size_t cols_before = 0;
  std::size_t cols_after = 0;
  // Star maxima of the input followed by one sample after every step.
  std::vector<StarMaxima> maxima_history;

  bool operator==(const ReductionStats&) const = default;
};

struct ReductionResult {
  Relation relation;
  ReductionStats stats;
  std::vector<StepReport> steps;
  std::vector<PairTest> tests;
};

/// Single-pass pair reduction of a column-irreducible relation.
///
/// A cursor walks the rows in order. For the row under the cursor, its
/// candidates are tried in queue order; the first pair whose star union is
/// strong collapsible is merged into a new row z appended at the end, and the
/// candidates of whatever row now sits under the cursor are recomputed. When no
/// candidate works, the cursor advances. Rows behind the cursor are never
/// revisited: a pair that failed stays non-contractible after later merges.
inline ReductionResult reduce(const Relation& input) {
  if (!is_column_irreducible(input)) throw PreconditionError("reduce: relation is not column irreducible");

  ReductionResult res;
  ReductionStats& st = res.stats;
  st.rows_before = input.rows();
  st.cols_before = input.cols();
  st.comparison_budget = comparison_budget(input);
  st.maxima_history.push_back(star_maxima(input));
  st.delta_max_seen = st.maxima_history.back().delta_max;
  st.epsilon_max_seen = st.maxima_history.back().epsilon_max;

  std::unordered_set<std::string> taken(input.row_labels().begin(), input.row_labels().end());
  std::size_t z_counter = 0;
  const auto fresh_label = [&] {
    std::string l;
    do {
      l = "z" + std::to_string(z_counter++);
    } while (taken.contains(l));
    taken.insert(l);
    return l;
  };

  Relation cur = input;
  std::size_t cursor = 0;
  while (cursor < cur.rows()) {
    bool merged = false;
    for (std::size_t cand : candidate_vertices(cur, cursor)) {
      const IndexSet star_cols = detail::set_union(cur.row(cursor), cur.row(cand));
      const SubRelation star = restrict_to_columns(cur, star_cols);
      ++st.contractibility_tests;
      const bool ok = is_strong_collapsible(star.relation);
      res.tests.push_back(PairTest{cur.row_label(cursor), cur.row_label(cand), ok});
      if (!ok) continue;

      StepResult step = reduction_step(cur, cursor, cand, fresh_label());
#ifndef NDEBUG
      if (cur.cols() <= 500) {
        const auto before = to_toplexes(cur);
        const auto after = to_toplexes(step.relation);
        const int dim = std::min(3, std::max(max_toplex_dim(before), 0));
        try {
          assert(betti_gf2(before, dim) == betti_gf2(after, dim) && "reduction step changed homology");
        } catch (const SizeCapError&) {
        }
      }
#endif
      cur = std::move(step.relation);
      res.steps.push_back(std::move(step.report));
      ++st.steps_applied;
      st.maxima_history.push_back(star_maxima(cur));
      st.delta_max_seen = std::max(st.delta_max_seen, st.maxima_history.back().delta_max);
      st.epsilon_max_seen = std::max(st.epsilon_max_seen, st.maxima_history.back().epsilon_max);
      merged = true;
      break;
    }
    if (!merged) ++cursor;
  }

  st.rows_after = cur.rows();
  st.cols_after = cur.cols();
  res.relation = std::move(cur);
  return res;
}

/// One line of the step log, numbered from 1.
inline std::string format_step(const StepReport& s, std::size_t n) {
  return "STEP " + std::to_string(n) + ": merge " + s.xi + " " + s.xj + " -> " + s.z + " cols " +
         std::to_string(s.cols_before) + "->" + std::to_string(s.cols_after) + " dup " +
         std::to_string(s.duplicates_merged) + " face " + std::to_string(s.faces_absorbed);
}

}  // namespace dowker
