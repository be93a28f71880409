#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dowker/detail/sets.hpp"
#include "dowker/error.hpp"
#include "dowker/toplex_list.hpp"

namespace dowker {

/// A finite relation R between row labels (vertices) and column labels
/// (toplexes), stored as a sparse binary matrix indexed both ways.
///
/// Rows and columns are addressed by position. row(x) is R(x), the columns
/// related to x; col(y) is R^-1(y), the rows related to y. Both are sorted
/// index sets and are exact transposes of one another.
///
/// A Relation never has an all-zero row or column and never repeats a label.
/// Values are immutable; the free functions below return new relations.
class Relation {
 public:
  Relation() = default;

  /// Validating constructor. Throws PreconditionError on duplicate labels,
  /// out-of-range or unsorted indices, or an all-zero row or column.
  static Relation from_rows(std::vector<std::string> row_labels,
                            std::vector<std::string> col_labels,
                            std::vector<IndexSet> rows) {
    if (rows.size() != row_labels.size()) {
      throw PreconditionError("row label count does not match row count");
    }
    check_unique(row_labels, "row");
    check_unique(col_labels, "column");
    for (std::size_t x = 0; x < rows.size(); ++x) {
      if (rows[x].empty()) throw PreconditionError("row '" + row_labels[x] + "' is empty");
      if (!detail::is_sorted_unique(rows[x])) {
        throw PreconditionError("row '" + row_labels[x] + "' is not sorted and duplicate-free");
      }
      if (rows[x].back() >= col_labels.size()) {
        throw PreconditionError("row '" + row_labels[x] + "' has an out-of-range column");
      }
    }
    Relation r(std::move(row_labels), std::move(col_labels), std::move(rows));
    for (std::size_t y = 0; y < r.cols_.size(); ++y) {
      if (r.cols_[y].empty()) throw PreconditionError("column '" + r.col_labels_[y] + "' is empty");
    }
    return r;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  std::span<const std::size_t> row(std::size_t x) const { return rows_.at(x); }
  std::span<const std::size_t> col(std::size_t y) const { return cols_.at(y); }
  const std::vector<IndexSet>& row_sets() const noexcept { return rows_; }
  const std::vector<IndexSet>& col_sets() const noexcept { return cols_; }

  const std::string& row_label(std::size_t x) const { return row_labels_.at(x); }
  const std::string& col_label(std::size_t y) const { return col_labels_.at(y); }
  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

  std::optional<std::size_t> find_row(std::string_view label) const {
    for (std::size_t x = 0; x < row_labels_.size(); ++x) {
      if (row_labels_[x] == label) return x;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> find_col(std::string_view label) const {
    for (std::size_t y = 0; y < col_labels_.size(); ++y) {
      if (col_labels_[y] == label) return y;
    }
    return std::nullopt;
  }

  bool related(std::size_t x, std::size_t y) const {
    const auto& r = rows_.at(x);
    return std::binary_search(r.begin(), r.end(), y);
  }

  std::size_t incidence_count() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  bool operator==(const Relation& o) const {
    return row_labels_ == o.row_labels_ && col_labels_ == o.col_labels_ && rows_ == o.rows_;
  }

 private:
  Relation(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
           std::vector<IndexSet> rows)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        rows_(std::move(rows)),
        cols_(col_labels_.size()) {
    for (std::size_t x = 0; x < rows_.size(); ++x) {
      for (std::size_t y : rows_[x]) cols_[y].push_back(x);
    }
  }

  static void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) {
        throw PreconditionError(std::string("duplicate ") + what + " label '" + l + "'");
      }
    }
  }

  friend Relation unchecked_relation(std::vector<std::string>, std::vector<std::string>,
                                     std::vector<IndexSet>);

  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<IndexSet> rows_;
  std::vector<IndexSet> cols_;
};

// Internal fast path for operations that preserve the invariants by
// construction.
inline Relation unchecked_relation(std::vector<std::string> row_labels,
                                   std::vector<std::string> col_labels,
                                   std::vector<IndexSet> rows) {
  return Relation(std::move(row_labels), std::move(col_labels), std::move(rows));
}

/// A relation restricted to a column subset, with rows that lose every
/// incidence dropped. `relation` uses local indexing; parent_rows[i] and
/// parent_cols[j] map local row i and local column j back to the parent.
struct SubRelation {
  Relation relation;
  std::vector<std::size_t> parent_rows;
  std::vector<std::size_t> parent_cols;
};

/// Result of a column clean-up. Removed column indices refer to the input.
struct ColumnCleanup {
  Relation relation;
  std::vector<std::size_t> faces;       // strictly contained in a surviving column
  std::vector<std::size_t> duplicates;  // equal to a lower-indexed column
};

namespace detail {

inline Relation drop_columns(const Relation& r, const std::vector<bool>& drop) {
  std::vector<std::size_t> remap(r.cols(), 0);
  std::vector<std::string> col_labels;
  std::size_t next = 0;
  for (std::size_t y = 0; y < r.cols(); ++y) {
    if (drop[y]) continue;
    remap[y] = next++;
    col_labels.push_back(r.col_label(y));
  }
  std::vector<IndexSet> rows(r.rows());
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t y : r.row(x)) {
      if (!drop[y]) rows[x].push_back(remap[y]);
    }
  }
  return unchecked_relation(r.row_labels(), std::move(col_labels), std::move(rows));
}

inline void check_columns(const Relation& r, std::span<const std::size_t> cols) {
  for (std::size_t y : cols) {
    if (y >= r.cols()) throw PreconditionError("column index " + std::to_string(y) + " out of range");
  }
}

}  // namespace detail

/// Relation of a simplicial complex given by its toplexes: x R y iff vertex x
/// lies in toplex y. Duplicate and contained toplexes are dropped first, so the
/// result is column irreducible. Columns are labelled from toplex_names when
/// present, otherwise "y<k>" with k the toplex's input position.
inline Relation from_toplexes(const ToplexList& list) {
  std::vector<bool> used(list.vertex_names.size(), false);
  for (const auto& t : list.toplexes) {
    if (t.empty()) throw MalformedInput("empty toplex");
    for (std::size_t v : t) {
      if (v >= used.size()) throw MalformedInput("toplex refers to an unknown vertex");
      used[v] = true;
    }
  }
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (!used[v]) throw MalformedInput("vertex '" + list.vertex_names[v] + "' belongs to no toplex");
  }
  if (!list.toplex_names.empty() && list.toplex_names.size() != list.toplexes.size()) {
    throw MalformedInput("toplex name count does not match toplex count");
  }

  const auto cls = detail::classify_containment(list.toplexes, list.vertex_names.size());
  std::vector<std::string> col_labels;
  std::vector<IndexSet> rows(list.vertex_names.size());
  for (std::size_t t = 0; t < list.toplexes.size(); ++t) {
    if (cls[t] != detail::Absorption::kept) continue;
    const std::size_t y = col_labels.size();
    col_labels.push_back(list.toplex_names.empty() ? "y" + std::to_string(t) : list.toplex_names[t]);
    for (std::size_t v : list.toplexes[t]) rows[v].push_back(y);
  }
  return Relation::from_rows(list.vertex_names, std::move(col_labels), std::move(rows));
}

/// The toplexes of K_R: one vertex set per column, named by column label.
inline ToplexList to_toplexes(const Relation& r) {
  return ToplexList{r.row_labels(), r.col_sets(), r.col_labels()};
}

/// Sub-relation on `cols` with empty rows dropped. When `cols` is the union of
/// R(x) over a vertex set A, its Dowker complex is the union of the closed
/// stars of A.
inline SubRelation restrict_to_columns(const Relation& r, std::span<const std::size_t> cols) {
  if (cols.empty()) throw PreconditionError("restrict_to_columns: empty column set");
  detail::check_columns(r, cols);
  IndexSet keep_cols(cols.begin(), cols.end());
  detail::sort_unique(keep_cols);

  IndexSet keep_rows;
  for (std::size_t y : keep_cols) keep_rows.insert(keep_rows.end(), r.col(y).begin(), r.col(y).end());
  detail::sort_unique(keep_rows);

  std::vector<std::size_t> local_col(r.cols(), 0);
  std::vector<std::string> col_labels;
  col_labels.reserve(keep_cols.size());
  for (std::size_t j = 0; j < keep_cols.size(); ++j) {
    local_col[keep_cols[j]] = j;
    col_labels.push_back(r.col_label(keep_cols[j]));
  }
  std::vector<bool> selected(r.cols(), false);
  for (std::size_t y : keep_cols) selected[y] = true;

  std::vector<std::string> row_labels;
  std::vector<IndexSet> rows;
  row_labels.reserve(keep_rows.size());
  rows.reserve(keep_rows.size());
  for (std::size_t x : keep_rows) {
    row_labels.push_back(r.row_label(x));
    IndexSet local;
    for (std::size_t y : r.row(x)) {
      if (selected[y]) local.push_back(local_col[y]);
    }
    rows.push_back(std::move(local));
  }
  return SubRelation{unchecked_relation(std::move(row_labels), std::move(col_labels), std::move(rows)),
                     std::move(keep_rows), std::move(keep_cols)};
}

/// Appends a row with the given label and columns.
inline Relation add_row(const Relation& r, const std::string& label, std::span<const std::size_t> cols) {
  if (r.find_row(label)) throw PreconditionError("add_row: duplicate row label '" + label + "'");
  if (cols.empty()) throw PreconditionError("add_row: empty column set");
  detail::check_columns(r, cols);
  IndexSet row(cols.begin(), cols.end());
  detail::sort_unique(row);
  auto labels = r.row_labels();
  labels.push_back(label);
  auto rows = r.row_sets();
  rows.push_back(std::move(row));
  return unchecked_relation(std::move(labels), r.col_labels(), std::move(rows));
}

/// Removes rows by position. Columns left without any row are removed too.
inline Relation remove_row_indices(const Relation& r, std::span<const std::size_t> xs) {
  std::vector<bool> drop(r.rows(), false);
  for (std::size_t x : xs) {
    if (x >= r.rows()) throw PreconditionError("row index " + std::to_string(x) + " out of range");
    drop[x] = true;
  }
  std::vector<bool> col_alive(r.cols(), false);
  std::vector<std::string> labels;
  std::vector<IndexSet> rows;
  for (std::size_t x = 0; x < r.rows(); ++x) {
    if (drop[x]) continue;
    labels.push_back(r.row_label(x));
    rows.push_back(r.row_sets()[x]);
    for (std::size_t y : r.row(x)) col_alive[y] = true;
  }
  auto kept = unchecked_relation(std::move(labels), r.col_labels(), std::move(rows));
  std::vector<bool> drop_cols(r.cols());
  bool any = false;
  for (std::size_t y = 0; y < r.cols(); ++y) {
    drop_cols[y] = !col_alive[y];
    any = any || drop_cols[y];
  }
  return any ? detail::drop_columns(kept, drop_cols) : kept;
}

/// Removes rows by label. Throws PreconditionError on an unknown label.
inline Relation remove_rows(const Relation& r, std::span<const std::string> labels) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t x = 0; x < r.rows(); ++x) index.emplace(r.row_label(x), x);
  std::vector<std::size_t> xs;
  for (const auto& l : labels) {
    auto it = index.find(l);
    if (it == index.end()) throw PreconditionError("remove_rows: unknown row label '" + l + "'");
    xs.push_back(it->second);
  }
  return remove_row_indices(r, xs);
}

inline Relation remove_rows(const Relation& r, std::initializer_list<std::string> labels) {
  return remove_rows(r, std::span<const std::string>(labels.begin(), labels.size()));
}

/// The inverse relation R^-1: rows and columns swap roles.
inline Relation transpose(const Relation& r) {
  return unchecked_relation(r.col_labels(), r.row_labels(), r.col_sets());
}

/// Removes every column whose row set is strictly contained in another
/// column's, and every exact duplicate except the lowest-indexed copy. With
/// `restrict_to`, only pairs whose members both lie in that set are compared.
inline ColumnCleanup clean_columns(const Relation& r,
                                   std::optional<std::span<const std::size_t>> restrict_to = std::nullopt) {
  std::vector<bool> eligible;
  if (restrict_to) {
    detail::check_columns(r, *restrict_to);
    eligible.assign(r.cols(), false);
    for (std::size_t y : *restrict_to) eligible[y] = true;
  }
  const auto cls = detail::classify_containment(r.col_sets(), r.rows(), eligible);
  ColumnCleanup out;
  std::vector<bool> drop(r.cols(), false);
  for (std::size_t y = 0; y < cls.size(); ++y) {
    if (cls[y] == detail::Absorption::face) out.faces.push_back(y);
    if (cls[y] == detail::Absorption::duplicate) out.duplicates.push_back(y);
    drop[y] = cls[y] != detail::Absorption::kept;
  }
  out.relation = (out.faces.empty() && out.duplicates.empty()) ? r : detail::drop_columns(r, drop);
  return out;
}

inline Relation make_column_irreducible(const Relation& r,
                                        std::optional<std::span<const std::size_t>> restrict_to = std::nullopt) {
  return clean_columns(r, restrict_to).relation;
}

/// True when no column's row set is contained in another column's.
inline bool is_column_irreducible(const Relation& r) {
  const auto cls = detail::classify_containment(r.col_sets(), r.rows());
  return std::all_of(cls.begin(), cls.end(), [](auto c) { return c == detail::Absorption::kept; });
}

// ---------------------------------------------------------------------------
// Text format
//
//   <rows> <cols>
//   <row labels...>
//   <column labels...>
//   <ascending column indices of row 0>
//   ...
//
// Lines starting with '#' are comments. An empty row line is rejected.

inline std::string write_relation(const Relation& r) {
  std::ostringstream os;
  const auto join = [&os](const auto& items) {
    bool first = true;
    for (const auto& it : items) {
      if (!first) os << ' ';
      os << it;
      first = false;
    }
    os << '\n';
  };
  os << r.rows() << ' ' << r.cols() << '\n';
  join(r.row_labels());
  join(r.col_labels());
  for (const auto& row : r.row_sets()) join(row);
  return os.str();
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(std::move(tok));
  return out;
}

inline bool is_comment(std::string_view line) {
  const auto p = line.find_first_not_of(" \t\r");
  return p != std::string_view::npos && line[p] == '#';
}

inline std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a non-negative integer, got '" + tok + "'", line);
  }
  if (pos != tok.size() || tok.front() == '-' || tok.front() == '+') {
    throw ParseError("expected a non-negative integer, got '" + tok + "'", line);
  }
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// Parses the relation text format. Throws ParseError with a line number.
inline Relation read_relation(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
      ++no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (detail::is_comment(line)) continue;
      lines.emplace_back(no, std::move(line));
    }
  }
  // Trailing blank lines carry no data.
  while (!lines.empty() && detail::split_ws(lines.back().second).empty() && lines.size() > 3) {
    lines.pop_back();
  }
  if (lines.empty()) throw ParseError("missing header line", 0);

  const auto header = detail::split_ws(lines[0].second);
  if (header.size() != 2) throw ParseError("header must be '<rows> <cols>'", lines[0].first);
  const std::size_t m = detail::parse_count(header[0], lines[0].first);
  const std::size_t n = detail::parse_count(header[1], lines[0].first);
  if (lines.size() < 3) throw ParseError("missing label lines", lines.back().first);

  auto row_labels = detail::split_ws(lines[1].second);
  auto col_labels = detail::split_ws(lines[2].second);
  if (row_labels.size() != m) {
    throw ParseError("expected " + std::to_string(m) + " row labels", lines[1].first);
  }
  if (col_labels.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " column labels", lines[2].first);
  }
  if (lines.size() - 3 < m) throw ParseError("truncated: expected " + std::to_string(m) + " row lines", 0);

  std::vector<IndexSet> rows(m);
  for (std::size_t x = 0; x < m; ++x) {
    const auto& [no, line] = lines[3 + x];
    const auto toks = detail::split_ws(line);
    if (toks.empty()) throw ParseError("empty row '" + row_labels[x] + "'", no);
    for (const auto& t : toks) {
      const std::size_t y = detail::parse_count(t, no);
      if (y >= n) throw ParseError("column index " + t + " out of range", no);
      if (!rows[x].empty() && y <= rows[x].back()) throw ParseError("column indices must ascend", no);
      rows[x].push_back(y);
    }
  }
  if (lines.size() - 3 > m) throw ParseError("unexpected content after last row", lines[3 + m].first);
  try {
    return Relation::from_rows(std::move(row_labels), std::move(col_labels), std::move(rows));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace dowker
