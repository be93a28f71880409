#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <set>
#include <vector>

#include "dowker/error.hpp"
#include "dowker/toplex_list.hpp"

namespace dowker {

inline constexpr std::size_t kDefaultSizeCap = 5'000'000;

// Sparse matrix over GF(2), stored by column. Each column lists the row
// indices of its nonzero entries in ascending order.
struct GF2Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::size_t>> columns;

  static GF2Matrix from_dense(const std::vector<std::vector<int>>& dense) {
    GF2Matrix m;
    m.rows = dense.size();
    m.cols = dense.empty() ? 0 : dense.front().size();
    m.columns.resize(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
      for (std::size_t j = 0; j < m.cols; ++j) {
        if (dense[i][j] & 1) m.columns[j].push_back(i);
      }
    }
    return m;
  }
};

inline GF2Matrix transpose(const GF2Matrix& m) {
  GF2Matrix t;
  t.rows = m.cols;
  t.cols = m.rows;
  t.columns.resize(t.cols);
  for (std::size_t j = 0; j < m.cols; ++j) {
    for (std::size_t i : m.columns[j]) t.columns[i].push_back(j);
  }
  return t;
}

// Rank over GF(2) by column reduction on the lowest nonzero (largest row
// index) of each column.
inline std::size_t rank_gf2(const GF2Matrix& m) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pivot_owner(m.rows, none);
  std::vector<std::vector<std::size_t>> reduced;
  reduced.reserve(m.cols);
  std::size_t rank = 0;
  std::vector<std::size_t> scratch;
  for (const auto& src : m.columns) {
    std::vector<std::size_t> col = src;
    while (!col.empty() && pivot_owner[col.back()] != none) {
      const auto& other = reduced[pivot_owner[col.back()]];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      pivot_owner[col.back()] = reduced.size();
      ++rank;
    }
    reduced.push_back(std::move(col));
  }
  return rank;
}

using Simplex = std::vector<std::uint32_t>;

/// Simplices of a complex by dimension, with GF(2) boundary matrices.
/// boundary[k] is the map from k-chains to (k-1)-chains; boundary[0] is the
/// zero map out of the vertices.
struct ChainComplexGF2 {
  std::vector<std::vector<Simplex>> simplices_by_dim;
  std::vector<GF2Matrix> boundary;

  std::size_t count(std::size_t dim) const {
    return dim < simplices_by_dim.size() ? simplices_by_dim[dim].size() : 0;
  }
};

namespace detail {

// Number of simplices of dimension <= top_dim in a full simplex with n
// vertices, saturating at `limit`.
inline std::size_t face_count(std::size_t n, std::size_t top_dim, std::size_t limit) {
  std::size_t total = 0;
  long double binom = 1;  // C(n, k)
  for (std::size_t k = 1; k <= std::min(n, top_dim + 1); ++k) {
    binom = binom * static_cast<long double>(n - k + 1) / static_cast<long double>(k);
    if (binom > static_cast<long double>(limit)) return limit + 1;
    total += static_cast<std::size_t>(binom + 0.5L);
    if (total > limit) return limit + 1;
  }
  return total;
}

}  // namespace detail

/// All simplices of the complex generated by `toplexes` up to dimension
/// max_dim + 1, so that the max_dim Betti number is exact. Throws
/// SizeCapError once the distinct simplex count would exceed `cap`.
inline ChainComplexGF2 enumerate_simplices(const ToplexList& toplexes, int max_dim,
                                           std::size_t cap = kDefaultSizeCap) {
  if (max_dim < 0) throw PreconditionError("enumerate_simplices: max_dim must be >= 0");
  const std::size_t top = static_cast<std::size_t>(max_dim) + 1;

  std::vector<std::set<Simplex>> faces(top + 1);
  std::size_t total = 0;
  Simplex sub;
  for (const auto& t : toplexes.toplexes) {
    if (detail::face_count(t.size(), top, cap) > cap) throw SizeCapError(cap);
    const std::size_t n = t.size();
    for (std::size_t k = 1; k <= std::min(n, top + 1); ++k) {
      // Lexicographic walk over k-subsets of t.
      std::vector<std::size_t> pick(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      for (;;) {
        sub.resize(k);
        for (std::size_t i = 0; i < k; ++i) sub[i] = static_cast<std::uint32_t>(t[pick[i]]);
        if (faces[k - 1].insert(sub).second && ++total > cap) throw SizeCapError(cap);
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }

  ChainComplexGF2 cc;
  cc.simplices_by_dim.resize(top + 1);
  for (std::size_t d = 0; d <= top; ++d) {
    cc.simplices_by_dim[d].assign(faces[d].begin(), faces[d].end());
  }
  cc.boundary.resize(top + 1);
  cc.boundary[0] = GF2Matrix{0, cc.simplices_by_dim[0].size(), {}};
  cc.boundary[0].columns.resize(cc.boundary[0].cols);
  for (std::size_t d = 1; d <= top; ++d) {
    const auto& lower = cc.simplices_by_dim[d - 1];
    const auto& upper = cc.simplices_by_dim[d];
    GF2Matrix& b = cc.boundary[d];
    b.rows = lower.size();
    b.cols = upper.size();
    b.columns.resize(b.cols);
    Simplex face;
    for (std::size_t j = 0; j < upper.size(); ++j) {
      auto& col = b.columns[j];
      for (std::size_t drop = 0; drop < upper[j].size(); ++drop) {
        face.clear();
        for (std::size_t i = 0; i < upper[j].size(); ++i) {
          if (i != drop) face.push_back(upper[j][i]);
        }
        const auto it = std::lower_bound(lower.begin(), lower.end(), face);
        col.push_back(static_cast<std::size_t>(it - lower.begin()));
      }
      std::sort(col.begin(), col.end());
    }
  }
  return cc;
}

/// Betti numbers over GF(2) for dimensions 0..max_dim.
inline std::vector<std::size_t> betti_gf2(const ChainComplexGF2& cc, int max_dim) {
  const std::size_t top = static_cast<std::size_t>(max_dim);
  std::vector<std::size_t> ranks(top + 2, 0);
  for (std::size_t d = 1; d <= top + 1 && d < cc.boundary.size(); ++d) ranks[d] = rank_gf2(cc.boundary[d]);
  std::vector<std::size_t> betti(top + 1);
  for (std::size_t d = 0; d <= top; ++d) betti[d] = cc.count(d) - ranks[d] - ranks[d + 1];
  return betti;
}

inline std::vector<std::size_t> betti_gf2(const ToplexList& toplexes, int max_dim,
                                          std::size_t cap = kDefaultSizeCap) {
  return betti_gf2(enumerate_simplices(toplexes, max_dim, cap), max_dim);
}

/// Euler characteristic of the enumerated simplices (all listed dimensions).
inline long long euler_characteristic(const ChainComplexGF2& cc) {
  long long chi = 0;
  for (std::size_t d = 0; d < cc.simplices_by_dim.size(); ++d) {
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(cc.simplices_by_dim[d].size());
  }
  return chi;
}

}  // namespace dowker
