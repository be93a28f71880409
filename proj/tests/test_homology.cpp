#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "dowker/complex_io.hpp"
#include "dowker/homology.hpp"
#include "support/oracles.hpp"
#include "support/worked_example.hpp"

using namespace dowker;

namespace {

// Rank as log2 of the size of the column span, by enumerating every subset of
// columns. Only for matrices with a handful of columns.
std::size_t span_rank(const GF2Matrix& m) {
  std::set<std::vector<int>> span;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m.cols); ++mask) {
    std::vector<int> v(m.rows, 0);
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (!(mask >> j & 1)) continue;
      for (std::size_t i : m.columns[j]) v[i] ^= 1;
    }
    span.insert(std::move(v));
  }
  std::size_t r = 0;
  while ((std::size_t{1} << r) < span.size()) ++r;
  return r;
}

GF2Matrix random_matrix(std::mt19937& rng, std::size_t max_rows, std::size_t max_cols) {
  std::uniform_int_distribution<std::size_t> rd(1, max_rows), cd(1, max_cols);
  std::bernoulli_distribution bit(0.4);
  oracle::Dense d(rd(rng), std::vector<int>(cd(rng)));
  for (auto& row : d) {
    for (auto& v : row) v = bit(rng);
  }
  return GF2Matrix::from_dense(d);
}

// Composition of two sparse GF(2) maps, as a dense matrix.
oracle::Dense compose(const GF2Matrix& outer, const GF2Matrix& inner) {
  oracle::Dense out(outer.rows, std::vector<int>(inner.cols, 0));
  for (std::size_t j = 0; j < inner.cols; ++j) {
    for (std::size_t k : inner.columns[j]) {
      for (std::size_t i : outer.columns[k]) out[i][j] ^= 1;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("rank_gf2", "[homology]") {
  CHECK(rank_gf2(GF2Matrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
  CHECK(rank_gf2(GF2Matrix::from_dense({{1, 1}, {1, 1}})) == 1);
  const GF2Matrix d1 = GF2Matrix::from_dense({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  CHECK(span_rank(d1) == 2);
  CHECK(rank_gf2(d1) == 2);
  CHECK(rank_gf2(GF2Matrix{}) == 0);
}

TEST_CASE("enumerate_simplices", "[homology]") {
  SECTION("single triangle") {
    const auto cc = enumerate_simplices(make_toplex_list({{"a", "b", "c"}}), 2);
    CHECK(cc.count(0) == 3);
    CHECK(cc.count(1) == 3);
    CHECK(cc.count(2) == 1);
    CHECK(cc.count(3) == 0);
  }
  SECTION("cube surface") {
    const auto cc = enumerate_simplices(gen_sphere_cube(), 2);
    CHECK(cc.count(0) == 8);
    CHECK(cc.count(1) == 18);
    CHECK(cc.count(2) == 12);
    CHECK(euler_characteristic(cc) == 2);
  }
  SECTION("worked example matches brute-force expansion") {
    const auto list = example::six_toplexes();
    const auto brute = oracle::dowker_complex(list);
    std::vector<std::size_t> per_dim(4, 0);
    for (const auto& s : brute) ++per_dim[s.size() - 1];
    const auto cc = enumerate_simplices(list, 2);
    for (std::size_t d = 0; d < 4; ++d) CHECK(cc.count(d) == per_dim[d]);
  }
  SECTION("size cap") {
    CHECK_THROWS_AS(enumerate_simplices(gen_sphere_cube(), 2, 20), SizeCapError);
    ToplexListBuilder b;
    std::vector<std::string> big;
    for (int i = 0; i < 200; ++i) big.push_back("v" + std::to_string(i));
    b.add(big);
    CHECK_THROWS_AS(enumerate_simplices(std::move(b).build(), 6), SizeCapError);
    CHECK_THROWS_AS(enumerate_simplices(gen_sphere_cube(), -1), PreconditionError);
  }
}

TEST_CASE("betti_gf2", "[homology]") {
  CHECK(betti_gf2(gen_torus_grid(4, 4), 2) == std::vector<std::size_t>{1, 2, 1});
  CHECK(betti_gf2(make_toplex_list({{"p"}}), 2) == std::vector<std::size_t>{1, 0, 0});
  CHECK(betti_gf2(gen_sphere_cube(), 2) == std::vector<std::size_t>{1, 0, 1});
  CHECK(betti_gf2(gen_simplex_boundary(1), 2) == std::vector<std::size_t>{1, 1, 0});
  CHECK(betti_gf2(gen_simplex_boundary(3), 3) == std::vector<std::size_t>{1, 0, 0, 1});
  CHECK(betti_gf2(make_toplex_list({{"a"}, {"b"}, {"c", "d"}}), 1) == std::vector<std::size_t>{3, 0});
}

TEST_CASE("property: boundary of a boundary vanishes", "[homology][property]") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto list = oracle::random_toplexes(rng, 9, 10, 5);
    const auto cc = enumerate_simplices(list, 3);
    for (std::size_t d = 1; d + 1 < cc.boundary.size(); ++d) {
      const auto zero = compose(cc.boundary[d], cc.boundary[d + 1]);
      for (const auto& row : zero) REQUIRE(std::count(row.begin(), row.end(), 1) == 0);
    }
    // Every face of a listed simplex is listed one dimension down.
    for (std::size_t d = 1; d < cc.simplices_by_dim.size(); ++d) {
      for (const auto& col : cc.boundary[d].columns) REQUIRE(col.size() == d + 1);
    }
  }
}

TEST_CASE("property: Euler characteristic from Betti numbers", "[homology][property]") {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const auto list = oracle::random_toplexes(rng, 9, 10, 4);
    // Toplexes have at most 4 vertices, so dimension 3 is the top and the
    // extra enumerated level is empty.
    const auto cc = enumerate_simplices(list, 3);
    REQUIRE(cc.count(4) == 0);
    const auto b = betti_gf2(cc, 3);
    long long chi = 0;
    for (std::size_t d = 0; d < b.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long long>(b[d]);
    REQUIRE(chi == euler_characteristic(cc));
  }
}

TEST_CASE("property: K_R and L_R have the same Betti numbers", "[homology][property]") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Relation r = oracle::random_relation(rng, 8, 8);
    REQUIRE(betti_gf2(to_toplexes(r), 7) == betti_gf2(to_toplexes(transpose(r)), 7));
  }
}

TEST_CASE("property: rank agrees with the span oracle and with the transpose", "[homology][property]") {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const GF2Matrix m = random_matrix(rng, 9, 9);
    REQUIRE(rank_gf2(m) == span_rank(m));
    REQUIRE(rank_gf2(m) == rank_gf2(transpose(m)));
  }
}
