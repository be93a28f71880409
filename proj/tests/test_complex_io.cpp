#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "dowker/complex_io.hpp"
#include "dowker/homology.hpp"
#include "support/oracles.hpp"
#include "support/worked_example.hpp"

using namespace dowker;

namespace {

// Closed-surface check: every edge lies in exactly two triangles.
bool every_edge_twice(const ToplexList& list) {
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
  for (const auto& t : list.toplexes) {
    if (t.size() != 3) return false;
    ++edges[{t[0], t[1]}];
    ++edges[{t[0], t[2]}];
    ++edges[{t[1], t[2]}];
  }
  for (const auto& [e, n] : edges) {
    if (n != 2) return false;
  }
  return !edges.empty();
}

constexpr const char* kTetraOff =
    "OFF\n"
    "# tetrahedron\n"
    "4 4 6\n"
    "0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
    "3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";

}  // namespace

TEST_CASE("parse_toplex_file", "[io]") {
  SECTION("worked example") {
    const auto list = parse_toplex_file(
        "# six toplexes\n"
        "x1 x2\nx1 x3\nx2 x3 x4\nx3 x4 x5\nx4 x6\nx5 x6\n");
    CHECK(oracle::dense(from_toplexes(list)) == example::M_R);
  }
  SECTION("single point") {
    const auto list = parse_toplex_file("a\n");
    CHECK(list.vertex_names == std::vector<std::string>{"a"});
    CHECK(list.toplexes == std::vector<IndexSet>{{0}});
  }
  SECTION("containment is normalized away") {
    const auto list = parse_toplex_file("a b\na b c\n");
    CHECK(list.toplexes == std::vector<IndexSet>{{0, 1, 2}});
  }
  SECTION("blank lines around the body are fine") {
    CHECK(parse_toplex_file("\n\na b\nb c\n\n").size() == 2);
  }
  SECTION("errors carry line numbers") {
    try {
      parse_toplex_file("a b\n\nb c\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    try {
      parse_toplex_file("a b\nb c b\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SECTION("write then parse") {
    const auto list = gen_torus_grid(3, 4);
    CHECK(parse_toplex_file(write_toplex_file(list)).toplexes.size() == 24);
  }
}

TEST_CASE("parse_off", "[io]") {
  SECTION("tetrahedron boundary") {
    const auto list = parse_off(kTetraOff);
    CHECK(list.size() == 4);
    for (const auto& t : list.toplexes) CHECK(t.size() == 3);
    CHECK(betti_gf2(list, 2) == std::vector<std::size_t>{1, 0, 1});
  }
  SECTION("cube round trip") {
    const auto cube = gen_sphere_cube();
    const auto list = parse_off(write_off(cube));
    CHECK(list.size() == 12);
    for (const auto& t : list.toplexes) CHECK(t.size() == 3);
    CHECK(list == cube);
  }
  SECTION("quad face stays whole") {
    const auto list = parse_off("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    REQUIRE(list.size() == 1);
    CHECK(list.toplexes[0].size() == 4);
  }
  SECTION("counts on the header line, colors after faces, unused vertices") {
    const auto list = parse_off("OFF 5 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n9 9 9\n3 1 2 3 255 0 0\n");
    CHECK(list.vertex_names == std::vector<std::string>{"1", "2", "3"});
    CHECK(list.toplexes == std::vector<IndexSet>{{0, 1, 2}});
  }
  SECTION("errors") {
    CHECK_THROWS_AS(parse_off("PLY\n"), ParseError);
    CHECK_THROWS_AS(parse_off("OFF\n4 1 0\n0 0 0\n1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n"), ParseError);
    CHECK_THROWS_AS(parse_off("OFF\n3 2 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 1\n"), ParseError);
  }
}

TEST_CASE("witness_relation", "[io]") {
  SECTION("overlapping pair gives an edge") {
    const Relation r = witness_relation({{"A", {"1", "2"}}, {"B", {"2", "3"}}});
    const oracle::Complex edge = {{"A"}, {"B"}, {"A", "B"}};
    CHECK(oracle::dowker_complex(r) == edge);
    CHECK(r.cols() == 1);
    CHECK(r.col_label(0) == "2");
  }
  SECTION("disjoint sets give points") {
    const Relation r = witness_relation({{"A", {"1"}}, {"B", {"2", "3"}}, {"C", {"4"}}});
    CHECK(oracle::dense(r) == oracle::Dense{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  }
  SECTION("equal sets give one simplex") {
    const Relation r = witness_relation({{"A", {"1", "2"}}, {"B", {"2", "1"}}, {"C", {"1", "2"}}});
    CHECK(oracle::dense(r) == oracle::Dense{{1}, {1}, {1}});
  }
  SECTION("errors") {
    CHECK_THROWS_AS(witness_relation({{"A", {"1"}}, {"B", {}}}), MalformedInput);
    CHECK_THROWS_AS(witness_relation({{"A", {"1"}}, {"A", {"2"}}}), MalformedInput);
  }
}

TEST_CASE("property: witness relations are column irreducible nerves", "[io][property]") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> nsets(1, 6), nelems(1, 5), elem(0, 9);
    std::vector<CoverSet> cover;
    const int s = nsets(rng);
    for (int i = 0; i < s; ++i) {
      CoverSet c{"U" + std::to_string(i), {}};
      const int k = nelems(rng);
      for (int j = 0; j < k; ++j) c.elements.push_back(std::to_string(elem(rng)));
      cover.push_back(std::move(c));
    }
    const Relation r = witness_relation(cover);
    REQUIRE_FALSE(oracle::has_column_containment(oracle::dense(r)));
    // Nerve restricted to witnessed intersections: a set of cover sets is a
    // simplex iff some element lies in all of them.
    oracle::Complex nerve;
    for (int e = 0; e <= 9; ++e) {
      oracle::LabelSet holders;
      for (const auto& c : cover) {
        if (std::find(c.elements.begin(), c.elements.end(), std::to_string(e)) != c.elements.end()) {
          holders.insert(c.name);
        }
      }
      const std::vector<std::string> h(holders.begin(), holders.end());
      for (std::size_t mask = 1; mask < (std::size_t{1} << h.size()); ++mask) {
        oracle::LabelSet sub;
        for (std::size_t i = 0; i < h.size(); ++i) {
          if (mask >> i & 1) sub.insert(h[i]);
        }
        nerve.insert(sub);
      }
    }
    REQUIRE(oracle::dowker_complex(r) == nerve);
  }
}

TEST_CASE("generators", "[io]") {
  SECTION("cube sphere") {
    const auto s = gen_sphere_cube();
    CHECK(s.vertex_count() == 8);
    CHECK(s.size() == 12);
    CHECK(every_edge_twice(s));
    CHECK(betti_gf2(s, 2) == std::vector<std::size_t>{1, 0, 1});
  }
  SECTION("uv sphere") {
    const auto s = gen_sphere_uv(24, 21);
    CHECK(s.vertex_count() == 24 * 20 + 2);
    CHECK(s.vertex_count() == 482);
    CHECK(s.size() == 2 * 24 * 20);
    CHECK(s.size() == 960);
    CHECK(every_edge_twice(s));
    CHECK(euler_characteristic(enumerate_simplices(s, 1)) == 2);
    CHECK(betti_gf2(gen_sphere_uv(5, 4), 2) == std::vector<std::size_t>{1, 0, 1});
  }
  SECTION("torus") {
    for (auto [m, n] : {std::pair{3, 3}, {4, 4}, {5, 7}}) {
      const auto t = gen_torus_grid(m, n);
      CHECK(t.vertex_count() == static_cast<std::size_t>(m * n));
      CHECK(t.size() == static_cast<std::size_t>(2 * m * n));
      CHECK(every_edge_twice(t));
      CHECK(betti_gf2(t, 2) == std::vector<std::size_t>{1, 2, 1});
    }
    const auto big = gen_torus_grid(30, 40);
    CHECK(big.vertex_count() == 1200);
    CHECK(big.size() == 2400);
  }
  SECTION("simplex boundary") {
    const auto s = gen_simplex_boundary(2);
    CHECK(s.vertex_count() == 4);
    CHECK(s.size() == 4);
    CHECK(every_edge_twice(s));
  }
  SECTION("parameter checks") {
    CHECK_THROWS_AS(gen_sphere_uv(2, 5), PreconditionError);
    CHECK_THROWS_AS(gen_sphere_uv(5, 2), PreconditionError);
    CHECK_THROWS_AS(gen_torus_grid(2, 5), PreconditionError);
  }
}

TEST_CASE("property: relation text round-trips generator and parser output", "[io][property]") {
  for (const auto& list : {gen_sphere_cube(), gen_sphere_uv(6, 5), gen_torus_grid(4, 5), gen_simplex_boundary(3),
                           parse_off(kTetraOff), example::six_toplexes()}) {
    const Relation r = from_toplexes(list);
    REQUIRE(read_relation(write_relation(r)) == r);
  }
}
