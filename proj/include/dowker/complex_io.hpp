#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dowker/detail/sets.hpp"
#include "dowker/error.hpp"
#include "dowker/relation.hpp"
#include "dowker/toplex_list.hpp"

namespace dowker {

// ---------------------------------------------------------------------------
// Toplex files: one toplex per line, whitespace-separated vertex names,
// '#' comment lines. Blank lines are allowed only before the first toplex and
// after the last one.

inline ToplexList parse_toplex_file(std::string_view text) {
  ToplexListBuilder b;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t no = 0;
  std::size_t pending_blank = 0;
  bool started = false;
  while (std::getline(is, line)) {
    ++no;
    if (detail::is_comment(line)) continue;
    auto names = detail::split_ws(line);
    if (names.empty()) {
      if (started && pending_blank == 0) pending_blank = no;
      continue;
    }
    if (pending_blank != 0) throw ParseError("empty line inside toplex list", pending_blank);
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) throw ParseError("duplicate vertex '" + n + "'", no);
    }
    b.add(names);
    started = true;
  }
  return normalize(std::move(b).build());
}

inline std::string write_toplex_file(const ToplexList& list) {
  std::ostringstream os;
  for (const auto& t : list.toplexes) {
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? " " : "") << list.vertex_names[t[i]];
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// ASCII OFF. Coordinates are read past and dropped; every face becomes one
// toplex over its vertex indices. Vertices that no face uses are dropped and
// the rest keep their OFF index as name.

inline ToplexList parse_off(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  {
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
      ++no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      auto toks = detail::split_ws(line);
      if (!toks.empty()) lines.emplace_back(no, std::move(toks));
    }
  }
  std::size_t at = 0;
  if (lines.empty() || lines[0].second[0] != "OFF") throw ParseError("missing OFF header", lines.empty() ? 0 : lines[0].first);
  std::vector<std::string> counts(lines[0].second.begin() + 1, lines[0].second.end());
  ++at;
  if (counts.empty()) {
    if (at >= lines.size()) throw ParseError("truncated: missing counts line", 0);
    counts = lines[at++].second;
  }
  if (counts.size() < 2) throw ParseError("counts line needs vertex and face counts", lines[at - 1].first);
  const std::size_t nv = detail::parse_count(counts[0], lines[at - 1].first);
  const std::size_t nf = detail::parse_count(counts[1], lines[at - 1].first);

  for (std::size_t v = 0; v < nv; ++v, ++at) {
    if (at >= lines.size()) throw ParseError("truncated: expected " + std::to_string(nv) + " vertices", 0);
    if (lines[at].second.size() < 3) throw ParseError("vertex line needs three coordinates", lines[at].first);
  }

  std::vector<IndexSet> faces;
  std::vector<bool> used(nv, false);
  for (std::size_t f = 0; f < nf; ++f, ++at) {
    if (at >= lines.size()) throw ParseError("truncated: expected " + std::to_string(nf) + " faces", 0);
    const auto& [no, toks] = lines[at];
    const std::size_t k = detail::parse_count(toks[0], no);
    if (k == 0) throw ParseError("face with no vertices", no);
    if (toks.size() < k + 1) throw ParseError("face lists fewer than " + std::to_string(k) + " indices", no);
    IndexSet face;
    for (std::size_t i = 1; i <= k; ++i) {
      const std::size_t v = detail::parse_count(toks[i], no);
      if (v >= nv) throw ParseError("face index " + toks[i] + " out of range", no);
      face.push_back(v);
      used[v] = true;
    }
    detail::sort_unique(face);
    if (face.size() != k) throw ParseError("face repeats a vertex", no);
    faces.push_back(std::move(face));
  }

  ToplexList out;
  std::vector<std::size_t> compact(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!used[v]) continue;
    compact[v] = out.vertex_names.size();
    out.vertex_names.push_back(std::to_string(v));
  }
  for (auto& f : faces) {
    for (auto& v : f) v = compact[v];
    out.toplexes.push_back(std::move(f));
  }
  return normalize(std::move(out));
}

/// Writes an OFF file with all coordinates at the origin. Vertex i of the
/// file is list.vertex_names[i].
inline std::string write_off(const ToplexList& list) {
  std::ostringstream os;
  os << "OFF\n" << list.vertex_names.size() << ' ' << list.toplexes.size() << " 0\n";
  for (std::size_t v = 0; v < list.vertex_names.size(); ++v) os << "0 0 0\n";
  for (const auto& t : list.toplexes) {
    os << t.size();
    for (std::size_t v : t) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Covers

struct CoverSet {
  std::string name;
  std::vector<std::string> elements;
};

/// Relation whose rows are the cover sets and whose columns are the distinct
/// element fingerprints (the set of cover sets holding a given element). Its
/// Dowker complex is the nerve of the cover, restricted to intersections that
/// some element witnesses. Columns are labelled by their first witness and the
/// result is column irreducible.
inline Relation witness_relation(const std::vector<CoverSet>& cover) {
  std::vector<std::string> row_labels;
  std::map<std::string, IndexSet> holders;  // element -> cover sets
  std::vector<std::string> order;           // elements by first appearance
  for (std::size_t s = 0; s < cover.size(); ++s) {
    if (cover[s].elements.empty()) throw MalformedInput("cover set '" + cover[s].name + "' is empty");
    row_labels.push_back(cover[s].name);
    for (const auto& e : cover[s].elements) {
      auto [it, inserted] = holders.try_emplace(e);
      if (inserted) order.push_back(e);
      if (it->second.empty() || it->second.back() != s) it->second.push_back(s);
    }
  }

  ToplexList fingerprints;
  fingerprints.vertex_names = row_labels;
  std::map<IndexSet, bool> seen;
  for (const auto& e : order) {
    const auto& fp = holders.at(e);
    if (!seen.emplace(fp, true).second) continue;
    fingerprints.toplexes.push_back(fp);
    fingerprints.toplex_names.push_back(e);
  }
  try {
    return from_toplexes(fingerprints);
  } catch (const PreconditionError& e) {
    throw MalformedInput(e.what());
  }
}

// ---------------------------------------------------------------------------
// Generated surfaces. Vertices are named "0", "1", ... by index.

namespace detail {

inline ToplexList numbered(std::size_t vertices, std::vector<IndexSet> toplexes) {
  ToplexList out;
  for (std::size_t v = 0; v < vertices; ++v) out.vertex_names.push_back(std::to_string(v));
  for (auto& t : toplexes) sort_unique(t);
  out.toplexes = std::move(toplexes);
  return out;
}

}  // namespace detail

/// Surface of the unit cube with every square split into two triangles:
/// 8 vertices, 12 triangles.
inline ToplexList gen_sphere_cube() {
  std::vector<IndexSet> tris;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const std::size_t a = (axis + 1) % 3;
    const std::size_t b = (axis + 2) % 3;
    for (std::size_t side = 0; side < 2; ++side) {
      const auto corner = [&](std::size_t u, std::size_t v) { return (side << axis) | (u << a) | (v << b); };
      const std::size_t c0 = corner(0, 0), c1 = corner(1, 0), c2 = corner(1, 1), c3 = corner(0, 1);
      tris.push_back({c0, c1, c2});
      tris.push_back({c0, c2, c3});
    }
  }
  return detail::numbered(8, std::move(tris));
}

/// Latitude/longitude sphere: two poles plus stacks-1 rings of `slices`
/// vertices; slices*(stacks-1)+2 vertices and 2*slices*(stacks-1) triangles.
inline ToplexList gen_sphere_uv(std::size_t slices, std::size_t stacks) {
  if (slices < 3 || stacks < 3) throw PreconditionError("gen_sphere_uv: slices and stacks must be >= 3");
  const std::size_t rings = stacks - 1;
  const std::size_t north = 0;
  const std::size_t south = 1 + rings * slices;
  const auto at = [&](std::size_t ring, std::size_t s) { return 1 + ring * slices + s % slices; };
  std::vector<IndexSet> tris;
  for (std::size_t s = 0; s < slices; ++s) tris.push_back({north, at(0, s), at(0, s + 1)});
  for (std::size_t r = 0; r + 1 < rings; ++r) {
    for (std::size_t s = 0; s < slices; ++s) {
      tris.push_back({at(r, s), at(r, s + 1), at(r + 1, s + 1)});
      tris.push_back({at(r, s), at(r + 1, s + 1), at(r + 1, s)});
    }
  }
  for (std::size_t s = 0; s < slices; ++s) tris.push_back({south, at(rings - 1, s), at(rings - 1, s + 1)});
  return detail::numbered(south + 1, std::move(tris));
}

/// m x n vertex grid with wraparound in both directions, each cell split into
/// two triangles: mn vertices, 2mn triangles.
inline ToplexList gen_torus_grid(std::size_t m, std::size_t n) {
  if (m < 3 || n < 3) throw PreconditionError("gen_torus_grid: m and n must be >= 3");
  const auto at = [&](std::size_t i, std::size_t j) { return (i % m) * n + j % n; };
  std::vector<IndexSet> tris;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tris.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      tris.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  }
  return detail::numbered(m * n, std::move(tris));
}

/// Boundary of the (n+1)-simplex: its n+2 facets on n+2 vertices. Facet k
/// omits vertex k.
inline ToplexList gen_simplex_boundary(std::size_t n) {
  std::vector<IndexSet> facets;
  for (std::size_t k = 0; k < n + 2; ++k) {
    IndexSet f;
    for (std::size_t v = 0; v < n + 2; ++v) {
      if (v != k) f.push_back(v);
    }
    facets.push_back(std::move(f));
  }
  return detail::numbered(n + 2, std::move(facets));
}

}  // namespace dowker
