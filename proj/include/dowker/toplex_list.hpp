#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "dowker/detail/sets.hpp"
#include "dowker/error.hpp"

namespace dowker {

// Ordered list of vertex sets: the interchange format between parsers,
// generators, the relation builder and the homology oracle.
//
// Toplexes hold indices into vertex_names, sorted ascending. toplex_names is
// either empty or parallel to toplexes.
struct ToplexList {
  std::vector<std::string> vertex_names;
  std::vector<IndexSet> toplexes;
  std::vector<std::string> toplex_names;

  std::size_t vertex_count() const noexcept { return vertex_names.size(); }
  std::size_t size() const noexcept { return toplexes.size(); }

  bool operator==(const ToplexList&) const = default;
};

// Builds toplex lists from vertex names. Vertices are indexed in order of
// first appearance.
class ToplexListBuilder {
 public:
  std::size_t vertex(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, list_.vertex_names.size());
    if (inserted) list_.vertex_names.push_back(name);
    return it->second;
  }

  // Throws MalformedInput on an empty toplex or a repeated vertex.
  void add(const std::vector<std::string>& names) {
    if (names.empty()) throw MalformedInput("empty toplex");
    IndexSet t;
    t.reserve(names.size());
    for (const auto& n : names) t.push_back(vertex(n));
    const std::size_t before = t.size();
    detail::sort_unique(t);
    if (t.size() != before) throw MalformedInput("repeated vertex in toplex");
    list_.toplexes.push_back(std::move(t));
  }

  ToplexList build() && { return std::move(list_); }

 private:
  ToplexList list_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline ToplexList make_toplex_list(const std::vector<std::vector<std::string>>& toplexes) {
  ToplexListBuilder b;
  for (const auto& t : toplexes) b.add(t);
  return std::move(b).build();
}

// Largest toplex dimension (size - 1); -1 for an empty list.
inline int max_toplex_dim(const ToplexList& list) {
  int d = -1;
  for (const auto& t : list.toplexes) d = std::max(d, static_cast<int>(t.size()) - 1);
  return d;
}

// Drops duplicate toplexes (first occurrence wins) and toplexes contained in
// another one. Vertex indexing is unchanged.
inline ToplexList normalize(ToplexList list) {
  for (const auto& t : list.toplexes) {
    if (t.empty()) throw MalformedInput("empty toplex");
  }
  const auto cls = detail::classify_containment(list.toplexes, list.vertex_names.size());
  ToplexList out;
  out.vertex_names = std::move(list.vertex_names);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (cls[i] != detail::Absorption::kept) continue;
    out.toplexes.push_back(std::move(list.toplexes[i]));
    if (!list.toplex_names.empty()) out.toplex_names.push_back(std::move(list.toplex_names[i]));
  }
  return out;
}

}  // namespace dowker
