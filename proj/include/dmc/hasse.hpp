#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmc/complex.hpp"

namespace dmc {

using EdgeId = std::uint32_t;

// A covering pair lower ⊂ upper with dim(upper) = dim(lower) + 1.
struct CoverEdge {
  FaceId lower;
  FaceId upper;
  friend auto operator<=>(const CoverEdge&, const CoverEdge&) = default;
};

// Face poset of a complex (empty face excluded) with its covering relation.
// Cover edges are numbered in (lower id, upper id) order.
class HasseDiagram {
 public:
  HasseDiagram() = default;

  explicit HasseDiagram(SimplicialComplex complex) : complex_(std::move(complex)) {
    const auto& faces = complex_.faces();
    for (FaceId u = 0; u < faces.size(); ++u) {
      const Simplex& s = faces[u];
      if (s.dim() < 1) continue;
      for (std::size_t i = 0; i < s.size(); ++i)
        edges_.push_back({*complex_.find(s.facet_without(i)), u});
    }
    std::sort(edges_.begin(), edges_.end());
    up_.assign(faces.size(), {});
    down_.assign(faces.size(), {});
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      up_[edges_[e].lower].push_back(e);
      down_[edges_[e].upper].push_back(e);
    }
  }

  const SimplicialComplex& complex() const noexcept { return complex_; }
  std::size_t num_faces() const noexcept { return complex_.num_faces(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<CoverEdge>& edges() const noexcept { return edges_; }
  const CoverEdge& edge(EdgeId e) const { return edges_.at(e); }

  // Cover edges whose lower (resp. upper) end is the given face.
  std::span<const EdgeId> up_edges(FaceId f) const { return up_[f]; }
  std::span<const EdgeId> down_edges(FaceId f) const { return down_[f]; }

  std::optional<EdgeId> find_edge(FaceId lower, FaceId upper) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), CoverEdge{lower, upper});
    if (it == edges_.end() || it->lower != lower || it->upper != upper) return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
  }

  std::optional<EdgeId> find_edge(const Simplex& lower, const Simplex& upper) const {
    auto l = complex_.find(lower);
    auto u = complex_.find(upper);
    if (!l || !u) return std::nullopt;
    return find_edge(*l, *u);
  }

  // "(lower ⊂ upper)" rendering of a cover edge.
  std::string describe(EdgeId e) const {
    const auto& c = edges_.at(e);
    return "(" + complex_.face(c.lower).to_string() + " ⊂ " +
           complex_.face(c.upper).to_string() + ")";
  }

 private:
  SimplicialComplex complex_;
  std::vector<CoverEdge> edges_;
  std::vector<std::vector<EdgeId>> up_;
  std::vector<std::vector<EdgeId>> down_;
};

inline HasseDiagram hasse_diagram(const SimplicialComplex& c) {
  if (c.empty()) throw InputError("Hasse diagram of an empty complex");
  return HasseDiagram(c);
}

}  // namespace dmc
