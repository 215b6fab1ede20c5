#pragma once

// Finite abstract simplicial complexes with a canonical face indexing.
//
// Faces are ordered by (dimension, lexicographic vertex order) and numbered
// densely in that order. Every algorithm in the library relies on this order
// for reproducible output.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dmc/bigint.hpp"
#include "dmc/error.hpp"

namespace dmc {

using Vertex = std::int32_t;
using FaceId = std::uint32_t;

// A nonempty, strictly increasing set of vertex ids.
class Simplex {
 public:
  Simplex() = default;

  // Sorts the input; rejects empty sets, negative ids and repeated vertices.
  explicit Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw InputError("simplex must be nonempty");
    std::sort(vertices_.begin(), vertices_.end());
    if (vertices_.front() < 0) throw InputError("negative vertex id");
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw InputError("duplicate vertex " +
                       std::to_string(*std::adjacent_find(vertices_.begin(), vertices_.end())) +
                       " in simplex");
  }

  Simplex(std::initializer_list<Vertex> vertices)
      : Simplex(std::vector<Vertex>(vertices)) {}

  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  bool contains(Vertex v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  bool contains(const Simplex& other) const {
    return std::includes(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                         other.vertices_.end());
  }

  // The codimension-one face obtained by dropping the i-th vertex.
  // Requires dim() >= 1.
  Simplex facet_without(std::size_t i) const {
    Simplex out;
    out.vertices_.reserve(vertices_.size() - 1);
    for (std::size_t j = 0; j < vertices_.size(); ++j)
      if (j != i) out.vertices_.push_back(vertices_[j]);
    return out;
  }

  // Canonical order: by dimension first, then lexicographically.
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    if (a.vertices_.size() != b.vertices_.size())
      return a.vertices_.size() <=> b.vertices_.size();
    return std::lexicographical_compare_three_way(a.vertices_.begin(), a.vertices_.end(),
                                                  b.vertices_.begin(), b.vertices_.end());
  }
  friend bool operator==(const Simplex& a, const Simplex& b) = default;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i != 0) s += ',';
      s += std::to_string(vertices_[i]);
    }
    return s + "}";
  }

 private:
  std::vector<Vertex> vertices_;
};

// Face counts per dimension, empty face excluded.
struct FVector {
  std::vector<BigInt> counts;

  FVector() = default;
  explicit FVector(std::vector<BigInt> c) : counts(std::move(c)) {}
  FVector(std::initializer_list<std::int64_t> c) {
    for (auto x : c) counts.emplace_back(x);
  }

  int dim() const noexcept { return static_cast<int>(counts.size()) - 1; }

  BigInt at(int d) const {
    return d >= 0 && d < static_cast<int>(counts.size()) ? counts[static_cast<std::size_t>(d)]
                                                          : BigInt(0);
  }

  BigInt total() const {
    BigInt s = 0;
    for (const auto& c : counts) s += c;
    return s;
  }

  // Counts prefixed with f_{-1} = 1, for identities that need the empty face.
  std::vector<BigInt> with_empty_face() const {
    std::vector<BigInt> out{1};
    out.insert(out.end(), counts.begin(), counts.end());
    return out;
  }

  // Unreduced Euler characteristic, sum of (-1)^i f_i.
  BigInt euler_characteristic() const {
    BigInt chi = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) chi += (i % 2 == 0) ? counts[i] : -counts[i];
    return chi;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i != 0) s += ',';
      s += counts[i].str();
    }
    return s + ")";
  }

  friend bool operator==(const FVector&, const FVector&) = default;
};

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Downward closure of a facet list. Non-maximal input facets are absorbed.
  // The vertex universe is max id + 1 unless a larger one is given.
  static SimplicialComplex from_facets(const std::vector<std::vector<Vertex>>& facets,
                                       std::size_t vertex_universe = 0) {
    if (facets.empty()) throw InputError("empty complex");
    std::vector<Simplex> tops;
    tops.reserve(facets.size());
    for (const auto& f : facets) tops.emplace_back(f);
    return from_simplices(std::move(tops), vertex_universe);
  }

  static SimplicialComplex from_simplices(std::vector<Simplex> generators,
                                          std::size_t vertex_universe = 0) {
    if (generators.empty()) throw InputError("empty complex");
    int top = 0;
    for (const auto& s : generators) top = std::max(top, s.dim());
    std::vector<std::set<Simplex>> levels(static_cast<std::size_t>(top) + 1);
    for (auto& s : generators) levels[static_cast<std::size_t>(s.dim())].insert(std::move(s));
    for (int d = top; d >= 1; --d) {
      for (const auto& s : levels[static_cast<std::size_t>(d)])
        for (std::size_t i = 0; i < s.size(); ++i)
          levels[static_cast<std::size_t>(d - 1)].insert(s.facet_without(i));
    }
    std::vector<Simplex> faces;
    for (auto& level : levels) faces.insert(faces.end(), level.begin(), level.end());
    return SimplicialComplex(std::move(faces), vertex_universe);
  }

  // Takes a face family that is already downward closed. Order is irrelevant.
  static SimplicialComplex from_closed_faces(std::vector<Simplex> faces,
                                             std::size_t vertex_universe = 0) {
    if (faces.empty()) throw InputError("empty complex");
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    SimplicialComplex c(std::move(faces), vertex_universe);
    for (const auto& s : c.faces_)
      if (s.dim() >= 1)
        for (std::size_t i = 0; i < s.size(); ++i)
          if (!c.find(s.facet_without(i))) throw InputError("face family is not closed");
    return c;
  }

  std::size_t vertex_universe() const noexcept { return vertex_universe_; }
  std::size_t num_faces() const noexcept { return faces_.size(); }
  int dimension() const noexcept { return static_cast<int>(dim_offsets_.size()) - 2; }
  bool empty() const noexcept { return faces_.empty(); }

  const std::vector<Simplex>& faces() const noexcept { return faces_; }
  const Simplex& face(FaceId id) const { return faces_.at(id); }
  const std::vector<FaceId>& facets() const noexcept { return facets_; }

  // Ids of the faces of dimension d form the contiguous range [first, last).
  std::pair<FaceId, FaceId> face_range(int d) const {
    if (d < 0 || d > dimension()) return {0, 0};
    return {static_cast<FaceId>(dim_offsets_[static_cast<std::size_t>(d)]),
            static_cast<FaceId>(dim_offsets_[static_cast<std::size_t>(d) + 1])};
  }

  std::size_t count(int d) const {
    auto [a, b] = face_range(d);
    return b - a;
  }

  std::optional<FaceId> find(const Simplex& s) const {
    auto it = std::lower_bound(faces_.begin(), faces_.end(), s);
    if (it == faces_.end() || *it != s) return std::nullopt;
    return static_cast<FaceId>(it - faces_.begin());
  }

  bool contains(const Simplex& s) const { return find(s).has_value(); }

  bool is_pure() const {
    for (FaceId f : facets_)
      if (faces_[f].dim() != dimension()) return false;
    return true;
  }

  // Subcomplex of faces of dimension <= d.
  SimplicialComplex skeleton(int d) const {
    std::vector<Simplex> kept;
    for (const auto& s : faces_)
      if (s.dim() <= d) kept.push_back(s);
    return SimplicialComplex(std::move(kept), vertex_universe_);
  }

  std::vector<std::vector<Vertex>> facet_lists() const {
    std::vector<std::vector<Vertex>> out;
    for (FaceId f : facets_) {
      auto v = faces_[f].vertices();
      out.emplace_back(v.begin(), v.end());
    }
    return out;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.faces_ == b.faces_;
  }

 private:
  // `faces` must be sorted, unique and downward closed.
  SimplicialComplex(std::vector<Simplex> faces, std::size_t vertex_universe)
      : faces_(std::move(faces)) {
    Vertex max_vertex = -1;
    int top = -1;
    for (const auto& s : faces_) {
      max_vertex = std::max(max_vertex, s.vertices().back());
      top = std::max(top, s.dim());
    }
    vertex_universe_ = std::max<std::size_t>(vertex_universe, static_cast<std::size_t>(max_vertex + 1));
    dim_offsets_.assign(static_cast<std::size_t>(top) + 2, 0);
    for (const auto& s : faces_) ++dim_offsets_[static_cast<std::size_t>(s.dim()) + 1];
    for (std::size_t i = 1; i < dim_offsets_.size(); ++i) dim_offsets_[i] += dim_offsets_[i - 1];

    std::vector<bool> covered(faces_.size(), false);
    for (const auto& s : faces_)
      if (s.dim() >= 1)
        for (std::size_t i = 0; i < s.size(); ++i) covered[*find(s.facet_without(i))] = true;
    for (FaceId f = 0; f < faces_.size(); ++f)
      if (!covered[f]) facets_.push_back(f);
  }

  std::size_t vertex_universe_ = 0;
  std::vector<Simplex> faces_;
  std::vector<std::size_t> dim_offsets_;
  std::vector<FaceId> facets_;
};

inline FVector f_vector(const SimplicialComplex& c) {
  FVector f;
  for (int d = 0; d <= c.dimension(); ++d) f.counts.emplace_back(c.count(d));
  return f;
}

// The full simplex on d+1 vertices.
inline SimplicialComplex simplex(int d) {
  if (d < 0) throw InputError("simplex dimension must be nonnegative");
  std::vector<Vertex> all(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) all[static_cast<std::size_t>(i)] = i;
  return SimplicialComplex::from_facets({all});
}

// Boundary of the d-simplex, a triangulated (d-1)-sphere. Requires d >= 1.
inline SimplicialComplex simplex_boundary(int d) {
  if (d < 1) throw InputError("boundary needs dimension >= 1");
  std::vector<std::vector<Vertex>> facets;
  for (int skip = 0; skip <= d; ++skip) {
    std::vector<Vertex> f;
    for (int i = 0; i <= d; ++i)
      if (i != skip) f.push_back(i);
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_facets(facets);
}

inline SimplicialComplex cycle_graph(int n) {
  if (n < 3) throw InputError("cycle graph needs at least 3 nodes");
  std::vector<std::vector<Vertex>> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return SimplicialComplex::from_facets(edges);
}

// Path with the given number of edges (edges + 1 nodes).
inline SimplicialComplex path_graph(int edges) {
  if (edges < 1) throw InputError("path graph needs at least one edge");
  std::vector<std::vector<Vertex>> facets;
  for (int i = 0; i < edges; ++i) facets.push_back({i, i + 1});
  return SimplicialComplex::from_facets(facets);
}

inline SimplicialComplex complete_graph(int n) {
  if (n < 1) throw InputError("complete graph needs at least one node");
  if (n == 1) return SimplicialComplex::from_facets({{0}});
  std::vector<std::vector<Vertex>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return SimplicialComplex::from_facets(edges);
}

}  // namespace dmc
