#pragma once

// Morse matchings of graphs are rooted forests: a pair (v, e) orients the
// edge e away from v, every node gets out-degree at most one, and acyclicity
// of the matching is acyclicity of the underlying edge set. Counting forests
// by size recovers the characteristic polynomial of the Laplacian.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmc/bigint.hpp"
#include "dmc/complex.hpp"
#include "dmc/error.hpp"
#include "dmc/hasse.hpp"
#include "dmc/homology.hpp"
#include "dmc/morse.hpp"

namespace dmc {

class Graph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  Graph() = default;

  Graph(std::size_t nodes, std::vector<Edge> edges) : nodes_(nodes), edges_(std::move(edges)) {
    for (auto& [u, v] : edges_) {
      if (u == v) throw InputError("loop at node " + std::to_string(u));
      if (u < 0 || v < 0 || static_cast<std::size_t>(std::max(u, v)) >= nodes_)
        throw InputError("edge endpoint out of range");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
      throw InputError("multi-edge " + std::to_string(dup->first) + "-" +
                       std::to_string(dup->second));
  }

  // The 1-skeleton view of a complex of dimension at most one.
  static Graph from_complex(const SimplicialComplex& c) {
    if (c.dimension() > 1) throw InputError("not a graph: complex has dimension > 1");
    std::vector<Edge> edges;
    for (const auto& s : c.faces())
      if (s.dim() == 1) edges.emplace_back(s[0], s[1]);
    return Graph(c.count(0), std::move(edges));
  }

  std::size_t nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  SimplicialComplex to_complex() const {
    std::vector<std::vector<Vertex>> facets;
    for (std::size_t v = 0; v < nodes_; ++v) facets.push_back({static_cast<Vertex>(v)});
    for (auto [u, v] : edges_) facets.push_back({u, v});
    return SimplicialComplex::from_facets(facets, nodes_);
  }

  bool connected() const {
    if (nodes_ == 0) return true;
    std::vector<std::size_t> parent(nodes_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t components = nodes_;
    for (auto [u, v] : edges_) {
      auto a = find(static_cast<std::size_t>(u)), b = find(static_cast<std::size_t>(v));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components == 1;
  }

 private:
  std::size_t nodes_ = 0;
  std::vector<Edge> edges_;
};

inline Graph complete(int n) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(static_cast<std::size_t>(n), e);
}

inline Graph cycle(int n) {
  if (n < 3) throw InputError("cycle graph needs at least 3 nodes");
  std::vector<Graph::Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(static_cast<std::size_t>(n), e);
}

inline Graph path(int edges) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i < edges; ++i) e.emplace_back(i, i + 1);
  return Graph(static_cast<std::size_t>(edges) + 1, e);
}

inline Graph hypercube_graph(int d) {
  std::vector<Graph::Edge> e;
  for (int v = 0; v < (1 << d); ++v)
    for (int b = 0; b < d; ++b)
      if (v & (1 << b)) e.emplace_back(v ^ (1 << b), v);
  return Graph(std::size_t{1} << d, e);
}

inline Graph petersen() {
  std::vector<Graph::Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer 5-cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph(10, e);
}

struct NamedGraph {
  std::string name;
  Graph graph;
};

// Fixed verification corpus.
inline std::vector<NamedGraph> graph_corpus() {
  std::vector<NamedGraph> out{{"K3", complete(3)}, {"K4", complete(4)}, {"K5", complete(5)}};
  for (int n = 4; n <= 8; ++n) out.push_back({"C" + std::to_string(n), cycle(n)});
  for (int e = 1; e <= 4; ++e) out.push_back({"P" + std::to_string(e), path(e)});
  out.push_back({"Q3", hypercube_graph(3)});
  out.push_back({"Petersen", petersen()});
  return out;
}

struct Arc {
  Vertex tail;
  Vertex head;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Oriented forest: out-degree at most one, arcs pointing toward the root of
// each component.
struct RootedForest {
  std::vector<Arc> arcs;  // sorted

  std::size_t size() const noexcept { return arcs.size(); }
  friend auto operator<=>(const RootedForest&, const RootedForest&) = default;
};

namespace detail {

inline void require_graph_hasse(const HasseDiagram& h) {
  if (h.complex().dimension() > 1)
    throw InputError("Hasse diagram is not that of a graph (dimension > 1)");
}

}  // namespace detail

inline RootedForest matching_to_rooted_forest(const HasseDiagram& h, const MorseMatching& m) {
  detail::require_graph_hasse(h);
  if (!is_acyclic_matching(h, m)) throw InputError("not an acyclic matching");
  RootedForest f;
  for (EdgeId e : m.edges) {
    const Vertex v = h.complex().face(h.edge(e).lower)[0];
    const Simplex& edge = h.complex().face(h.edge(e).upper);
    f.arcs.push_back({v, edge[0] == v ? edge[1] : edge[0]});
  }
  std::sort(f.arcs.begin(), f.arcs.end());
  return f;
}

// Checks the rooted-forest invariants; throws naming the first violated one.
inline void validate_rooted_forest(const HasseDiagram& h, const RootedForest& f) {
  detail::require_graph_hasse(h);
  const auto& c = h.complex();
  std::map<Vertex, int> out_degree;
  std::map<Vertex, Vertex> parent;
  auto find = [&](Vertex x) {
    parent.emplace(x, x);
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<Vertex, Vertex>> seen;
  for (const auto& a : f.arcs) {
    if (a.tail == a.head || !c.contains(Simplex{a.tail, a.head}))
      throw InputError("arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                       " is not an edge of the graph");
    std::pair<Vertex, Vertex> key{std::min(a.tail, a.head), std::max(a.tail, a.head)};
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw InputError("edge used twice in forest");
    seen.push_back(key);
    if (++out_degree[a.tail] > 1)
      throw InputError("node " + std::to_string(a.tail) + " has out-degree greater than one");
    Vertex x = find(a.tail), y = find(a.head);
    if (x == y) throw InputError("underlying edge set contains a cycle");
    parent[x] = y;
  }
  // With out-degree <= 1 and no cycle, each component has exactly one root.
  std::map<Vertex, int> roots;
  for (const auto& [v, p] : parent) {
    (void)p;
    if (out_degree[v] == 0) ++roots[find(v)];
  }
  for (const auto& [v, p] : parent) {
    (void)p;
    if (roots[find(v)] != 1) throw InputError("component without a unique root");
  }
}

inline MorseMatching rooted_forest_to_matching(const HasseDiagram& h, const RootedForest& f) {
  validate_rooted_forest(h, f);
  const auto& c = h.complex();
  std::vector<EdgeId> edges;
  for (const auto& a : f.arcs) {
    auto e = h.find_edge(Simplex{a.tail}, Simplex{a.tail, a.head});
    if (!e) throw InputError("arc has no cover edge in the Hasse diagram");
    edges.push_back(*e);
  }
  (void)c;
  return make_matching(std::move(edges));
}

namespace detail {

// Edge subsets of the graph that are forests, in include/exclude order.
template <class Visit>
void for_each_forest_edge_set(const Graph& g, Visit&& visit) {
  const auto& edges = g.edges();
  std::vector<std::size_t> parent(g.nodes());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::size_t> chosen;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == edges.size()) {
      visit(chosen);
      return;
    }
    self(self, i + 1);
    std::size_t a = find(static_cast<std::size_t>(edges[i].first));
    std::size_t b = find(static_cast<std::size_t>(edges[i].second));
    if (a == b) return;
    parent[a] = b;
    chosen.push_back(i);
    self(self, i + 1);
    chosen.pop_back();
    parent[a] = a;
  };
  rec(rec, 0);
}

}  // namespace detail

// Every rooted forest of the graph, ordered by size and then by arc list.
// Built directly from edge subsets and root choices, independent of matchings.
inline std::vector<RootedForest> enumerate_rooted_forests(const Graph& g) {
  std::vector<RootedForest> out;
  detail::for_each_forest_edge_set(g, [&](const std::vector<std::size_t>& chosen) {
    const std::size_t n = g.nodes();
    std::vector<std::vector<Vertex>> adj(n);
    for (auto i : chosen) {
      auto [u, v] = g.edges()[i];
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
    // Components touched by the forest.
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Vertex>> members;
    for (std::size_t s = 0; s < n; ++s) {
      if (comp[s] != -1 || adj[s].empty()) continue;
      members.emplace_back();
      std::vector<Vertex> stack{static_cast<Vertex>(s)};
      comp[s] = static_cast<int>(members.size()) - 1;
      while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        members.back().push_back(x);
        for (Vertex y : adj[static_cast<std::size_t>(x)])
          if (comp[static_cast<std::size_t>(y)] == -1) {
            comp[static_cast<std::size_t>(y)] = comp[s];
            stack.push_back(y);
          }
      }
    }
    std::vector<std::size_t> pick(members.size(), 0);
    for (;;) {
      RootedForest f;
      for (std::size_t k = 0; k < members.size(); ++k) {
        // Orient toward the chosen root by breadth-first search from it.
        Vertex root = members[k][pick[k]];
        std::vector<Vertex> queue{root};
        std::map<Vertex, bool> seen{{root, true}};
        for (std::size_t q = 0; q < queue.size(); ++q)
          for (Vertex y : adj[static_cast<std::size_t>(queue[q])])
            if (!seen[y]) {
              seen[y] = true;
              f.arcs.push_back({y, queue[q]});
              queue.push_back(y);
            }
      }
      std::sort(f.arcs.begin(), f.arcs.end());
      out.push_back(std::move(f));
      std::size_t k = 0;
      while (k < members.size() && ++pick[k] == members[k].size()) pick[k++] = 0;
      if (k == members.size()) break;
    }
  });
  std::sort(out.begin(), out.end(), [](const RootedForest& a, const RootedForest& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.arcs < b.arcs;
  });
  return out;
}

inline std::vector<std::uint64_t> count_rooted_forests_by_size(const Graph& g) {
  std::vector<std::uint64_t> counts;
  for (const auto& f : enumerate_rooted_forests(g)) {
    if (counts.size() <= f.size()) counts.resize(f.size() + 1, 0);
    ++counts[f.size()];
  }
  return counts;
}

// f-vector of the Morse complex of K_n: f_{i-1} = C(n,i) (n-i) n^{i-1}.
inline FVector kn_fvector(int n) {
  if (n < 1) throw InputError("complete graph needs at least one node");
  FVector f;
  for (int i = 1; i < n; ++i)
    f.counts.push_back(binomial(n, i) * (n - i) * ipow(BigInt(n), static_cast<std::uint64_t>(i - 1)));
  return f;
}

inline IntegerMatrix laplacian(const Graph& g) {
  const std::size_t n = g.nodes();
  std::vector<std::vector<BigInt>> q(n, std::vector<BigInt>(n, 0));
  for (auto [u, v] : g.edges()) {
    auto a = static_cast<std::size_t>(u), b = static_cast<std::size_t>(v);
    q[a][a] += 1;
    q[b][b] += 1;
    q[a][b] -= 1;
    q[b][a] -= 1;
  }
  return IntegerMatrix::from_dense(q);
}

// Coefficients by ascending degree.
struct IntegerPolynomial {
  std::vector<BigInt> coeffs;

  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  BigInt coefficient(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(k)]
                                                         : BigInt(0);
  }

  BigInt operator()(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::string to_string(const std::string& var = "μ") const {
    if (coeffs.empty()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      const BigInt& c = coeffs[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      if (mag != 1 || k == 0) s += mag.str();
      if (k >= 1) s += var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;
};

// det(xI - A) by the division-free Samuelson-Berkowitz recursion on leading
// principal submatrices: with M' = [[M, c], [r, a]],
//   p'(x) = (x - a) p(x) - sum_j x^{k-1-j} sum_{i<=j} p_i (r M^{j-i} c),
// where p(x) = sum_i p_i x^{k-i}.
inline IntegerPolynomial char_poly(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("characteristic polynomial of a non-square matrix");
  const auto m = a.to_dense();
  const std::size_t n = m.size();
  std::vector<BigInt> p{1};  // descending coefficients of det(xI - M_k)
  for (std::size_t k = 0; k < n; ++k) {
    // q[j] = r M_k^j c for the leading k x k block M_k.
    std::vector<BigInt> q(k);
    std::vector<BigInt> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = m[i][k];
    for (std::size_t j = 0; j < k; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < k; ++i) s += m[k][i] * v[i];
      q[j] = s;
      std::vector<BigInt> w(k, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) w[i] += m[i][l] * v[l];
      v = std::move(w);
    }
    std::vector<BigInt> next(k + 2, 0);
    for (std::size_t i = 0; i <= k; ++i) {
      next[i] += p[i];
      next[i + 1] -= m[k][k] * p[i];
    }
    for (std::size_t j = 0; j < k; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i <= j; ++i) s += p[i] * q[j - i];
      next[j + 2] -= s;  // coefficient of x^{k-1-j} sits at index (k+1)-(k-1-j)
    }
    p = std::move(next);
  }
  std::reverse(p.begin(), p.end());
  return IntegerPolynomial(std::move(p));
}

// Fraction-free (Bareiss) determinant.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// det(xI - A) by exact evaluation at x = 0..n and Newton interpolation.
inline IntegerPolynomial char_poly_interpolated(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("characteristic polynomial of a non-square matrix");
  const auto m = a.to_dense();
  const std::size_t n = m.size();
  std::vector<BigRational> dd(n + 1);
  for (std::size_t x = 0; x <= n; ++x) {
    auto shifted = m;
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : shifted[i]) v = -v;
      shifted[i][i] += static_cast<long>(x);
    }
    dd[x] = BigRational(bareiss_determinant(std::move(shifted)));
  }
  // Divided differences on nodes 0..n.
  for (std::size_t level = 1; level <= n; ++level)
    for (std::size_t i = n; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / BigRational(static_cast<long>(level));
  // Newton form to monomials: P = dd0 + (x-0)(dd1 + (x-1)(dd2 + ...)).
  std::vector<BigRational> poly{dd[n]};
  for (std::size_t i = n; i-- > 0;) {
    std::vector<BigRational> next(poly.size() + 1, BigRational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * BigRational(static_cast<long>(i));
    }
    next[0] += dd[i];
    poly = std::move(next);
  }
  std::vector<BigInt> coeffs;
  for (const auto& c : poly) {
    if (boost::multiprecision::denominator(c) != 1)
      throw Error("internal: non-integral characteristic polynomial coefficient");
    coeffs.push_back(boost::multiprecision::numerator(c));
  }
  return IntegerPolynomial(std::move(coeffs));
}

// Number of spanning trees: any cofactor of the Laplacian.
inline BigInt spanning_tree_count(const Graph& g) {
  if (g.nodes() <= 1) return 1;
  auto q = laplacian(g).to_dense();
  q.pop_back();
  for (auto& row : q) row.pop_back();
  return bareiss_determinant(std::move(q));
}

struct LaplacianIdentity {
  bool holds = false;
  IntegerPolynomial char_poly;     // det(μI - Q)
  IntegerPolynomial from_fvector;  // sum_i f_{i-1} (-1)^i μ^{n-i}, with f_{-1} = 1
  FVector f;                       // f-vector of the Morse complex of the graph
};

inline LaplacianIdentity verify_laplacian_identity(const Graph& g, unsigned threads = 1) {
  if (!g.connected()) throw InputError("Laplacian identity requires a connected graph");
  LaplacianIdentity out;
  EnumerationOptions opt;
  opt.threads = threads;
  // Matchings of size i are the (i-1)-faces; size 0 is the empty face.
  auto by_size = count_matchings_by_size(hasse_diagram(g.to_complex()), MatchingMode::all, opt);
  for (std::size_t i = 1; i < by_size.size(); ++i) out.f.counts.emplace_back(by_size[i]);
  const std::size_t n = g.nodes();
  std::vector<BigInt> coeffs(n + 1, 0);
  for (std::size_t i = 0; i < by_size.size() && i <= n; ++i)
    coeffs[n - i] = (i % 2 == 0 ? BigInt(by_size[i]) : BigInt(-BigInt(by_size[i])));
  out.from_fvector = IntegerPolynomial(std::move(coeffs));
  out.char_poly = char_poly(laplacian(g));
  out.holds = out.char_poly == out.from_fvector;
  return out;
}

}  // namespace dmc
