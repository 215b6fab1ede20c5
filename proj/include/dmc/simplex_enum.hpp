#pragma once

// Perfect Morse matchings of the simplex through the cube digraph, Kalai
// (k,n)-trees, and the counting bounds on f(n).
//
// The Hasse diagram of the (d-1)-simplex together with its empty face is the
// d-cube: a face is its characteristic vector, and covers are cube edges
// directed toward smaller coordinate sum.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dmc/bigint.hpp"
#include "dmc/complex.hpp"
#include "dmc/error.hpp"
#include "dmc/hasse.hpp"
#include "dmc/homology.hpp"
#include "dmc/morse.hpp"
#include "dmc/parallel.hpp"

namespace dmc {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

struct CubeArc {
  std::uint32_t from;  // the endpoint with the direction bit set
  std::uint32_t to;
  int direction;
  friend auto operator<=>(const CubeArc&, const CubeArc&) = default;
};

class CubeDigraph {
 public:
  explicit CubeDigraph(int d) : dim_(d) {
    if (d < 1 || d > 30) throw InputError("cube dimension must be in [1, 30]");
    for (std::uint32_t v = 0; v < num_vertices(); ++v)
      for (int b = 0; b < d; ++b)
        if (v & (1u << b)) arcs_.push_back({v, v ^ (1u << b), b});
  }

  int dimension() const noexcept { return dim_; }
  std::uint32_t num_vertices() const noexcept { return 1u << dim_; }
  const std::vector<CubeArc>& arcs() const noexcept { return arcs_; }

  static int weight(std::uint32_t v) { return std::popcount(v); }

  // The face of the simplex with characteristic vector v; none for v = 0.
  static std::optional<Simplex> subset(std::uint32_t v) {
    if (v == 0) return std::nullopt;
    std::vector<Vertex> s;
    for (int b = 0; v >> b; ++b)
      if (v & (1u << b)) s.push_back(b);
    return Simplex(std::move(s));
  }

 private:
  int dim_;
  std::vector<CubeArc> arcs_;  // ordered by (from, direction)
};

inline CubeDigraph cube_digraph(int d) { return CubeDigraph(d); }

// The characteristic-vector isomorphism between the d-cube digraph and the
// Hasse diagram of the (d-1)-simplex. The empty set and the d arcs into it
// have no counterpart.
struct CubeIsomorphism {
  std::vector<std::optional<FaceId>> vertex_to_face;
  std::vector<std::optional<EdgeId>> arc_to_edge;
  std::vector<std::uint32_t> face_to_vertex;
  std::vector<std::size_t> edge_to_arc;
};

inline CubeIsomorphism cube_isomorphism(const CubeDigraph& cube, const HasseDiagram& h) {
  const auto& c = h.complex();
  if (c.count(0) != static_cast<std::size_t>(cube.dimension()) ||
      c.num_faces() + 1 != cube.num_vertices())
    throw InputError("Hasse diagram is not that of the " + std::to_string(cube.dimension() - 1) +
                     "-simplex");
  CubeIsomorphism iso;
  iso.vertex_to_face.resize(cube.num_vertices());
  iso.face_to_vertex.assign(c.num_faces(), 0);
  for (std::uint32_t v = 1; v < cube.num_vertices(); ++v) {
    auto f = c.find(*CubeDigraph::subset(v));
    if (!f) throw InputError("missing face for cube vertex " + std::to_string(v));
    iso.vertex_to_face[v] = *f;
    iso.face_to_vertex[*f] = v;
  }
  iso.arc_to_edge.resize(cube.arcs().size());
  iso.edge_to_arc.assign(h.num_edges(), cube.arcs().size());
  for (std::size_t a = 0; a < cube.arcs().size(); ++a) {
    const auto& arc = cube.arcs()[a];
    if (arc.to == 0) continue;
    auto e = h.find_edge(*iso.vertex_to_face[arc.to], *iso.vertex_to_face[arc.from]);
    if (!e) throw InputError("cube arc without a cover edge");
    iso.arc_to_edge[a] = *e;
    iso.edge_to_arc[*e] = a;
  }
  for (auto a : iso.edge_to_arc)
    if (a == cube.arcs().size()) throw InputError("cover edge without a cube arc");
  return iso;
}

namespace detail {

inline constexpr std::uint32_t kUnmatched = 0xffffffffu;

// Perfect matchings of the undirected d-cube; mate[v] is v's partner.
// Backtracks on the lowest unmatched vertex. `first` restricts vertex 0's
// partner to the given direction when set.
template <class Visit>
void cube_perfect_matchings(int d, std::optional<int> first, Visit&& visit) {
  const std::uint32_t n = 1u << d;
  std::vector<std::uint32_t> mate(n, kUnmatched);
  auto rec = [&](auto&& self, std::uint32_t v) -> void {
    while (v < n && mate[v] != kUnmatched) ++v;
    if (v == n) {
      visit(mate);
      return;
    }
    for (int b = 0; b < d; ++b) {
      if (v == 0 && first && *first != b) continue;
      std::uint32_t w = v ^ (1u << b);
      if (mate[w] != kUnmatched) continue;
      mate[v] = w;
      mate[w] = v;
      self(self, v + 1);
      mate[v] = mate[w] = kUnmatched;
    }
  };
  rec(rec, 0);
}

// Kahn's algorithm on the cube digraph with matched arcs reversed.
inline bool cube_matching_acyclic(int d, const std::vector<std::uint32_t>& mate) {
  const std::uint32_t n = 1u << d;
  std::vector<int> indeg(n, 0);
  auto for_succ = [&](std::uint32_t v, auto&& emit) {
    for (int b = 0; b < d; ++b) {
      std::uint32_t w = v ^ (1u << b);
      bool down = (v >> b) & 1u;
      bool matched = mate[v] == w;
      if (down != matched) emit(w);  // downward unless matched, then upward
    }
  };
  for (std::uint32_t v = 0; v < n; ++v) for_succ(v, [&](std::uint32_t w) { ++indeg[w]; });
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::uint32_t seen = 0;
  while (!ready.empty()) {
    std::uint32_t v = ready.back();
    ready.pop_back();
    ++seen;
    for_succ(v, [&](std::uint32_t w) {
      if (--indeg[w] == 0) ready.push_back(w);
    });
  }
  return seen == n;
}

inline int directions_used(int d, const std::vector<std::uint32_t>& mate) {
  std::uint32_t used = 0;
  for (std::uint32_t v = 0; v < (1u << d); ++v) used |= v ^ mate[v];
  (void)d;
  return std::popcount(used);
}

inline void check_cube_budget(int d, int max_dim) {
  if (d < 1) throw InputError("cube dimension must be at least 1");
  if (d > max_dim)
    throw BudgetExceeded("perfect matchings of the " + std::to_string(d) +
                             "-cube exceed the dimension budget of " + std::to_string(max_dim) +
                             "; p(6) = 16,332,454,526,976 is a literature value and out of scope",
                         0);
}

}  // namespace detail

struct CubeOptions {
  int max_dim = 5;
  unsigned threads = 1;
};

inline BigInt count_perfect_matchings_cube(int d, const CubeOptions& opt = {}) {
  detail::check_cube_budget(d, opt.max_dim);
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(d), 0);
  detail::run_partitioned(static_cast<std::size_t>(d), opt.threads, [&](std::size_t b) {
    detail::cube_perfect_matchings(d, static_cast<int>(b),
                                   [&](const std::vector<std::uint32_t>&) { ++partial[b]; });
  });
  BigInt total = 0;
  for (auto p : partial) total += p;
  return total;
}

struct CubeMatchingCounts {
  BigInt perfect;
  BigInt acyclic;
  BigInt rejected;  // perfect but cyclic
  // acyclic_by_directions[j]: acyclic perfect matchings using exactly j directions
  std::vector<BigInt> acyclic_by_directions;
};

inline CubeMatchingCounts count_perfect_acyclic_matchings_cube(int d, const CubeOptions& opt = {}) {
  detail::check_cube_budget(d, opt.max_dim);
  struct Partial {
    std::uint64_t perfect = 0, acyclic = 0;
    std::vector<std::uint64_t> by_dir;
  };
  std::vector<Partial> parts(static_cast<std::size_t>(d));
  detail::run_partitioned(parts.size(), opt.threads, [&](std::size_t b) {
    auto& p = parts[b];
    p.by_dir.assign(static_cast<std::size_t>(d) + 1, 0);
    detail::cube_perfect_matchings(d, static_cast<int>(b), [&](const std::vector<std::uint32_t>& m) {
      ++p.perfect;
      if (detail::cube_matching_acyclic(d, m)) {
        ++p.acyclic;
        ++p.by_dir[static_cast<std::size_t>(detail::directions_used(d, m))];
      }
    });
  });
  CubeMatchingCounts out;
  out.perfect = out.acyclic = 0;
  out.acyclic_by_directions.assign(static_cast<std::size_t>(d) + 1, 0);
  for (const auto& p : parts) {
    out.perfect += p.perfect;
    out.acyclic += p.acyclic;
    for (std::size_t j = 0; j < p.by_dir.size(); ++j) out.acyclic_by_directions[j] += p.by_dir[j];
  }
  out.rejected = out.perfect - out.acyclic;
  return out;
}

// Perfect acyclic matchings of the d-cube as mate arrays, in enumeration order.
inline std::vector<std::vector<std::uint32_t>> perfect_acyclic_cube_matchings(int d,
                                                                            const CubeOptions& opt = {}) {
  detail::check_cube_budget(d, opt.max_dim);
  std::vector<std::vector<std::uint32_t>> out;
  detail::cube_perfect_matchings(d, std::nullopt, [&](const std::vector<std::uint32_t>& m) {
    if (detail::cube_matching_acyclic(d, m)) out.push_back(m);
  });
  return out;
}

struct CompositionCheck {
  std::size_t pairs_checked = 0;
  std::size_t failures = 0;
};

// Splitting the d-cube along each direction into a bottom and a top half,
// every union of perfect acyclic matchings of the halves is a perfect acyclic
// matching of the whole cube, since all arcs between the halves point from
// top to bottom and none are matched.
inline CompositionCheck verify_half_composition(int d) {
  if (d < 2) throw InputError("half composition needs d >= 2");
  auto halves = perfect_acyclic_cube_matchings(d - 1);
  CompositionCheck out;
  const std::uint32_t n = 1u << d;
  for (int i = 0; i < d; ++i) {
    auto lift = [&](std::uint32_t x, std::uint32_t bit) {
      std::uint32_t low = x & ((1u << i) - 1), high = x >> i;
      return low | (bit << i) | (high << (i + 1));
    };
    for (const auto& bottom : halves)
      for (const auto& top : halves) {
        std::vector<std::uint32_t> mate(n, detail::kUnmatched);
        for (std::uint32_t x = 0; x < (n >> 1); ++x) {
          mate[lift(x, 0)] = lift(bottom[x], 0);
          mate[lift(x, 1)] = lift(top[x], 1);
        }
        ++out.pairs_checked;
        if (!detail::cube_matching_acyclic(d, mate)) ++out.failures;
      }
  }
  return out;
}

// A set of k-faces of the (n-1)-simplex.
struct KTree {
  int k = 0;
  int n = 0;
  std::vector<Simplex> faces;  // sorted
  friend bool operator==(const KTree&, const KTree&) = default;
};

namespace detail {

// The critical face of a perfect matching of a simplex Hasse diagram, after
// checking that the matching is acyclic and leaves exactly one vertex.
inline FaceId require_perfect(const HasseDiagram& h, const MorseMatching& mu) {
  if (!is_acyclic_matching(h, mu)) throw InputError("not an acyclic matching");
  auto crit = critical_faces(h, mu);
  if (crit.size() != 1 || h.complex().face(crit.faces[0]).dim() != 0)
    throw InputError("matching is not perfect: " + std::to_string(crit.size()) +
                     " critical faces");
  return crit.faces[0];
}

}  // namespace detail

// T_k(mu): the k-faces matched with a (k-1)-face. For k = 0 the critical
// vertex, which pairs with the empty face.
inline KTree extract_tk(const HasseDiagram& h, const MorseMatching& mu, int k) {
  FaceId critical = detail::require_perfect(h, mu);
  const auto& c = h.complex();
  const int n = static_cast<int>(c.count(0));
  if (k < 0 || k >= n) throw InputError("k out of range for extract_tk");
  KTree t{k, n, {}};
  if (k == 0) {
    t.faces.push_back(c.face(critical));
    return t;
  }
  for (EdgeId e : mu.edges) {
    const Simplex& upper = c.face(h.edge(e).upper);
    if (upper.dim() == k) t.faces.push_back(upper);
  }
  std::sort(t.faces.begin(), t.faces.end());
  return t;
}

struct KTreeCheck {
  bool is_tree = false;
  BigInt torsion_order = 0;  // |H_{k-1}(Δ(T))| when is_tree
};

inline void validate_kn_faces(const std::vector<Simplex>& faces, int k, int n) {
  if (k < 0 || n < 1 || k >= n) throw InputError("need 0 <= k < n");
  for (const auto& s : faces) {
    if (s.dim() != k)
      throw InputError("wrong face dimension: " + s.to_string() + " is not a " +
                       std::to_string(k) + "-face");
    if (s.vertices().back() >= n)
      throw InputError("face " + s.to_string() + " is not in the simplex on " +
                       std::to_string(n) + " vertices");
  }
  auto sorted = faces;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("repeated face in (k,n)-tree candidate");
}

// Builds Δ(T) = (k-1)-skeleton of the simplex plus T and computes homology.
inline KTreeCheck is_kn_tree(const std::vector<Simplex>& faces, int k, int n) {
  validate_kn_faces(faces, k, n);
  KTreeCheck out;
  if (BigInt(faces.size()) != binomial(n - 1, k)) return out;
  std::vector<Simplex> gens = faces;
  if (k >= 1) {
    auto skel = simplex(n - 1).skeleton(k - 1);
    for (FaceId f : skel.facets()) gens.push_back(skel.face(f));
  }
  auto delta = SimplicialComplex::from_simplices(gens, static_cast<std::size_t>(n));
  auto h = reduced_homology(delta);
  if (!h.at(k).trivial()) return out;
  out.is_tree = true;
  out.torsion_order = torsion_order(h, k - 1);
  return out;
}

inline KTreeCheck is_kn_tree(const KTree& t) { return is_kn_tree(t.faces, t.k, t.n); }

struct KalaiOptions {
  std::uint64_t max_subsets = 10'000'000;
  unsigned threads = 1;
};

struct KalaiResult {
  BigInt sum;          // sum over trees of |H_{k-1}|^2
  BigInt expected;     // n^{C(n-2,k)}
  std::uint64_t subsets = 0;
  std::uint64_t trees = 0;
  std::map<BigInt, std::uint64_t> torsion_distribution;  // |H_{k-1}| -> tree count
};

// Kalai's weighted tree count by enumerating all C(n-1,k)-subsets of k-faces.
// Each subset is tested on the restricted boundary matrix: T is a tree iff
// its k-faces have independent boundaries, and then H_{k-1}(Δ(T)) is the
// torsion of the cokernel, the product of the invariant factors.
inline KalaiResult kalai_sum(int n, int k, const KalaiOptions& opt = {}) {
  if (k < 0 || n < 1 || k >= n) throw InputError("kalai_sum needs 0 <= k < n");
  auto full = simplex(n - 1);
  auto cc = chain_complex(full);
  const IntegerMatrix& d = cc.boundary[static_cast<std::size_t>(k)];
  const std::size_t m = d.cols();
  const BigInt size_big = binomial(n - 1, k);
  const auto size = static_cast<std::size_t>(size_big);
  const BigInt total = binomial(static_cast<std::int64_t>(m), static_cast<std::int64_t>(size));
  if (total > opt.max_subsets)
    throw BudgetExceeded("Kalai sum for (n,k) = (" + std::to_string(n) + "," + std::to_string(k) +
                             ") needs " + total.str() + " subsets, over the budget of " +
                             std::to_string(opt.max_subsets),
                         0);
  KalaiResult out;
  out.sum = 0;
  out.expected = ipow(BigInt(n), static_cast<std::uint64_t>(binomial(n - 2 < 0 ? 0 : n - 2, k)));
  if (n == 1) out.expected = 1;
  // Partition on the smallest chosen face index.
  struct Partial {
    std::uint64_t subsets = 0, trees = 0;
    BigInt sum = 0;
    std::map<BigInt, std::uint64_t> dist;
  };
  const std::size_t blocks = m - size + 1;
  std::vector<Partial> parts(blocks);
  detail::run_partitioned(blocks, opt.threads, [&](std::size_t first) {
    auto& p = parts[first];
    std::vector<std::size_t> pick(size);
    auto test = [&] {
      ++p.subsets;
      IntegerMatrix sub(d.rows(), size);
      for (std::size_t j = 0; j < size; ++j)
        for (const auto& [r, v] : d.column(pick[j])) sub.push_back(j, r, v);
      auto factors = smith_invariant_factors(sub);
      if (factors.size() != size) return;
      BigInt order = 1;
      for (const auto& f : factors) order *= f;
      ++p.trees;
      p.sum += order * order;
      ++p.dist[order];
    };
    auto rec = [&](auto&& self, std::size_t j, std::size_t next) -> void {
      if (j == size) {
        test();
        return;
      }
      for (std::size_t x = next; x + (size - j) <= m; ++x) {
        pick[j] = x;
        self(self, j + 1, x + 1);
      }
    };
    pick[0] = first;
    rec(rec, 1, first + 1);
  });
  for (const auto& p : parts) {
    out.subsets += p.subsets;
    out.trees += p.trees;
    out.sum += p.sum;
    for (const auto& [o, c] : p.dist) out.torsion_distribution[o] += c;
  }
  return out;
}

// r(1) = 1, r(2) = 2, r(3) = 9, r(m+1) = (m+1)(m-1)/m * r(m)^2.
inline BigRational r_recursion(int n) {
  if (n < 1) throw InputError("r(n) needs n >= 1");
  static const BigInt base[] = {1, 2, 9};
  if (n <= 3) return BigRational(base[n - 1]);
  BigRational r(9);
  for (int m = 3; m < n; ++m) r = BigRational(BigInt(m + 1) * (m - 1), BigInt(m)) * r * r;
  return r;
}

inline BigInt product_lower_bound(int n) {
  if (n < 1) throw InputError("product bound needs n >= 1");
  BigInt p = 1;
  for (int k = 1; k <= n - 1; ++k) p *= ipow(BigInt(k), std::uint64_t{1} << (n - k - 1));
  return p;
}

inline BigInt kalai_upper_bound(int n) {
  if (n < 1) throw InputError("Kalai bound needs n >= 1");
  return ipow(BigInt(n + 1), std::uint64_t{1} << (n - 1));
}

// ((n+1)!)^(2^n/(n+1)), kept as base and exponent.
struct CgpBound {
  BigInt base;
  BigRational exponent;
  BigFloat log_value;
};

inline CgpBound cgp_upper_bound(int n) {
  if (n < 1) throw InputError("CGP bound needs n >= 1");
  CgpBound b;
  b.base = factorial(n + 1);
  b.exponent = BigRational(BigInt(1) << n, BigInt(n + 1));
  b.log_value = BigFloat(b.exponent) * log(BigFloat(b.base));
  return b;
}

inline BigFloat log_kalai_upper_bound(int n) {
  return BigFloat(BigInt(1) << (n - 1)) * log(BigFloat(n + 1));
}

// (n+1)^(2^(n-1)) < ((n+1)!)^(2^n/(n+1)) raised to the power 2(n+1)/2^n is
// (n+1)^(n+1) < ((n+1)!)^2, which is decided exactly.
inline bool kalai_below_cgp_exact(int n) {
  BigInt lhs = ipow(BigInt(n + 1), static_cast<std::uint64_t>(n + 1));
  BigInt f = factorial(n + 1);
  return lhs < f * f;
}

struct BoundComparison {
  bool exact_less = false;
  bool log_less = false;
  BigFloat log_gap;  // log CGP - log Kalai
};

inline BoundComparison compare_kalai_cgp(int n) {
  BoundComparison c;
  c.exact_less = kalai_below_cgp_exact(n);
  c.log_gap = cgp_upper_bound(n).log_value - log_kalai_upper_bound(n);
  // Anything within 1e-80 of zero is a tie at this precision.
  c.log_less = c.log_gap > BigFloat("1e-80");
  return c;
}

struct BoundReport {
  int n = 0;
  BigInt lower_product;
  BigRational r_exact;
  BigInt lower_r;  // ceil(r(n+1)), a valid integer lower bound on f(n)
  BigInt upper_kalai;
  CgpBound upper_cgp;
  std::optional<BigInt> computed_f;
};

struct BoundOptions {
  int max_exact_n = 4;
  unsigned threads = 1;
};

inline BoundReport bounds_report(int n, const BoundOptions& opt = {}) {
  if (n < 1) throw InputError("bounds need n >= 1");
  BoundReport b;
  b.n = n;
  b.lower_product = product_lower_bound(n);
  b.r_exact = r_recursion(n + 1);
  const BigInt num = boost::multiprecision::numerator(b.r_exact);
  const BigInt den = boost::multiprecision::denominator(b.r_exact);
  b.lower_r = (num + den - 1) / den;
  b.upper_kalai = kalai_upper_bound(n);
  b.upper_cgp = cgp_upper_bound(n);
  if (n <= opt.max_exact_n) {
    CubeOptions co;
    co.threads = opt.threads;
    co.max_dim = std::max(co.max_dim, n + 1);
    b.computed_f = count_perfect_acyclic_matchings_cube(n + 1, co).acyclic;
  }
  return b;
}

}  // namespace dmc
