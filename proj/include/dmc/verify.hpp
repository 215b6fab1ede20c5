#pragma once

// Named check suites behind `dmc verify`. Each check states the claim it
// tests and carries a short detail string with the computed values.

#include <chrono>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dmc/complex.hpp"
#include "dmc/graph_morse.hpp"
#include "dmc/homology.hpp"
#include "dmc/morse.hpp"
#include "dmc/morse_complex.hpp"
#include "dmc/simplex_enum.hpp"

namespace dmc {

struct Check {
  std::string name;
  std::string claim;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  unsigned threads = 1;
};

// Exact value of f(4) from filtering the perfect matchings of the 5-cube.
inline constexpr std::uint64_t kF4 = 380125;

namespace detail {

inline Check run_check(std::string name, std::string claim,
                       const std::function<std::pair<bool, std::string>()>& body) {
  Check c{std::move(name), std::move(claim), false, {}, 0};
  auto start = std::chrono::steady_clock::now();
  try {
    std::tie(c.passed, c.detail) = body();
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = std::string("error: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

inline std::string expect_detail(const std::string& got, const std::string& want) {
  return got == want ? got : "got " + got + ", expected " + want;
}

// Kozlov's homotopy types of M(C_n) as sphere dimensions.
inline std::vector<int> kozlov_spheres(int n) {
  const int k = n / 3;
  switch (n % 3) {
    case 0: return {2 * k - 1, 2 * k - 1, 3 * k - 2, 3 * k - 2};
    case 1: return {2 * k, 3 * k - 1, 3 * k - 1};
    default: return {2 * k, 3 * k, 3 * k};
  }
}

inline MorseComplexOptions mc_options(const VerifyOptions& opt) {
  MorseComplexOptions m;
  m.threads = opt.threads;
  return m;
}

inline HomologyOptions h_options(const VerifyOptions& opt) {
  HomologyOptions h;
  h.threads = opt.threads;
  return h;
}

}  // namespace detail

inline std::vector<Check> verify_circle(const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  for (int n = 3; n <= 8; ++n)
    out.push_back(detail::run_check(
        "Kozlov homology of M(C_" + std::to_string(n) + ")",
        "M(C_n) has the homotopy type from Kozlov's case list for n mod 3", [&] {
          auto m = discrete_morse_complex(cycle_graph(n), detail::mc_options(opt));
          auto got = reduced_homology(m.complex, detail::h_options(opt));
          auto want = wedge_of_spheres(detail::kozlov_spheres(n), m.complex.dimension());
          return std::pair{got == want, detail::expect_detail(got.to_string(), want.to_string())};
        }));
  for (int n = 4; n <= 7; ++n)
    out.push_back(detail::run_check(
        "pure homology of M_p(C_" + std::to_string(n) + ")",
        "M_p(C_n) is homotopy equivalent to S^2 v S^(n-2) v S^(n-2)", [&] {
          auto m = pure_morse_complex(cycle_graph(n), detail::mc_options(opt));
          auto got = reduced_homology(m.complex, detail::h_options(opt));
          auto want = wedge_of_spheres({2, n - 2, n - 2}, m.complex.dimension());
          return std::pair{got == want, detail::expect_detail(got.to_string(), want.to_string())};
        }));
  for (int n = 3; n <= 8; ++n)
    out.push_back(detail::run_check(
        "f-vector of M(C_" + std::to_string(n) + ")",
        "f_i(M(C_n)) = 2n/(2n-i-1) binom(2n-i-1, i+1)", [&] {
          auto m = discrete_morse_complex(cycle_graph(n), detail::mc_options(opt));
          auto got = f_vector(m.complex).to_string();
          auto want = circle_fvector_formula(n).f.to_string();
          return std::pair{got == want, detail::expect_detail(got, want)};
        }));
  out.push_back(detail::run_check("purity of M(C_n), n = 3..8", "M(C_n) is pure exactly for n <= 5",
                                  [&] {
                                    std::string d;
                                    bool ok = true;
                                    for (int n = 3; n <= 8; ++n) {
                                      bool pure = discrete_morse_complex(cycle_graph(n),
                                                                         detail::mc_options(opt))
                                                      .complex.is_pure();
                                      ok = ok && pure == (n <= 5);
                                      d += (n > 3 ? " " : "") + std::to_string(n) +
                                           (pure ? ":pure" : ":not-pure");
                                    }
                                    return std::pair{ok, d};
                                  }));
  out.push_back(detail::run_check("dim M_p(C_n) = n-2, n = 3..8",
                                  "the pure Morse complex of C_n has dimension n-2", [&] {
                                    std::string d;
                                    bool ok = true;
                                    for (int n = 3; n <= 8; ++n) {
                                      int dim = pure_morse_complex(cycle_graph(n),
                                                                   detail::mc_options(opt))
                                                    .complex.dimension();
                                      ok = ok && dim == n - 2;
                                      d += (n > 3 ? " " : "") + std::to_string(dim);
                                    }
                                    return std::pair{ok, d};
                                  }));
  for (int e = 2; e <= 6; ++e)
    out.push_back(detail::run_check(
        "M_p(P_" + std::to_string(e) + ") collapsible",
        "the pure Morse complex of a path is collapsible", [&] {
          auto m = pure_morse_complex(path_graph(e), detail::mc_options(opt));
          auto cert = find_single_critical_matching(m.complex);
          return std::pair{cert.has_value(),
                           cert ? "certificate with " + std::to_string(cert->size()) + " pairs"
                                : std::string("no certificate")};
        }));
  out.push_back(detail::run_check("boundary of Δ_2 not collapsible",
                                  "no Morse matching of C_3 has a single critical cell", [] {
                                    auto cert = find_single_critical_matching(simplex_boundary(2));
                                    return std::pair{!cert.has_value(),
                                                     cert ? "unexpected certificate"
                                                          : "none, as required"};
                                  }));
  return out;
}

inline std::vector<Check> verify_simplex(const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  EnumerationOptions eo;
  eo.threads = opt.threads;
  const std::pair<int, int> f_values[] = {{1, 2}, {2, 9}, {3, 256}};
  for (auto [n, want] : f_values)
    out.push_back(detail::run_check(
        "f(" + std::to_string(n) + ") = " + std::to_string(want),
        "number of perfect Morse matchings of the " + std::to_string(n) + "-simplex", [&] {
          BigInt got = count_perfect_morse_matchings(simplex(n), eo);
          return std::pair{got == want, detail::expect_detail(got.str(), std::to_string(want))};
        }));
  CubeOptions co;
  co.threads = opt.threads;
  const std::pair<int, std::uint64_t> p_values[] = {{4, 272}, {5, 589185}};
  for (auto [d, want] : p_values)
    out.push_back(detail::run_check(
        "p(" + std::to_string(d) + ") = " + std::to_string(want),
        "perfect matchings of the " + std::to_string(d) + "-cube graph", [&] {
          BigInt got = count_perfect_matchings_cube(d, co);
          return std::pair{got == want, detail::expect_detail(got.str(), std::to_string(want))};
        }));
  out.push_back(detail::run_check("f(4) bracket", "174960 <= f(4) <= 390625", [&] {
    auto c = count_perfect_acyclic_matchings_cube(5, co);
    bool ok = c.acyclic >= 174960 && c.acyclic <= 390625 && c.acyclic == kF4;
    return std::pair{ok, "f(4) = " + c.acyclic.str() + " (" + c.rejected.str() +
                             " cyclic perfect matchings rejected)"};
  }));
  for (int d = 1; d <= 4; ++d)
    out.push_back(detail::run_check(
        "cube and Hasse counts agree, d = " + std::to_string(d),
        "perfect acyclic matchings of the d-cube are the perfect Morse matchings of the (d-1)-simplex",
        [&] {
          BigInt cube = count_perfect_acyclic_matchings_cube(d, co).acyclic;
          BigInt hasse = count_perfect_morse_matchings(simplex(d - 1), eo);
          return std::pair{cube == hasse, "cube " + cube.str() + ", Hasse " + hasse.str()};
        }));
  for (int d = 3; d <= 4; ++d)
    out.push_back(detail::run_check(
        "half composition, d = " + std::to_string(d),
        "perfect acyclic matchings on the two halves of the cube combine to one on the cube", [&] {
          auto r = verify_half_composition(d);
          return std::pair{r.failures == 0 && r.pairs_checked > 0,
                           std::to_string(r.pairs_checked) + " pairs, " +
                               std::to_string(r.failures) + " failures"};
        }));
  out.push_back(detail::run_check("f-vector of M(Δ_3)",
                                  "f(M(Δ_3)) = (28,300,1544,3932,4632,2128,256)", [&] {
                                    auto m = discrete_morse_complex(simplex(3), detail::mc_options(opt));
                                    auto got = f_vector(m.complex).to_string();
                                    return std::pair{got == "(28,300,1544,3932,4632,2128,256)", got};
                                  }));
  out.push_back(detail::run_check("f-vector of M_p(Δ_3)",
                                  "f(M_p(Δ_3)) = (28,300,1544,3680,3672,1600,256)", [&] {
                                    auto m = pure_morse_complex(simplex(3), detail::mc_options(opt));
                                    auto got = f_vector(m.complex).to_string();
                                    return std::pair{got == "(28,300,1544,3680,3672,1600,256)", got};
                                  }));
  out.push_back(detail::run_check("homology of M(Δ_3)", "H~_4 = Z^99, zero elsewhere", [&] {
    auto m = discrete_morse_complex(simplex(3), detail::mc_options(opt));
    auto got = reduced_homology(m.complex, detail::h_options(opt));
    auto want = wedge_of_spheres(std::vector<int>(99, 4), m.complex.dimension());
    return std::pair{got == want, got.to_string()};
  }));
  out.push_back(detail::run_check("homology of M_p(Δ_3)", "H~_3 = Z^81, zero elsewhere", [&] {
    auto m = pure_morse_complex(simplex(3), detail::mc_options(opt));
    auto got = reduced_homology(m.complex, detail::h_options(opt));
    auto want = wedge_of_spheres(std::vector<int>(81, 3), m.complex.dimension());
    return std::pair{got == want, got.to_string()};
  }));
  out.push_back(detail::run_check("M(Δ_1) ~ S^0", "the Morse complex of an edge is two points", [&] {
    auto m = discrete_morse_complex(simplex(1), detail::mc_options(opt));
    auto got = reduced_homology(m.complex, detail::h_options(opt));
    auto want = wedge_of_spheres({0}, m.complex.dimension());
    return std::pair{got == want, got.to_string()};
  }));
  out.push_back(detail::run_check("M(Δ_2): H_1 = Z^4", "the Morse complex of a triangle is a wedge of 4 circles",
                                  [&] {
                                    auto m = discrete_morse_complex(simplex(2), detail::mc_options(opt));
                                    auto got = reduced_homology(m.complex, detail::h_options(opt));
                                    auto want = wedge_of_spheres({1, 1, 1, 1}, m.complex.dimension());
                                    return std::pair{got == want, got.to_string()};
                                  }));
  out.push_back(detail::run_check(
      "T_k(mu) are (k,4)-trees and determine mu",
      "each T_k of a perfect Morse matching of Δ_3 is a (k,4)-tree and (T_3,...,T_0) is injective", [&] {
        HasseDiagram h = hasse_diagram(simplex(3));
        auto perfect = enumerate_matchings(h, MatchingMode::perfect, eo);
        std::set<std::vector<std::vector<Simplex>>> tuples;
        std::size_t bad = 0;
        for (const auto& mu : perfect) {
          std::vector<std::vector<Simplex>> tuple;
          for (int k = 3; k >= 0; --k) {
            auto t = extract_tk(h, mu, k);
            if (!is_kn_tree(t).is_tree) ++bad;
            tuple.push_back(t.faces);
          }
          tuples.insert(std::move(tuple));
        }
        bool ok = bad == 0 && perfect.size() == 256 && tuples.size() == perfect.size();
        return std::pair{ok, std::to_string(perfect.size()) + " matchings, " +
                                 std::to_string(tuples.size()) + " distinct tuples, " +
                                 std::to_string(bad) + " non-trees"};
      }));
  return out;
}

inline std::vector<Check> verify_graph(const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  EnumerationOptions eo;
  eo.threads = opt.threads;
  for (const auto& [name, g] : graph_corpus()) {
    if (g.connected() && g.edges().size() >= 3)
      out.push_back(detail::run_check(
          "Laplacian identity on " + name,
          "det(μI - Q) = sum_i f_{i-1}(M(Γ)) (-1)^i μ^(n-i) with f_{-1} = 1", [&, &g = g] {
            auto r = verify_laplacian_identity(g, opt.threads);
            return std::pair{r.holds, detail::expect_detail(r.from_fvector.to_string(),
                                                            r.char_poly.to_string())};
          }));
    out.push_back(detail::run_check(
        "rooted forests of " + name,
        "acyclic matchings of a graph are its rooted forests, size by size", [&, &g = g] {
          HasseDiagram h = hasse_diagram(g.to_complex());
          auto forests = enumerate_rooted_forests(g);
          auto matchings = enumerate_matchings(h, MatchingMode::all, eo);
          std::vector<std::uint64_t> fs, ms;
          for (const auto& f : forests) {
            if (fs.size() <= f.size()) fs.resize(f.size() + 1, 0);
            ++fs[f.size()];
          }
          std::size_t round_trip_failures = 0;
          std::vector<RootedForest> mapped;
          for (const auto& m : matchings) {
            if (ms.size() <= m.size()) ms.resize(m.size() + 1, 0);
            ++ms[m.size()];
            auto f = matching_to_rooted_forest(h, m);
            if (rooted_forest_to_matching(h, f) != m) ++round_trip_failures;
            mapped.push_back(std::move(f));
          }
          std::sort(mapped.begin(), mapped.end(), [](const RootedForest& a, const RootedForest& b) {
            return a.size() != b.size() ? a.size() < b.size() : a.arcs < b.arcs;
          });
          bool ok = fs == ms && round_trip_failures == 0 && mapped == forests;
          return std::pair{ok, std::to_string(forests.size()) + " forests, " +
                                   std::to_string(matchings.size()) + " matchings, " +
                                   std::to_string(round_trip_failures) + " round-trip failures"};
        }));
  }
  for (int n = 1; n <= 5; ++n)
    out.push_back(detail::run_check(
        "f-vector of M(K_" + std::to_string(n) + ")", "f_{i-1}(M(K_n)) = binom(n,i) (n-i) n^(i-1)",
        [&] {
          auto by_size =
              count_matchings_by_size(hasse_diagram(complete(n).to_complex()), MatchingMode::all, eo);
          FVector got;
          for (std::size_t i = 1; i < by_size.size(); ++i) got.counts.emplace_back(by_size[i]);
          auto want = kn_fvector(n);
          return std::pair{got == want, detail::expect_detail(got.to_string(), want.to_string())};
        }));
  return out;
}

inline std::vector<Check> verify_kalai(const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  KalaiOptions ko;
  ko.threads = opt.threads;
  const std::tuple<int, int, int> cases[] = {{3, 1, 3}, {4, 1, 16}, {4, 2, 4}, {5, 2, 125}};
  for (auto [n, k, want] : cases)
    out.push_back(detail::run_check(
        "Kalai sum (n,k) = (" + std::to_string(n) + "," + std::to_string(k) + ") = " +
            std::to_string(want),
        "sum over (k,n)-trees of |H_{k-1}|^2 = n^binom(n-2,k)", [&] {
          auto r = kalai_sum(n, k, ko);
          return std::pair{r.sum == want && r.expected == want,
                           "sum " + r.sum.str() + " over " + std::to_string(r.trees) + " trees of " +
                               std::to_string(r.subsets) + " subsets"};
        }));
  out.push_back(detail::run_check(
      "six-vertex projective plane is a (2,6)-tree with |H_1| = 2",
      "(k,n)-trees may carry torsion in H_{k-1}", [] {
        std::vector<Simplex> rp2{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                 {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
        auto r = is_kn_tree(rp2, 2, 6);
        return std::pair{r.is_tree && r.torsion_order == 2,
                         std::string(r.is_tree ? "tree" : "not a tree") + ", |H_1| = " +
                             r.torsion_order.str()};
      }));
  return out;
}

inline std::vector<Check> verify_bounds(const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  const std::pair<int, const char*> r_values[] = {{4, "216"}, {5, "174960"}};
  for (auto [n, want] : r_values)
    out.push_back(detail::run_check("r(" + std::to_string(n) + ") = " + want,
                                    "r(n+1) = (n+1)(n-1)/n r(n)^2 from r(3) = 9", [&] {
                                      auto r = r_recursion(n);
                                      std::string got = boost::multiprecision::denominator(r) == 1
                                                            ? boost::multiprecision::numerator(r).str()
                                                            : r.str();
                                      return std::pair{got == want, got};
                                    }));
  for (int n = 2; n <= 8; ++n)
    out.push_back(detail::run_check(
        "product bound below r(" + std::to_string(n + 1) + ")",
        "prod_{k=1}^{n-1} k^(2^(n-k-1)) < r(n+1)", [&] {
          auto p = product_lower_bound(n);
          auto r = r_recursion(n + 1);
          return std::pair{BigRational(p) < r, p.str() + " < " + r.str()};
        }));
  for (int n = 1; n <= 20; ++n)
    out.push_back(detail::run_check(
        "Kalai bound below CGP bound, n = " + std::to_string(n),
        "(n+1)^(2^(n-1)) < ((n+1)!)^(2^n/(n+1))", [&] {
          auto c = compare_kalai_cgp(n);
          bool ok = c.exact_less && c.log_less;
          std::string d = "log gap " + c.log_gap.str(12);
          if (!c.exact_less && !c.log_less && abs(c.log_gap) < BigFloat("1e-80"))
            d += " (the bounds are equal: " + kalai_upper_bound(n).str() + ")";
          return std::pair{ok, d};
        }));
  BoundOptions bo;
  bo.threads = opt.threads;
  for (int n = 1; n <= 4; ++n)
    out.push_back(detail::run_check(
        "bracket for f(" + std::to_string(n) + ")",
        "product bound < r(n+1) <= f(n) <= (n+1)^(2^(n-1))", [&] {
          auto b = bounds_report(n, bo);
          bool ok = b.computed_f && b.lower_product < b.lower_r && b.lower_r <= *b.computed_f &&
                    *b.computed_f <= b.upper_kalai;
          if (ok && n <= 3) ok = *b.computed_f == b.upper_kalai;
          return std::pair{ok, b.lower_product.str() + " < " + b.lower_r.str() + " <= " +
                                   (b.computed_f ? b.computed_f->str() : "?") + " <= " +
                                   b.upper_kalai.str()};
        }));
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"circle", "simplex", "graph", "kalai", "bounds"};
  return names;
}

inline std::vector<Check> run_suite(const std::string& name, const VerifyOptions& opt = {}) {
  if (name == "circle") return verify_circle(opt);
  if (name == "simplex") return verify_simplex(opt);
  if (name == "graph") return verify_graph(opt);
  if (name == "kalai") return verify_kalai(opt);
  if (name == "bounds") return verify_bounds(opt);
  if (name == "all") {
    std::vector<Check> all;
    for (const auto& s : suite_names())
      for (auto& c : run_suite(s, opt)) all.push_back(std::move(c));
    return all;
  }
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace dmc
