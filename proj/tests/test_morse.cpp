#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "dmc/morse.hpp"
#include "dmc/morse_complex.hpp"
#include "oracles.hpp"

using namespace dmc;

namespace {

std::vector<std::vector<EdgeId>> as_lists(const std::vector<MorseMatching>& ms) {
  std::vector<std::vector<EdgeId>> out;
  for (const auto& m : ms) out.push_back(m.edges);
  std::sort(out.begin(), out.end());
  return out;
}

MorseMatching by_faces(const HasseDiagram& h, std::vector<std::pair<Simplex, Simplex>> pairs) {
  std::vector<EdgeId> e;
  for (auto& [l, u] : pairs) e.push_back(*h.find_edge(l, u));
  return make_matching(e);
}

}  // namespace

TEST_CASE("acyclicity of small matchings") {
  HasseDiagram c3(cycle_graph(3));
  CHECK(is_acyclic_matching(c3, MorseMatching{}));
  // Orienting every edge of the triangle around the cycle closes a loop.
  auto around = by_faces(c3, {{Simplex{0}, Simplex{0, 1}},
                              {Simplex{1}, Simplex{1, 2}},
                              {Simplex{2}, Simplex{0, 2}}});
  CHECK_FALSE(is_acyclic_matching(c3, around));
  auto two = by_faces(c3, {{Simplex{0}, Simplex{0, 1}}, {Simplex{1}, Simplex{1, 2}}});
  CHECK(is_acyclic_matching(c3, two));
  auto clash = by_faces(c3, {{Simplex{0}, Simplex{0, 1}}, {Simplex{0}, Simplex{0, 2}}});
  CHECK_FALSE(is_acyclic_matching(c3, clash));
  CHECK_THROWS_AS(is_acyclic_matching(c3, MorseMatching{{99}}), InputError);

  // Same loop inside the 2-simplex.
  HasseDiagram d2(simplex(2));
  CHECK_FALSE(is_acyclic_matching(d2, by_faces(d2, {{Simplex{0}, Simplex{0, 1}},
                                                    {Simplex{1}, Simplex{1, 2}},
                                                    {Simplex{2}, Simplex{0, 2}}})));
}

TEST_CASE("all acyclic matchings of C_3") {
  HasseDiagram h(cycle_graph(3));
  auto all = enumerate_matchings(h, MatchingMode::all);
  CHECK(all.size() == 16);
  CHECK(count_matchings_by_size(h, MatchingMode::all) == std::vector<std::uint64_t>{1, 6, 9});
  CHECK(all.front().empty());
}

TEST_CASE("perfect Morse matching counts of simplices") {
  CHECK(enumerate_matchings(HasseDiagram(simplex(1)), MatchingMode::perfect).size() == 2);
  CHECK(enumerate_matchings(HasseDiagram(simplex(2)), MatchingMode::perfect).size() == 9);
  CHECK(count_perfect_morse_matchings(simplex(1)) == 2);
  CHECK(count_perfect_morse_matchings(simplex(2)) == 9);
  CHECK(count_perfect_morse_matchings(simplex(3)) == 256);
  for (const auto& m : enumerate_matchings(HasseDiagram(simplex(1)), MatchingMode::perfect))
    CHECK(critical_faces(HasseDiagram(simplex(1)), m).size() == 1);
  // Even face count: nothing can leave exactly one face.
  CHECK(count_perfect_morse_matchings(cycle_graph(4)) == 0);
  CHECK(count_perfect_morse_matchings(SimplicialComplex::from_facets({{0}})) == 1);
}

TEST_CASE("maximal matchings of small circles leave two critical cells") {
  for (int n = 3; n <= 6; ++n) {
    INFO("n = " << n);
    HasseDiagram h(cycle_graph(n));
    auto maximal = enumerate_matchings(h, MatchingMode::maximal);
    REQUIRE_FALSE(maximal.empty());
    std::set<std::size_t> critical;
    for (const auto& m : maximal) critical.insert(critical_faces(h, m).size());
    // From n = 6 on, pairs alternating with isolated faces around the
    // 2n-cycle give maximal matchings with more critical cells.
    if (n <= 5)
      CHECK(critical == std::set<std::size_t>{2});
    else
      CHECK(critical == std::set<std::size_t>{2, 4});
    // Independently: a matching is maximal iff no edge can be added.
    auto lists = as_lists(maximal);
    std::set<std::vector<EdgeId>> got(lists.begin(), lists.end());
    for (const auto& m : enumerate_matchings(h, MatchingMode::all)) {
      bool extendable = false;
      for (EdgeId e = 0; e < h.num_edges() && !extendable; ++e) {
        if (m.contains(e)) continue;
        auto bigger = m.edges;
        bigger.push_back(e);
        std::sort(bigger.begin(), bigger.end());
        extendable = is_acyclic_matching(h, MorseMatching{bigger});
      }
      CHECK(got.count(m.edges) == (extendable ? 0u : 1u));
    }
  }
}

TEST_CASE("enumeration agrees with brute force on small complexes") {
  auto complexes = oracle::small_complexes(4, 12);
  REQUIRE(complexes.size() > 20);
  for (const auto& c : complexes) {
    HasseDiagram h(c);
    auto want = oracle::all_acyclic_matchings(oracle::poset_of(c));
    std::vector<std::vector<EdgeId>> want_ids(want.begin(), want.end());
    CHECK(as_lists(enumerate_matchings(h, MatchingMode::all)) == want_ids);
    EnumerationOptions full;
    full.level_restricted = false;
    CHECK(as_lists(enumerate_matchings(h, MatchingMode::all, full)) == want_ids);
  }
}

TEST_CASE("structural invariants of enumerated matchings") {
  for (const auto& c : {simplex(2), cycle_graph(5), SimplicialComplex::from_facets({{0, 1, 2}, {2, 3}, {3, 4}})}) {
    HasseDiagram h(c);
    auto all = enumerate_matchings(h, MatchingMode::all);
    std::set<std::vector<EdgeId>> seen;
    for (const auto& m : all) seen.insert(m.edges);
    for (const auto& m : all) {
      CHECK(is_acyclic_matching(h, m));
      CHECK(h.num_faces() == 2 * m.size() + critical_faces(h, m).size());
      for (std::size_t drop = 0; drop < m.size(); ++drop) {
        auto sub = m.edges;
        sub.erase(sub.begin() + static_cast<long>(drop));
        CHECK(seen.count(sub) == 1);
      }
    }
  }
}

TEST_CASE("Morse functions round-trip through matchings") {
  for (const auto& c : {simplex(1), simplex(2), cycle_graph(4), path_graph(3)}) {
    HasseDiagram h(c);
    for (const auto& m : enumerate_matchings(h, MatchingMode::all)) {
      auto f = morse_function_from_matching(h, m);
      CHECK(matching_from_morse_function(h, f) == m);
      for (auto v : f.values) CHECK(v >= 0);
    }
  }
}

TEST_CASE("the empty matching gives the dimension function") {
  HasseDiagram h(simplex(2));
  auto f = morse_function_from_matching(h, MorseMatching{});
  for (FaceId x = 0; x < h.num_faces(); ++x) CHECK(f.values[x] == h.complex().face(x).dim());
  auto m = matching_from_morse_function(h, f);
  CHECK(m.empty());
  CHECK(critical_faces(h, m).size() == 7);
}

TEST_CASE("the two orientations of a segment are different Morse functions") {
  HasseDiagram h(simplex(1));
  auto perfect = enumerate_matchings(h, MatchingMode::perfect);
  REQUIRE(perfect.size() == 2);
  auto f0 = morse_function_from_matching(h, perfect[0]);
  auto f1 = morse_function_from_matching(h, perfect[1]);
  CHECK(f0.values != f1.values);
  CHECK(matching_from_morse_function(h, f0) != matching_from_morse_function(h, f1));
}

TEST_CASE("local Morse conditions are enforced") {
  HasseDiagram h(simplex(2));
  auto f = morse_function_from_matching(h, MorseMatching{});
  // Vertex {0} above both of its edges.
  f.values[*h.complex().find(Simplex{0})] = 10;
  try {
    matching_from_morse_function(h, f);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("{0}") != std::string::npos);
  }
  CHECK_THROWS_AS(matching_from_morse_function(h, MorseFunction{{0, 1}}), InputError);
  HasseDiagram c3(cycle_graph(3));
  auto around = by_faces(c3, {{Simplex{0}, Simplex{0, 1}},
                              {Simplex{1}, Simplex{1, 2}},
                              {Simplex{2}, Simplex{0, 2}}});
  CHECK_THROWS_AS(morse_function_from_matching(c3, around), InputError);
}

TEST_CASE("single critical cell certificates") {
  auto check_certificate = [](const SimplicialComplex& c) {
    auto m = find_single_critical_matching(c);
    REQUIRE(m);
    HasseDiagram h(c);
    CHECK(is_acyclic_matching(h, *m));
    CHECK(critical_faces(h, *m).size() == 1);
  };
  check_certificate(simplex(2));
  check_certificate(simplex(3));
  check_certificate(path_graph(4));
  check_certificate(pure_morse_complex(path_graph(3)).complex);
  CHECK_FALSE(find_single_critical_matching(cycle_graph(3)).has_value());
  CHECK_FALSE(find_single_critical_matching(simplex_boundary(3)).has_value());
  // Two triangles sharing a vertex collapse; a hollow triangle with a whisker does not.
  check_certificate(SimplicialComplex::from_facets({{0, 1, 2}, {2, 3, 4}}));
  CHECK_FALSE(find_single_critical_matching(SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}, {2, 3}})));
}

TEST_CASE("exhaustive search agrees with greedy collapse") {
  // Complexes where the greedy pass succeeds must also have a perfect-mode witness.
  for (const auto& c : oracle::small_complexes(4, 10)) {
    HasseDiagram h(c);
    bool greedy = detail::greedy_collapse(h).has_value();
    bool exhaustive = !enumerate_matchings(h, MatchingMode::perfect).empty();
    if (greedy) CHECK(exhaustive);
    CHECK(find_single_critical_matching(c).has_value() == exhaustive);
  }
}

TEST_CASE("enumeration output does not depend on the thread count") {
  for (const auto& c : {simplex(2), cycle_graph(6), simplex(3).skeleton(1)}) {
    HasseDiagram h(c);
    auto base = enumerate_matchings(h, MatchingMode::all);
    for (unsigned t : {2u, 3u, 4u}) {
      EnumerationOptions opt;
      opt.threads = t;
      CHECK(enumerate_matchings(h, MatchingMode::all, opt) == base);
      CHECK(count_matchings_by_size(h, MatchingMode::all, opt) ==
            count_matchings_by_size(h, MatchingMode::all));
    }
  }
  EnumerationOptions four;
  four.threads = 4;
  CHECK(count_perfect_morse_matchings(simplex(3), four) == 256);
}

TEST_CASE("enumeration budget") {
  HasseDiagram h(simplex(2));
  EnumerationOptions opt;
  opt.max_results = 10;
  try {
    enumerate_matchings(h, MatchingMode::all, opt);
    FAIL("expected budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(e.partial_count() == 10);
  }
  opt.threads = 3;
  CHECK_THROWS_AS(enumerate_matchings(h, MatchingMode::all, opt), BudgetExceeded);
}

TEST_CASE("a visitor can stop the stream") {
  HasseDiagram h(simplex(2));
  int seen = 0;
  for_each_matching(h, MatchingMode::all, [&](const std::vector<EdgeId>&) { return ++seen < 5; });
  CHECK(seen == 5);
}
