#include <catch2/catch_amalgamated.hpp>

#include "dmc/morse_complex.hpp"
#include "oracles.hpp"

using namespace dmc;

TEST_CASE("Morse complex of the triangle boundary") {
  auto m = discrete_morse_complex(cycle_graph(3));
  CHECK(f_vector(m.complex).to_string() == "(6,9)");
  CHECK(m.complex.vertex_universe() == 6);
  CHECK(m.kind == MorseComplexKind::full);
  CHECK(m.base() == cycle_graph(3));
}

TEST_CASE("Morse complexes of the 3-simplex") {
  auto full = discrete_morse_complex(simplex(3));
  CHECK(f_vector(full.complex).to_string() == "(28,300,1544,3932,4632,2128,256)");
  CHECK_FALSE(full.complex.is_pure());
  auto pure = pure_morse_complex(simplex(3));
  CHECK(f_vector(pure.complex).to_string() == "(28,300,1544,3680,3672,1600,256)");
  CHECK(pure.complex.is_pure());
  CHECK(pure.complex.facets().size() == 256);
}

TEST_CASE("Morse complex faces are the acyclic matchings") {
  for (const auto& c : oracle::small_complexes(4, 9)) {
    auto by_size = oracle::matchings_by_size(oracle::poset_of(c));
    if (by_size.size() < 2) continue;
    auto m = discrete_morse_complex(c);
    FVector want;
    for (std::size_t i = 1; i < by_size.size(); ++i) want.counts.emplace_back(by_size[i]);
    CHECK(f_vector(m.complex) == want);
  }
}

TEST_CASE("circle f-vector formula") {
  CHECK(circle_fvector_formula(3).f.to_string() == "(6,9)");
  CHECK(circle_fvector_formula(4).f.to_string() == "(8,20,16)");
  CHECK(circle_fvector_formula(8).f.to_string() == "(16,104,352,660,672,336,64)");
  CHECK_THROWS_AS(circle_fvector_formula(2), InputError);
  for (int n = 3; n <= 8; ++n) {
    auto m = discrete_morse_complex(cycle_graph(n));
    CHECK(f_vector(m.complex) == circle_fvector_formula(n).f);
    CHECK(m.complex.dimension() == n - 2);
  }
  // Brute force over all subsets of the 2n covers.
  for (int n = 3; n <= 7; ++n) {
    auto by_size = oracle::matchings_by_size(oracle::poset_of(cycle_graph(n)));
    FVector want;
    for (std::size_t i = 1; i < by_size.size(); ++i) want.counts.emplace_back(by_size[i]);
    CHECK(circle_fvector_formula(n).f == want);
  }
}

TEST_CASE("purity of circle Morse complexes") {
  for (int n = 3; n <= 8; ++n) {
    INFO("n = " << n);
    CHECK(is_pure(discrete_morse_complex(cycle_graph(n))) == (n <= 5));
    auto p = pure_morse_complex(cycle_graph(n));
    CHECK(p.complex.dimension() == n - 2);
    CHECK(p.complex.is_pure());
  }
}

TEST_CASE("pure part is generated by maximum matchings") {
  auto base = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3}});
  auto full = discrete_morse_complex(base);
  auto pure = pure_morse_complex(base);
  int top = full.complex.dimension();
  CHECK(pure.complex.dimension() == top);
  std::size_t top_faces = full.complex.count(top);
  CHECK(pure.complex.facets().size() == top_faces);
  for (const auto& s : pure.complex.faces()) CHECK(full.complex.contains(s));
}

TEST_CASE("face budget") {
  MorseComplexOptions opt;
  opt.max_faces = 100;
  try {
    discrete_morse_complex(simplex(3), opt);
    FAIL("expected budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(e.partial_count() <= 101);
    CHECK(std::string(e.what()).find("100") != std::string::npos);
  }
  opt.max_faces = 15;  // exactly the 15 faces of M(C_3)
  CHECK_NOTHROW(discrete_morse_complex(cycle_graph(3), opt));
  opt.max_faces = 14;
  CHECK_THROWS_AS(discrete_morse_complex(cycle_graph(3), opt), BudgetExceeded);
}

TEST_CASE("a point has an empty Morse complex") {
  CHECK_THROWS_AS(discrete_morse_complex(SimplicialComplex::from_facets({{0}})), InputError);
}

TEST_CASE("Morse complex construction is thread-count independent") {
  auto base = discrete_morse_complex(simplex(3));
  for (unsigned t : {2u, 4u}) {
    MorseComplexOptions opt;
    opt.threads = t;
    CHECK(discrete_morse_complex(simplex(3), opt).complex == base.complex);
    CHECK(pure_morse_complex(cycle_graph(6), opt).complex == pure_morse_complex(cycle_graph(6)).complex);
  }
}
