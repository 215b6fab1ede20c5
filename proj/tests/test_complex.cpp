#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dmc/complex.hpp"
#include "dmc/hasse.hpp"
#include "dmc/io.hpp"
#include "oracles.hpp"

using namespace dmc;

TEST_CASE("simplex invariants") {
  Simplex s({3, 1, 2});
  CHECK(s.to_string() == "{1,2,3}");
  CHECK(s.dim() == 2);
  CHECK(s.contains(Simplex{1, 3}));
  CHECK_FALSE(s.contains(Simplex{0}));
  CHECK(s.facet_without(1) == Simplex{1, 3});
  CHECK_THROWS_AS(Simplex(std::vector<Vertex>{}), InputError);
  CHECK_THROWS_AS(Simplex({1, 1}), InputError);
  CHECK_THROWS_AS(Simplex({-1, 2}), InputError);
  // (dimension, lexicographic)
  CHECK(Simplex{5} < Simplex{0, 1});
  CHECK(Simplex{0, 2} < Simplex{1, 2});
}

TEST_CASE("closure and f-vectors of standard complexes") {
  CHECK(f_vector(simplex(3)).to_string() == "(4,6,4,1)");
  CHECK(f_vector(simplex(2)).total() == 7);
  CHECK(f_vector(simplex_boundary(2)).to_string() == "(3,3)");
  CHECK(f_vector(cycle_graph(5)).to_string() == "(5,5)");
  CHECK(f_vector(path_graph(3)).to_string() == "(4,3)");
  CHECK(f_vector(complete_graph(4)).to_string() == "(4,6)");
  CHECK(f_vector(simplex(4)).euler_characteristic() == 1);
  CHECK(f_vector(simplex_boundary(3)).euler_characteristic() == 2);
  CHECK(simplex(3).is_pure());
  auto mixed = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3}});
  CHECK_FALSE(mixed.is_pure());
  CHECK(mixed.facets().size() == 2);
  CHECK(mixed.dimension() == 2);
  CHECK_THROWS_AS(cycle_graph(2), InputError);
  CHECK_THROWS_AS(SimplicialComplex::from_facets({}), InputError);
}

TEST_CASE("faces are indexed by dimension then lexicographically") {
  auto c = simplex(2);
  std::vector<std::string> got;
  for (const auto& s : c.faces()) got.push_back(s.to_string());
  CHECK(got == std::vector<std::string>{"{0}", "{1}", "{2}", "{0,1}", "{0,2}", "{1,2}", "{0,1,2}"});
  auto [a, b] = c.face_range(1);
  CHECK(a == 3);
  CHECK(b == 6);
  CHECK(c.find(Simplex{0, 2}) == FaceId{4});
  CHECK_FALSE(c.find(Simplex{0, 3}).has_value());
}

TEST_CASE("non-maximal input facets are absorbed") {
  auto c = SimplicialComplex::from_facets({{0, 1}, {0, 1, 2}, {1}});
  CHECK(c == simplex(2));
  CHECK(c.facets().size() == 1);
}

TEST_CASE("closed face families are verified") {
  CHECK_NOTHROW(SimplicialComplex::from_closed_faces({Simplex{0}, Simplex{1}, Simplex{0, 1}}));
  CHECK_THROWS_AS(SimplicialComplex::from_closed_faces({Simplex{0}, Simplex{0, 1}}), InputError);
}

TEST_CASE("Hasse diagram covers agree with the definition") {
  for (int d = 0; d <= 4; ++d) {
    auto c = simplex(d);
    HasseDiagram h(c);
    auto p = oracle::poset_of(c);
    REQUIRE(h.num_edges() == p.covers.size());
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      CHECK(static_cast<int>(h.edge(e).lower) == p.covers[e].first);
      CHECK(static_cast<int>(h.edge(e).upper) == p.covers[e].second);
    }
  }
  HasseDiagram h(simplex(3));
  CHECK(h.num_edges() == 28);
  auto e = h.find_edge(Simplex{0}, Simplex{0, 1});
  REQUIRE(e);
  CHECK(h.describe(*e) == "({0} ⊂ {0,1})");
  CHECK_FALSE(h.find_edge(Simplex{0}, Simplex{1, 2}).has_value());
  CHECK_THROWS_AS(hasse_diagram(SimplicialComplex{}), InputError);
}

TEST_CASE("facet list parsing") {
  std::istringstream in("# a triangle and a tail\n0 1 2\n\n2 3   # edge\n");
  auto list = parse_facet_list(in);
  REQUIRE(list.facets.size() == 2);
  CHECK(list.lines == std::vector<std::size_t>{2, 4});

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream s(text);
    try {
      parse_facet_list(s);
    } catch (const InputError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("0 1\n1 x\n") == 2);
  CHECK(line_of("0 1\n\n# c\n1 -2\n") == 4);
  CHECK(line_of("3 3\n") == 1);
  CHECK(line_of("1.5\n") == 1);

  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(ingest_facet_list(empty), InputError);
}

TEST_CASE("sparse ids are remapped in sorted order") {
  std::istringstream in("10 30\n30 20\n");
  auto r = ingest_facet_list(in);
  CHECK(r.remapped);
  CHECK(r.original_ids == std::vector<std::int64_t>{10, 20, 30});
  CHECK(r.complex == SimplicialComplex::from_facets({{0, 2}, {2, 1}}));
  std::istringstream dense("0 1\n1 2\n");
  CHECK_FALSE(ingest_facet_list(dense).remapped);
}

TEST_CASE("facet lists round-trip") {
  auto c = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3}, {4}});
  std::stringstream s;
  write_facet_list(s, c, "two lines\nof comment");
  CHECK(s.str().rfind("# two lines\n# of comment\n", 0) == 0);
  CHECK(ingest_facet_list(s).complex == c);
}

TEST_CASE("skeleta") {
  auto s = simplex(3).skeleton(1);
  CHECK(f_vector(s).to_string() == "(4,6)");
  CHECK(s == complete_graph(4));
}
