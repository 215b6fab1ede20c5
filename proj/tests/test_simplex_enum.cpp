#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "dmc/simplex_enum.hpp"
#include "oracles.hpp"

using namespace dmc;

TEST_CASE("cube digraph shape") {
  auto c2 = cube_digraph(2);
  CHECK(c2.num_vertices() == 4);
  CHECK(c2.arcs().size() == 4);
  for (int d = 1; d <= 6; ++d) {
    auto c = cube_digraph(d);
    CHECK(c.arcs().size() == static_cast<std::size_t>(d) << (d - 1));
    for (const auto& a : c.arcs()) CHECK(CubeDigraph::weight(a.from) == CubeDigraph::weight(a.to) + 1);
  }
  CHECK_THROWS_AS(cube_digraph(0), InputError);
}

TEST_CASE("characteristic-vector isomorphism") {
  auto cube = cube_digraph(4);
  HasseDiagram h(simplex(3));
  auto iso = cube_isomorphism(cube, h);
  std::size_t into_empty = 0;
  std::set<EdgeId> hit;
  for (std::size_t a = 0; a < cube.arcs().size(); ++a) {
    if (!iso.arc_to_edge[a]) {
      CHECK(cube.arcs()[a].to == 0);
      ++into_empty;
      continue;
    }
    EdgeId e = *iso.arc_to_edge[a];
    hit.insert(e);
    CHECK(iso.face_to_vertex[h.edge(e).upper] == cube.arcs()[a].from);
    CHECK(iso.face_to_vertex[h.edge(e).lower] == cube.arcs()[a].to);
    CHECK(iso.edge_to_arc[e] == a);
  }
  CHECK(into_empty == 4);
  CHECK(hit.size() == 28);
  CHECK_FALSE(iso.vertex_to_face[0].has_value());
  CHECK_THROWS_AS(cube_isomorphism(cube_digraph(3), h), InputError);
}

TEST_CASE("perfect matchings of cubes") {
  CHECK(count_perfect_matchings_cube(1) == 1);
  CHECK(count_perfect_matchings_cube(2) == 2);
  CHECK(count_perfect_matchings_cube(3) == 9);
  CHECK(count_perfect_matchings_cube(4) == 272);
  for (int d = 1; d <= 4; ++d) CHECK(count_perfect_matchings_cube(d) == oracle::cube_perfect_matchings(d));
  CHECK(count_perfect_matchings_cube(5) == 589185);
  try {
    count_perfect_matchings_cube(6);
    FAIL("expected budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(std::string(e.what()).find("p(6)") != std::string::npos);
  }
}

TEST_CASE("perfect acyclic matchings of cubes") {
  auto c3 = count_perfect_acyclic_matchings_cube(3);
  CHECK(c3.acyclic == 9);
  CHECK(c3.rejected == 0);
  auto c4 = count_perfect_acyclic_matchings_cube(4);
  CHECK(c4.acyclic == 256);
  CHECK(c4.rejected == 16);
  BigInt by_dir = 0;
  for (const auto& n : c4.acyclic_by_directions) by_dir += n;
  CHECK(by_dir == 256);
  auto c5 = count_perfect_acyclic_matchings_cube(5);
  CHECK(c5.perfect == 589185);
  CHECK(c5.acyclic >= 174960);
  CHECK(c5.acyclic <= 390625);
  CHECK(c5.acyclic == 380125);
}

TEST_CASE("cube and Hasse routes give the same perfect matchings") {
  for (int d = 1; d <= 4; ++d) {
    INFO("d = " << d);
    HasseDiagram h(simplex(d - 1));
    auto cube = cube_digraph(d);
    auto iso = cube_isomorphism(cube, h);
    std::set<std::vector<EdgeId>> via_cube;
    for (const auto& mate : perfect_acyclic_cube_matchings(d)) {
      std::vector<EdgeId> edges;
      for (std::size_t a = 0; a < cube.arcs().size(); ++a)
        if (iso.arc_to_edge[a] && mate[cube.arcs()[a].from] == cube.arcs()[a].to)
          edges.push_back(*iso.arc_to_edge[a]);
      std::sort(edges.begin(), edges.end());
      via_cube.insert(edges);
    }
    std::set<std::vector<EdgeId>> via_hasse;
    for (const auto& m : enumerate_matchings(h, MatchingMode::perfect)) via_hasse.insert(m.edges);
    CHECK(via_cube == via_hasse);
    CHECK(BigInt(via_cube.size()) == count_perfect_morse_matchings(simplex(d - 1)));
  }
}

TEST_CASE("unions of half matchings") {
  for (int d = 3; d <= 4; ++d) {
    auto r = verify_half_composition(d);
    CHECK(r.failures == 0);
    std::size_t halves = d == 3 ? 2 : 9;
    CHECK(r.pairs_checked == static_cast<std::size_t>(d) * halves * halves);
  }
}

TEST_CASE("cube counts are thread-count independent") {
  CubeOptions opt;
  opt.threads = 3;
  auto a = count_perfect_acyclic_matchings_cube(4, opt);
  auto b = count_perfect_acyclic_matchings_cube(4);
  CHECK(a.acyclic == b.acyclic);
  CHECK(a.acyclic_by_directions == b.acyclic_by_directions);
  CHECK(count_perfect_matchings_cube(5, opt) == 589185);
}

TEST_CASE("T_k of perfect matchings of the triangle") {
  HasseDiagram h(simplex(2));
  auto perfect = enumerate_matchings(h, MatchingMode::perfect);
  REQUIRE(perfect.size() == 9);
  for (const auto& mu : perfect) {
    auto t1 = extract_tk(h, mu, 1);
    CHECK(t1.faces.size() == 2);
    auto r = is_kn_tree(t1);
    CHECK(r.is_tree);
    CHECK(r.torsion_order == 1);
    CHECK(extract_tk(h, mu, 0).faces.size() == 1);
    CHECK(extract_tk(h, mu, 2).faces.size() == 1);
  }
  CHECK_THROWS_AS(extract_tk(h, MorseMatching{}, 1), InputError);
  CHECK_THROWS_AS(extract_tk(h, perfect[0], 3), InputError);
}

TEST_CASE("T_k of perfect matchings of the 3-simplex") {
  HasseDiagram h(simplex(3));
  const auto& c = h.complex();
  auto perfect = enumerate_matchings(h, MatchingMode::perfect);
  REQUIRE(perfect.size() == 256);
  std::set<std::vector<std::vector<Simplex>>> tuples;
  for (const auto& mu : perfect) {
    std::vector<std::vector<Simplex>> tuple;
    for (int k = 3; k >= 0; --k) {
      auto t = extract_tk(h, mu, k);
      CHECK(is_kn_tree(t).is_tree);
      tuple.push_back(t.faces);
    }
    tuples.insert(tuple);
    // Level by level the k-faces split into T_k and the faces matched upward;
    // at k = 0, T_0 is the critical vertex.
    for (int k = 0; k <= 3; ++k) {
      std::size_t in_t = extract_tk(h, mu, k).faces.size();
      std::size_t up = 0;
      for (EdgeId e : mu.edges) up += c.face(h.edge(e).lower).dim() == k;
      CHECK(in_t + up == c.count(k));
    }
  }
  CHECK(tuples.size() == 256);
}

TEST_CASE("(k,n)-tree checks") {
  for (auto pair : {std::vector<Simplex>{{0, 1}, {1, 2}}, std::vector<Simplex>{{0, 1}, {0, 2}},
                    std::vector<Simplex>{{0, 2}, {1, 2}}}) {
    auto r = is_kn_tree(pair, 1, 3);
    CHECK(r.is_tree);
    CHECK(r.torsion_order == 1);
  }
  CHECK_FALSE(is_kn_tree({{0, 1}}, 1, 3).is_tree);
  CHECK_FALSE(is_kn_tree({{0, 1}, {1, 2}, {0, 2}}, 1, 3).is_tree);
}

TEST_CASE("(k,n)-tree input errors") {
  CHECK_THROWS_AS(is_kn_tree({{0, 1, 2}}, 1, 3), InputError);
  CHECK_THROWS_AS(is_kn_tree({{0, 5}}, 1, 3), InputError);
  CHECK_THROWS_AS(is_kn_tree({{0, 1}, {0, 1}}, 1, 3), InputError);
}

TEST_CASE("projective plane is a 2-tree with torsion") {
  std::vector<Simplex> rp2{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                           {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
  auto r = is_kn_tree(rp2, 2, 6);
  CHECK(r.is_tree);
  CHECK(r.torsion_order == 2);
}

TEST_CASE("2-trees on five vertices carry no torsion") {
  auto r = kalai_sum(5, 2);
  CHECK(r.trees == 125);
  CHECK(r.torsion_distribution == std::map<BigInt, std::uint64_t>{{1, 125}});
}

TEST_CASE("Kalai sums") {
  const std::tuple<int, int, int> cases[] = {{3, 1, 3}, {4, 1, 16}, {4, 2, 4}, {5, 2, 125},
                                             {5, 1, 125}, {5, 3, 5}, {3, 0, 3}};
  for (auto [n, k, want] : cases) {
    INFO("(n,k) = (" << n << "," << k << ")");
    auto r = kalai_sum(n, k);
    CHECK(r.sum == want);
    CHECK(r.expected == want);
  }
  KalaiOptions opt;
  opt.threads = 4;
  CHECK(kalai_sum(5, 2, opt).sum == 125);
  opt.max_subsets = 100;
  CHECK_THROWS_AS(kalai_sum(5, 2, opt), BudgetExceeded);
}

TEST_CASE("Kalai sum agrees with complexes and determinants subset by subset") {
  for (auto [n, k] : {std::pair{4, 1}, std::pair{4, 2}, std::pair{5, 2}}) {
    std::vector<Simplex> faces;
    auto full = simplex(n - 1);
    auto [a, b] = full.face_range(k);
    for (FaceId f = a; f < b; ++f) faces.push_back(full.face(f));
    std::vector<Simplex> rows;  // (k-1)-faces avoiding vertex 0
    auto [ra, rb] = full.face_range(k - 1);
    for (FaceId f = ra; f < rb; ++f)
      if (!full.face(f).contains(0)) rows.push_back(full.face(f));
    const std::size_t size = rows.size();
    BigInt sum = 0;
    std::vector<std::size_t> pick(size);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t next) {
      if (j == size) {
        std::vector<Simplex> t;
        for (auto i : pick) t.push_back(faces[i]);
        // Reduced boundary restricted to T: its determinant is +-|H_{k-1}| for trees.
        oracle::Matrix m(size, std::vector<BigInt>(size, 0));
        for (std::size_t c = 0; c < size; ++c)
          for (std::size_t i = 0; i < t[c].size(); ++i) {
            auto facet = t[c].facet_without(i);
            auto row = std::find(rows.begin(), rows.end(), facet);
            if (row != rows.end()) m[static_cast<std::size_t>(row - rows.begin())][c] = i % 2 ? -1 : 1;
          }
        BigInt det = boost::multiprecision::numerator(oracle::rational_det(m));
        auto r = is_kn_tree(t, k, n);
        CHECK(r.is_tree == (det != 0));
        if (r.is_tree) CHECK(r.torsion_order == (det < 0 ? BigInt(-det) : det));
        sum += det * det;
        return;
      }
      for (std::size_t x = next; x + (size - j) <= faces.size(); ++x) {
        pick[j] = x;
        rec(j + 1, x + 1);
      }
    };
    rec(0, 0);
    CHECK(sum == kalai_sum(n, k).sum);
  }
}

TEST_CASE("r recursion") {
  const char* want[] = {"1", "2", "9", "216", "174960", "146932807680",
                        "125937291507579224064000"};
  for (int n = 1; n <= 7; ++n) {
    auto r = r_recursion(n);
    CHECK(boost::multiprecision::denominator(r) == 1);
    CHECK(boost::multiprecision::numerator(r).str() == want[n - 1]);
  }
  CHECK_THROWS_AS(r_recursion(0), InputError);
}

TEST_CASE("product lower bound") {
  const char* want[] = {"1", "1", "2", "12", "576", "1658880", "16511297126400",
                        "1908360529573854283038720000"};
  for (int n = 1; n <= 8; ++n) CHECK(product_lower_bound(n).str() == want[n - 1]);
  for (int n = 2; n <= 8; ++n) CHECK(BigRational(product_lower_bound(n)) < r_recursion(n + 1));
}

TEST_CASE("upper bounds") {
  CHECK(kalai_upper_bound(1) == 2);
  CHECK(kalai_upper_bound(2) == 9);
  CHECK(kalai_upper_bound(3) == 256);
  CHECK(kalai_upper_bound(4) == 390625);
  auto cgp = cgp_upper_bound(3);
  CHECK(cgp.base == 24);
  CHECK(cgp.exponent == BigRational(2));
  CHECK(abs(cgp.log_value - log(BigFloat(576))) < BigFloat("1e-90"));
  // At n = 1 both bounds equal 2; from n = 2 on Kalai's is strictly smaller.
  CHECK_FALSE(kalai_below_cgp_exact(1));
  CHECK(abs(compare_kalai_cgp(1).log_gap) < BigFloat("1e-90"));
  for (int n = 2; n <= 20; ++n) {
    auto c = compare_kalai_cgp(n);
    CHECK(c.exact_less);
    CHECK(c.log_less);
  }
}

TEST_CASE("bound reports bracket the exact counts") {
  const int f[] = {2, 9, 256, 380125};
  for (int n = 1; n <= 4; ++n) {
    auto b = bounds_report(n);
    REQUIRE(b.computed_f);
    CHECK(*b.computed_f == f[n - 1]);
    CHECK(b.lower_product < b.lower_r);
    CHECK(b.lower_r <= *b.computed_f);
    CHECK(*b.computed_f <= b.upper_kalai);
    if (n <= 3) CHECK(*b.computed_f == b.upper_kalai);
  }
  CHECK_FALSE(bounds_report(6).computed_f.has_value());
  CHECK(bounds_report(4).lower_r == 174960);
}
