#pragma once

// The discrete Morse complex: the simplicial complex on the cover edges of a
// Hasse diagram whose faces are the nonempty acyclic matchings, and its pure
// part generated by the matchings of maximum cardinality.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dmc/complex.hpp"
#include "dmc/error.hpp"
#include "dmc/hasse.hpp"
#include "dmc/morse.hpp"

namespace dmc {

enum class MorseComplexKind { full, pure };

struct MorseComplexOptions {
  std::size_t max_faces = 1'000'000;
  unsigned threads = 1;
};

struct MorseComplex {
  HasseDiagram hasse;          // Hasse diagram of the base complex
  SimplicialComplex complex;   // vertex ids are cover-edge ids of `hasse`
  MorseComplexKind kind = MorseComplexKind::full;

  const SimplicialComplex& base() const { return hasse.complex(); }
};

namespace detail {

inline std::vector<MorseMatching> all_nonempty_matchings(const HasseDiagram& h,
                                                         const MorseComplexOptions& opt) {
  EnumerationOptions eo;
  eo.threads = opt.threads;
  // The empty matching is the empty face and does not count against the budget.
  eo.max_results = opt.max_faces == std::numeric_limits<std::size_t>::max() ? opt.max_faces
                                                                            : opt.max_faces + 1;
  std::vector<MorseMatching> out;
  try {
    for_each_matching(
        h, MatchingMode::all,
        [&](const std::vector<EdgeId>& edges) {
          if (!edges.empty()) out.push_back(MorseMatching{edges});
        },
        eo);
  } catch (const BudgetExceeded&) {
    throw BudgetExceeded("Morse complex exceeds the face budget of " +
                             std::to_string(opt.max_faces) + " faces (" +
                             std::to_string(out.size()) + " faces enumerated so far)",
                         out.size());
  }
  return out;
}

inline std::vector<Simplex> to_simplices(const std::vector<MorseMatching>& matchings) {
  std::vector<Simplex> out;
  out.reserve(matchings.size());
  for (const auto& m : matchings)
    out.emplace_back(std::vector<Vertex>(m.edges.begin(), m.edges.end()));
  return out;
}

}  // namespace detail

inline MorseComplex discrete_morse_complex(const SimplicialComplex& base,
                                           const MorseComplexOptions& opt = {}) {
  MorseComplex out;
  out.hasse = hasse_diagram(base);
  out.kind = MorseComplexKind::full;
  auto matchings = detail::all_nonempty_matchings(out.hasse, opt);
  if (matchings.empty()) throw InputError("Morse complex is empty: no cover edges");
  out.complex = SimplicialComplex::from_closed_faces(detail::to_simplices(matchings),
                                                    out.hasse.num_edges());
  return out;
}

inline MorseComplex pure_morse_complex(const SimplicialComplex& base,
                                       const MorseComplexOptions& opt = {}) {
  MorseComplex out;
  out.hasse = hasse_diagram(base);
  out.kind = MorseComplexKind::pure;
  auto matchings = detail::all_nonempty_matchings(out.hasse, opt);
  if (matchings.empty()) throw InputError("Morse complex is empty: no cover edges");
  std::size_t top = 0;
  for (const auto& m : matchings) top = std::max(top, m.size());
  std::vector<MorseMatching> generators;
  for (auto& m : matchings)
    if (m.size() == top) generators.push_back(std::move(m));
  out.complex = SimplicialComplex::from_simplices(detail::to_simplices(generators),
                                                  out.hasse.num_edges());
  return out;
}

inline bool is_pure(const MorseComplex& m) { return m.complex.is_pure(); }

// Closed-form f-vector of the Morse complex of the n-cycle. The Hasse diagram
// of C_n is the 2n-cycle, whose (i+1)-edge matchings number
// 2n/(2n-i-1) * C(2n-i-1, i+1); at i+1 = n the two cyclic perfect matchings are
// not acyclic and drop out, so f_{n-1} = 0 and the complex has dimension n-2.
struct CircleFVector {
  FVector f;
  std::string convention;
};

inline CircleFVector circle_fvector_formula(int n) {
  if (n < 3) throw InputError("cycle graph needs at least 3 nodes");
  CircleFVector out;
  out.convention =
      "f_i counts i-dimensional faces (matchings of i+1 cover edges): "
      "f_i = 2n/(2n-i-1) * binom(2n-i-1, i+1) for 0 <= i <= n-2";
  const std::int64_t m = 2 * static_cast<std::int64_t>(n);
  for (std::int64_t i = 0; i <= n - 2; ++i) {
    BigInt num = BigInt(m) * binomial(m - i - 1, i + 1);
    out.f.counts.push_back(num / (m - i - 1));
  }
  return out;
}

}  // namespace dmc
