#pragma once

// Discrete Morse functions, represented by their acyclic matchings on the
// Hasse diagram.
//
// The modified Hasse digraph directs every cover edge downward (upper face to
// lower face) except the matched ones, which point upward. A matching is a
// Morse matching iff that digraph has no directed cycle.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dmc/bigint.hpp"
#include "dmc/complex.hpp"
#include "dmc/error.hpp"
#include "dmc/hasse.hpp"
#include "dmc/parallel.hpp"

namespace dmc {

struct MorseMatching {
  std::vector<EdgeId> edges;  // sorted cover-edge ids

  std::size_t size() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }
  bool contains(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }

  friend auto operator<=>(const MorseMatching&, const MorseMatching&) = default;
};

// Face id -> value.
struct MorseFunction {
  std::vector<std::int64_t> values;
};

struct CriticalSet {
  std::vector<FaceId> faces;
  std::size_t size() const noexcept { return faces.size(); }
};

enum class MatchingMode { all, maximal, perfect };

struct EnumerationOptions {
  unsigned threads = 1;
  // Enumeration stops with BudgetExceeded once more matchings than this are produced.
  std::size_t max_results = std::numeric_limits<std::size_t>::max();
  // Restrict cycle searches to the two dimension levels of the new edge.
  bool level_restricted = true;
};

namespace detail {

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

// Mutable matching on a fixed Hasse diagram with incremental cycle detection.
class MatchingState {
 public:
  explicit MatchingState(const HasseDiagram& h)
      : h_(&h), matched_(h.num_faces(), kNoEdge), stamp_(h.num_faces(), 0) {
    dims_.reserve(h.num_faces());
    for (const auto& s : h.complex().faces()) dims_.push_back(s.dim());
  }

  bool is_free(FaceId f) const { return matched_[f] == kNoEdge; }
  EdgeId matched_edge(FaceId f) const { return matched_[f]; }

  bool can_match(EdgeId e) const {
    const auto& c = h_->edge(e);
    return is_free(c.lower) && is_free(c.upper);
  }

  // Would reversing e close a directed cycle? A new cycle must use the arc
  // lower -> upper, so it exists iff lower is reachable from upper.
  bool closes_cycle(EdgeId e, bool level_restricted) const {
    const auto& c = h_->edge(e);
    const int lo = dims_[c.lower];
    const int hi = dims_[c.upper];
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    stack_.clear();
    stack_.push_back(c.upper);
    stamp_[c.upper] = epoch_;
    while (!stack_.empty()) {
      FaceId x = stack_.back();
      stack_.pop_back();
      for (EdgeId d : h_->down_edges(x)) {
        if (d == e || matched_[x] == d) continue;
        FaceId y = h_->edge(d).lower;
        if (y == c.lower) return true;
        if (level_restricted && dims_[y] < lo) continue;
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          stack_.push_back(y);
        }
      }
      EdgeId m = matched_[x];
      if (m != kNoEdge && h_->edge(m).lower == x) {
        FaceId z = h_->edge(m).upper;
        if (level_restricted && dims_[z] > hi) continue;
        if (stamp_[z] != epoch_) {
          stamp_[z] = epoch_;
          stack_.push_back(z);
        }
      }
    }
    return false;
  }

  void add(EdgeId e) {
    const auto& c = h_->edge(e);
    matched_[c.lower] = e;
    matched_[c.upper] = e;
  }

  void remove(EdgeId e) {
    const auto& c = h_->edge(e);
    matched_[c.lower] = kNoEdge;
    matched_[c.upper] = kNoEdge;
  }

 private:
  const HasseDiagram* h_;
  std::vector<int> dims_;
  std::vector<EdgeId> matched_;
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::uint32_t epoch_ = 0;
  mutable std::vector<FaceId> stack_;
};

// Include/exclude backtracking over cover edges in canonical order. The
// exclude branch is explored first, so leaves come out in a fixed order that
// any partition by decision prefix reproduces when concatenated.
class MatchingEnumerator {
 public:
  MatchingEnumerator(const HasseDiagram& h, MatchingMode mode, bool level_restricted)
      : h_(&h), mode_(mode), level_restricted_(level_restricted), state_(h),
        last_incident_(h.num_faces(), kNoEdge) {
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      last_incident_[h.edge(e).lower] = e;
      last_incident_[h.edge(e).upper] = e;
    }
    for (FaceId f = 0; f < h.num_faces(); ++f)
      if (last_incident_[f] == kNoEdge) ++critical_;
  }

  // All feasible decision prefixes on the first `depth` edges, in traversal order.
  std::vector<std::vector<EdgeId>> prefixes(EdgeId depth) {
    std::vector<std::vector<EdgeId>> out;
    prefix_rec(0, depth, out);
    return out;
  }

  // Replays a prefix on the first `depth` edges and enumerates the rest.
  template <class Leaf>
  bool run(const std::vector<EdgeId>& prefix, EdgeId depth, Leaf&& leaf) {
    std::size_t next = 0;
    for (EdgeId e = 0; e < depth; ++e) {
      if (next < prefix.size() && prefix[next] == e) {
        state_.add(e);
        current_.push_back(e);
        ++next;
      } else {
        close_endpoints(e);
      }
    }
    return rec(depth, leaf);
  }

 private:
  bool pruned() const { return mode_ == MatchingMode::perfect && critical_ > 1; }

  // Endpoints whose last incident edge was just excluded become critical if free.
  int close_endpoints(EdgeId e) {
    int added = 0;
    const auto& c = h_->edge(e);
    for (FaceId f : {c.lower, c.upper})
      if (last_incident_[f] == e && state_.is_free(f)) ++added;
    critical_ += added;
    return added;
  }

  bool extensible(EdgeId e) const {
    return state_.can_match(e) && !state_.closes_cycle(e, level_restricted_);
  }

  bool accept_leaf() const {
    switch (mode_) {
      case MatchingMode::all:
        return true;
      case MatchingMode::perfect:
        return critical_ == 1;
      case MatchingMode::maximal:
        for (EdgeId e = 0; e < h_->num_edges(); ++e)
          if (extensible(e)) return false;
        return true;
    }
    return false;
  }

  template <class Leaf>
  bool rec(EdgeId i, Leaf& leaf) {
    if (pruned()) return true;
    if (i == h_->num_edges()) {
      if (accept_leaf()) return leaf(current_);
      return true;
    }
    bool go_on = true;
    {
      int added = close_endpoints(i);
      go_on = rec(i + 1, leaf);
      critical_ -= added;
    }
    if (go_on && extensible(i)) {
      state_.add(i);
      current_.push_back(i);
      go_on = rec(i + 1, leaf);
      current_.pop_back();
      state_.remove(i);
    }
    return go_on;
  }

  void prefix_rec(EdgeId i, EdgeId depth, std::vector<std::vector<EdgeId>>& out) {
    if (pruned()) return;
    if (i == depth) {
      out.push_back(current_);
      return;
    }
    {
      int added = close_endpoints(i);
      prefix_rec(i + 1, depth, out);
      critical_ -= added;
    }
    if (extensible(i)) {
      state_.add(i);
      current_.push_back(i);
      prefix_rec(i + 1, depth, out);
      current_.pop_back();
      state_.remove(i);
    }
  }

  const HasseDiagram* h_;
  MatchingMode mode_;
  bool level_restricted_;
  MatchingState state_;
  std::vector<EdgeId> last_incident_;
  std::vector<EdgeId> current_;
  long critical_ = 0;
};

inline EdgeId partition_depth(const HasseDiagram& h, unsigned threads) {
  return threads <= 1 ? 0 : static_cast<EdgeId>(std::min<std::size_t>(h.num_edges(), 10));
}

}  // namespace detail

// True iff `edges` is a matching whose modified Hasse digraph is acyclic.
inline bool is_acyclic_matching(const HasseDiagram& h, std::span<const EdgeId> edges) {
  for (EdgeId e : edges)
    if (e >= h.num_edges()) throw InputError("invalid cover edge id " + std::to_string(e));
  detail::MatchingState state(h);
  for (EdgeId e : edges) {
    if (!state.can_match(e)) return false;
    state.add(e);
  }
  // Acyclicity of the whole digraph by Kahn's algorithm.
  const std::size_t n = h.num_faces();
  std::vector<std::uint32_t> indegree(n, 0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& c = h.edge(e);
    ++indegree[state.matched_edge(c.lower) == e ? c.upper : c.lower];
  }
  std::vector<FaceId> ready;
  for (FaceId f = 0; f < n; ++f)
    if (indegree[f] == 0) ready.push_back(f);
  std::size_t seen = 0;
  while (!ready.empty()) {
    FaceId x = ready.back();
    ready.pop_back();
    ++seen;
    auto release = [&](FaceId y) {
      if (--indegree[y] == 0) ready.push_back(y);
    };
    for (EdgeId d : h.down_edges(x))
      if (state.matched_edge(x) != d) release(h.edge(d).lower);
    EdgeId m = state.matched_edge(x);
    if (m != detail::kNoEdge && h.edge(m).lower == x) release(h.edge(m).upper);
  }
  return seen == n;
}

inline bool is_acyclic_matching(const HasseDiagram& h, const MorseMatching& m) {
  return is_acyclic_matching(h, std::span<const EdgeId>(m.edges));
}

inline CriticalSet critical_faces(const HasseDiagram& h, const MorseMatching& m) {
  std::vector<bool> used(h.num_faces(), false);
  for (EdgeId e : m.edges) {
    used[h.edge(e).lower] = true;
    used[h.edge(e).upper] = true;
  }
  CriticalSet out;
  for (FaceId f = 0; f < h.num_faces(); ++f)
    if (!used[f]) out.faces.push_back(f);
  return out;
}

inline MorseMatching make_matching(std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return MorseMatching{std::move(edges)};
}

// A Morse function inducing exactly the matching `m`: each face gets the
// length of the longest path from it to a sink of the modified digraph, so
// values strictly decrease along every arc.
inline MorseFunction morse_function_from_matching(const HasseDiagram& h, const MorseMatching& m) {
  if (!is_acyclic_matching(h, m)) throw InputError("not an acyclic matching");
  const std::size_t n = h.num_faces();
  std::vector<EdgeId> matched(n, detail::kNoEdge);
  for (EdgeId e : m.edges) matched[h.edge(e).lower] = matched[h.edge(e).upper] = e;

  auto successors = [&](FaceId x, auto&& emit) {
    for (EdgeId d : h.down_edges(x))
      if (matched[x] != d) emit(h.edge(d).lower);
    if (matched[x] != detail::kNoEdge && h.edge(matched[x]).lower == x)
      emit(h.edge(matched[x]).upper);
  };

  std::vector<std::uint32_t> indegree(n, 0);
  for (FaceId x = 0; x < n; ++x) successors(x, [&](FaceId y) { ++indegree[y]; });
  std::vector<FaceId> order, ready;
  for (FaceId f = 0; f < n; ++f)
    if (indegree[f] == 0) ready.push_back(f);
  while (!ready.empty()) {
    FaceId x = ready.back();
    ready.pop_back();
    order.push_back(x);
    successors(x, [&](FaceId y) {
      if (--indegree[y] == 0) ready.push_back(y);
    });
  }
  MorseFunction out{std::vector<std::int64_t>(n, 0)};
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    successors(*it, [&](FaceId y) { out.values[*it] = std::max(out.values[*it], out.values[y] + 1); });
  return out;
}

// Pairs of the Morse function: covers lower ⊂ upper with m(upper) <= m(lower).
// Ties count as inversions.
inline MorseMatching matching_from_morse_function(const HasseDiagram& h, const MorseFunction& m) {
  if (m.values.size() != h.num_faces())
    throw InputError("Morse function must assign a value to each of the " +
                     std::to_string(h.num_faces()) + " faces");
  const auto& c = h.complex();
  std::vector<EdgeId> inverted;
  std::vector<int> up_count(h.num_faces(), 0), down_count(h.num_faces(), 0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& ce = h.edge(e);
    if (m.values[ce.upper] <= m.values[ce.lower]) {
      inverted.push_back(e);
      if (++up_count[ce.lower] > 1)
        throw InputError("face " + c.face(ce.lower).to_string() +
                         " has more than one coface with value not above it");
      if (++down_count[ce.upper] > 1)
        throw InputError("face " + c.face(ce.upper).to_string() +
                         " has more than one face with value not below it");
    }
  }
  for (FaceId f = 0; f < h.num_faces(); ++f)
    if (up_count[f] + down_count[f] > 1)
      throw InputError("face " + c.face(f).to_string() + " is inverted both upward and downward");
  MorseMatching out{std::move(inverted)};
  if (!is_acyclic_matching(h, out))
    throw Error("internal: Morse function induced a cyclic matching");
  return out;
}

// Streams the matchings selected by `mode` in canonical order. The visitor
// takes `const std::vector<EdgeId>&`; if it returns bool, false stops the
// stream. `perfect` selects matchings that leave exactly one face critical,
// i.e. perfect matchings once the empty face is paired with that vertex.
template <class Visitor>
void for_each_matching(const HasseDiagram& h, MatchingMode mode, Visitor&& visit,
                       const EnumerationOptions& opt = {}) {
  std::atomic<std::size_t> produced{0};
  auto budget_check = [&] {
    if (produced.fetch_add(1) + 1 > opt.max_results)
      throw BudgetExceeded("matching enumeration exceeded budget of " +
                               std::to_string(opt.max_results),
                           opt.max_results);
  };
  auto call = [&](const std::vector<EdgeId>& edges) -> bool {
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const std::vector<EdgeId>&>, bool>)
      return visit(edges);
    else {
      visit(edges);
      return true;
    }
  };

  const EdgeId depth = detail::partition_depth(h, opt.threads);
  if (depth == 0) {
    detail::MatchingEnumerator en(h, mode, opt.level_restricted);
    en.run({}, 0, [&](const std::vector<EdgeId>& edges) {
      budget_check();
      return call(edges);
    });
    return;
  }
  auto prefixes = detail::MatchingEnumerator(h, mode, opt.level_restricted).prefixes(depth);
  std::vector<std::vector<std::vector<EdgeId>>> buffers(prefixes.size());
  detail::run_partitioned(prefixes.size(), opt.threads, [&](std::size_t i) {
    detail::MatchingEnumerator en(h, mode, opt.level_restricted);
    en.run(prefixes[i], depth, [&](const std::vector<EdgeId>& edges) {
      budget_check();
      buffers[i].push_back(edges);
      return true;
    });
  });
  for (auto& buffer : buffers)
    for (auto& edges : buffer)
      if (!call(edges)) return;
}

inline std::vector<MorseMatching> enumerate_matchings(const HasseDiagram& h, MatchingMode mode,
                                                      const EnumerationOptions& opt = {}) {
  std::vector<MorseMatching> out;
  for_each_matching(
      h, mode, [&](const std::vector<EdgeId>& edges) { out.push_back(MorseMatching{edges}); }, opt);
  return out;
}

// Number of selected matchings of each cardinality (index = matching size).
inline std::vector<std::uint64_t> count_matchings_by_size(const HasseDiagram& h, MatchingMode mode,
                                                          const EnumerationOptions& opt = {}) {
  const EdgeId depth = detail::partition_depth(h, opt.threads);
  auto prefixes = depth == 0 ? std::vector<std::vector<EdgeId>>{{}}
                             : detail::MatchingEnumerator(h, mode, opt.level_restricted).prefixes(depth);
  std::vector<std::vector<std::uint64_t>> partial(prefixes.size());
  std::atomic<std::size_t> produced{0};
  detail::run_partitioned(prefixes.size(), opt.threads, [&](std::size_t i) {
    detail::MatchingEnumerator en(h, mode, opt.level_restricted);
    auto& counts = partial[i];
    en.run(prefixes[i], depth, [&](const std::vector<EdgeId>& edges) {
      if (produced.fetch_add(1) + 1 > opt.max_results)
        throw BudgetExceeded("matching enumeration exceeded budget of " +
                                 std::to_string(opt.max_results),
                             opt.max_results);
      if (counts.size() <= edges.size()) counts.resize(edges.size() + 1, 0);
      ++counts[edges.size()];
      return true;
    });
  });
  std::vector<std::uint64_t> total;
  for (const auto& counts : partial) {
    if (total.size() < counts.size()) total.resize(counts.size(), 0);
    for (std::size_t s = 0; s < counts.size(); ++s) total[s] += counts[s];
  }
  return total;
}

// Number of perfect Morse matchings: acyclic matchings with a single critical
// face (a vertex), equivalently perfect acyclic matchings of the face poset
// including the empty face. Zero when the number of nonempty faces is even.
inline BigInt count_perfect_morse_matchings(const SimplicialComplex& c,
                                            const EnumerationOptions& opt = {}) {
  if (c.num_faces() % 2 == 0) return 0;
  BigInt total = 0;
  for (auto n : count_matchings_by_size(hasse_diagram(c), MatchingMode::perfect, opt)) total += n;
  return total;
}

namespace detail {

// Elementary collapses, always removing a free pair inside the
// highest-dimensional maximal face available. Returns the collapse pairs as a
// matching if the complex collapses to a single vertex.
inline std::optional<MorseMatching> greedy_collapse(const HasseDiagram& h) {
  const std::size_t n = h.num_faces();
  std::vector<bool> alive(n, true);
  std::vector<int> cofaces(n, 0);
  for (const auto& e : h.edges()) ++cofaces[e.lower];
  std::vector<EdgeId> pairs;
  std::size_t remaining = n;
  bool progress = true;
  while (remaining > 1 && progress) {
    progress = false;
    for (FaceId t = static_cast<FaceId>(n); t-- > 0;) {
      if (!alive[t] || cofaces[t] != 0) continue;
      for (EdgeId d : h.down_edges(t)) {
        FaceId s = h.edge(d).lower;
        if (!alive[s] || cofaces[s] != 1) continue;
        alive[s] = alive[t] = false;
        for (EdgeId dd : h.down_edges(t)) --cofaces[h.edge(dd).lower];
        for (EdgeId dd : h.down_edges(s)) --cofaces[h.edge(dd).lower];
        pairs.push_back(d);
        remaining -= 2;
        progress = true;
        break;
      }
    }
  }
  if (remaining != 1) return std::nullopt;
  return make_matching(std::move(pairs));
}

}  // namespace detail

// A Morse matching with exactly one critical face, if one exists. Such a
// matching certifies that the complex collapses to a point.
inline std::optional<MorseMatching> find_single_critical_matching(const SimplicialComplex& c) {
  if (c.num_faces() % 2 == 0) return std::nullopt;
  // One critical vertex forces Euler characteristic 1.
  if (f_vector(c).euler_characteristic() != 1) return std::nullopt;
  HasseDiagram h = hasse_diagram(c);
  if (auto m = detail::greedy_collapse(h); m && is_acyclic_matching(h, *m)) return m;
  std::optional<MorseMatching> found;
  for_each_matching(h, MatchingMode::perfect, [&](const std::vector<EdgeId>& edges) {
    found = MorseMatching{edges};
    return false;
  });
  return found;
}

inline std::string describe_matching(const HasseDiagram& h, const MorseMatching& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.edges.size(); ++i) s += (i ? "," : "") + std::to_string(m.edges[i]);
  s += "]";
  for (EdgeId e : m.edges) s += " " + h.describe(e);
  return s;
}

}  // namespace dmc
