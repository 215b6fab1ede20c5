#pragma once

// Reduced simplicial homology over the integers.
//
// Boundary matrices are reduced by sparse elimination: unit pivots are taken
// greedily (fewest entries in the column, then in the row), and whatever is
// left without a unit entry is finished by a dense Smith normal form. The
// same sparse driver computes ranks over a word-sized prime field, which
// serves as an independent cross-check of the integer ranks.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dmc/bigint.hpp"
#include "dmc/complex.hpp"
#include "dmc/error.hpp"
#include "dmc/parallel.hpp"

namespace dmc {

// Sparse integer matrix stored by columns; stored entries are nonzero.
class IntegerMatrix {
 public:
  using Index = std::uint32_t;
  using Entry = std::pair<Index, BigInt>;
  using Column = std::vector<Entry>;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static IntegerMatrix from_dense(const std::vector<std::vector<BigInt>>& dense) {
    IntegerMatrix m(dense.size(), dense.empty() ? 0 : dense.front().size());
    for (std::size_t r = 0; r < dense.size(); ++r) {
      if (dense[r].size() != m.cols()) throw InputError("ragged dense matrix");
      for (std::size_t c = 0; c < dense[r].size(); ++c) m.set(r, c, dense[r][c]);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  const Column& column(std::size_t c) const { return columns_.at(c); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& col : columns_) n += col.size();
    return n;
  }

  BigInt at(std::size_t r, std::size_t c) const {
    const auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    return it != col.end() && it->first == r ? it->second : BigInt(0);
  }

  void set(std::size_t r, std::size_t c, const BigInt& value) {
    if (r >= rows_ || c >= cols()) throw InputError("matrix index out of range");
    auto& col = columns_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
      if (value == 0)
        col.erase(it);
      else
        it->second = value;
    } else if (value != 0) {
      col.insert(it, {static_cast<Index>(r), value});
    }
  }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.empty(); });
  }

  std::vector<std::vector<BigInt>> to_dense() const {
    std::vector<std::vector<BigInt>> d(rows_, std::vector<BigInt>(cols(), 0));
    for (std::size_t c = 0; c < cols(); ++c)
      for (const auto& [r, v] : columns_[c]) d[r][c] = v;
    return d;
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("matrix dimensions do not agree");
    IntegerMatrix out(a.rows(), b.cols());
    std::map<Index, BigInt> acc;
    for (std::size_t c = 0; c < b.cols(); ++c) {
      acc.clear();
      for (const auto& [k, bv] : b.columns_[c])
        for (const auto& [r, av] : a.columns_[k]) acc[r] += av * bv;
      for (auto& [r, v] : acc)
        if (v != 0) out.columns_[c].emplace_back(r, std::move(v));
    }
    return out;
  }

  // Row r of the result is row row_perm[r] of this matrix, column c is column col_perm[c].
  IntegerMatrix permuted(const std::vector<std::size_t>& row_perm,
                         const std::vector<std::size_t>& col_perm) const {
    std::vector<Index> row_inverse(rows_);
    for (std::size_t r = 0; r < rows_; ++r) row_inverse[row_perm.at(r)] = static_cast<Index>(r);
    IntegerMatrix out(rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c) {
      auto& col = out.columns_[c];
      for (const auto& [r, v] : columns_.at(col_perm.at(c))) col.emplace_back(row_inverse[r], v);
      std::sort(col.begin(), col.end(),
                [](const Entry& x, const Entry& y) { return x.first < y.first; });
    }
    return out;
  }

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

  // Appends an entry; rows within a column must be pushed in increasing order.
  void push_back(std::size_t c, std::size_t r, BigInt value) {
    columns_[c].emplace_back(static_cast<Index>(r), std::move(value));
  }

 private:
  std::size_t rows_ = 0;
  std::vector<Column> columns_;
};

// Sparse (row, col, value) triples, 0-based, preceded by a "# rows cols" header.
inline void write_triples(std::ostream& out, const IntegerMatrix& m) {
  out << "# " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) out << r << ' ' << c << ' ' << v << '\n';
}

inline IntegerMatrix read_triples(std::istream& in) {
  std::string line;
  std::size_t rows = 0, cols = 0, lineno = 0;
  bool have_header = false;
  std::vector<std::tuple<std::size_t, std::size_t, BigInt>> entries;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    if (!line.empty() && line[0] == '#') {
      std::string hash;
      if (!have_header && (ss >> hash >> rows >> cols)) have_header = true;
      continue;
    }
    std::size_t r = 0, c = 0;
    std::string v;
    if (!(ss >> r >> c >> v)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InputError("malformed triple", lineno);
    }
    entries.emplace_back(r, c, BigInt(v));
  }
  if (!have_header) throw InputError("missing '# rows cols' header");
  IntegerMatrix m(rows, cols);
  for (auto& [r, c, v] : entries) m.set(r, c, v);
  return m;
}

namespace detail {

struct IntegerRing {
  using Value = BigInt;
  static bool is_unit(const Value& v) { return v == 1 || v == -1; }
  // For a unit u, the multiplier clearing `a` against pivot u is a * u.
  Value clear_factor(const Value& a, const Value& unit) const { return a * unit; }
  Value sub_mul(const Value& x, const Value& f, const Value& y) const { return x - f * y; }
  static bool is_zero(const Value& v) { return v == 0; }
};

struct PrimeField {
  using Value = std::uint64_t;
  std::uint64_t p;
  static bool is_unit(const Value& v) { return v != 0; }
  Value mul(Value a, Value b) const {
    return static_cast<Value>((static_cast<unsigned __int128>(a) * b) % p);
  }
  Value inverse(Value a) const {
    Value result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1U) result = mul(result, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return result;
  }
  Value clear_factor(const Value& a, const Value& pivot) const { return mul(a, inverse(pivot)); }
  Value sub_mul(const Value& x, const Value& f, const Value& y) const {
    Value t = mul(f, y);
    return x >= t ? x - t : x + p - t;
  }
  static bool is_zero(const Value& v) { return v == 0; }
};

// Sparse elimination with unit pivots. After run(), `unit_pivots` counts the
// eliminated pivots (each an invariant factor 1) and `residual()` returns the
// columns that never offered a unit pivot, restricted to surviving rows.
template <class Ring>
class SparseEliminator {
 public:
  using Value = typename Ring::Value;
  using Entry = std::pair<std::uint32_t, Value>;
  using Column = std::vector<Entry>;

  SparseEliminator(std::size_t rows, std::vector<Column> cols, Ring ring)
      : ring_(std::move(ring)), cols_(std::move(cols)), rows_(rows) {
    row_cols_.assign(rows, {});
    for (std::uint32_t c = 0; c < cols_.size(); ++c) {
      for (const auto& e : cols_[c]) row_cols_[e.first].insert(c);
      active_.insert({cols_[c].size(), c});
    }
  }

  void run() {
    while (!active_.empty()) {
      auto [nnz, c] = *active_.begin();
      active_.erase(active_.begin());
      if (cols_[c].empty()) continue;
      std::size_t best = cols_[c].size();
      for (std::size_t k = 0; k < cols_[c].size(); ++k) {
        const auto& [r, v] = cols_[c][k];
        if (Ring::is_unit(v) &&
            (best == cols_[c].size() || row_cols_[r].size() < row_cols_[cols_[c][best].first].size()))
          best = k;
      }
      if (best == cols_[c].size()) {
        stuck_.insert(c);
        continue;
      }
      pivot(c, cols_[c][best].first, cols_[c][best].second);
    }
  }

  std::size_t unit_pivots() const noexcept { return unit_pivots_; }

  // Remaining columns without unit entries, densified over their rows.
  std::vector<std::vector<Value>> residual() const {
    std::set<std::uint32_t> rows;
    std::vector<std::uint32_t> cols;
    for (auto c : stuck_)
      if (!cols_[c].empty()) {
        cols.push_back(c);
        for (const auto& e : cols_[c]) rows.insert(e.first);
      }
    std::map<std::uint32_t, std::size_t> row_pos;
    for (auto r : rows) row_pos.emplace(r, row_pos.size());
    std::vector<std::vector<Value>> dense(rows.size(), std::vector<Value>(cols.size(), Value(0)));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : cols_[cols[j]]) dense[row_pos[r]][j] = v;
    return dense;
  }

 private:
  void touch(std::uint32_t c) {
    if (stuck_.erase(c) == 0) active_.erase({old_size_, c});
    active_.insert({cols_[c].size(), c});
  }

  void pivot(std::uint32_t c, std::uint32_t r, const Value& unit) {
    ++unit_pivots_;
    std::vector<std::uint32_t> others(row_cols_[r].begin(), row_cols_[r].end());
    for (auto c2 : others) {
      if (c2 == c) continue;
      auto& col = cols_[c2];
      auto it = std::lower_bound(col.begin(), col.end(), r,
                                 [](const Entry& e, std::uint32_t row) { return e.first < row; });
      const Value factor = ring_.clear_factor(it->second, unit);
      old_size_ = col.size();
      Column merged;
      merged.reserve(col.size() + cols_[c].size());
      auto a = col.begin();
      auto b = cols_[c].begin();
      while (a != col.end() || b != cols_[c].end()) {
        if (b == cols_[c].end() || (a != col.end() && a->first < b->first)) {
          merged.push_back(std::move(*a++));
        } else if (a == col.end() || b->first < a->first) {
          Value v = ring_.sub_mul(Value(0), factor, b->second);
          row_cols_[b->first].insert(c2);
          merged.emplace_back(b->first, std::move(v));
          ++b;
        } else {
          Value v = ring_.sub_mul(a->second, factor, b->second);
          if (Ring::is_zero(v))
            row_cols_[a->first].erase(c2);
          else
            merged.emplace_back(a->first, std::move(v));
          ++a;
          ++b;
        }
      }
      col = std::move(merged);
      touch(c2);
    }
    for (const auto& e : cols_[c]) row_cols_[e.first].erase(c);
    cols_[c].clear();
  }

  Ring ring_;
  std::vector<Column> cols_;
  std::size_t rows_;
  std::vector<std::set<std::uint32_t>> row_cols_;
  std::set<std::pair<std::size_t, std::uint32_t>> active_;
  std::set<std::uint32_t> stuck_;
  std::size_t unit_pivots_ = 0;
  std::size_t old_size_ = 0;
};

inline BigInt abs_value(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// Nonzero diagonal of the Smith normal form of a small dense matrix.
inline std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> m) {
  std::vector<BigInt> diag;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (!found || abs_value(m[i][j]) < abs_value(m[pi][pj]))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    for (;;) {
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        BigInt q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        BigInt q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (clean) {
        // Enforce divisibility of the trailing block by the pivot.
        std::size_t bad_row = rows;
        for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (m[i][j] % m[t][t] != 0) {
              bad_row = i;
              break;
            }
        if (bad_row == rows) break;
        for (std::size_t j = t; j < cols; ++j) m[t][j] += m[bad_row][j];
      }
      // Re-pick the smallest nonzero in row t / column t.
      pi = t;
      pj = t;
      for (std::size_t i = t; i < rows; ++i)
        if (m[i][t] != 0 && abs_value(m[i][t]) < abs_value(m[pi][pj])) {
          pi = i;
          pj = t;
        }
      for (std::size_t j = t; j < cols; ++j)
        if (m[t][j] != 0 && abs_value(m[t][j]) < abs_value(m[pi][pj])) {
          pi = t;
          pj = j;
        }
    }
    diag.push_back(abs_value(m[t][t]));
  }
  return diag;
}

// Sorts invariant factors into a divisibility chain.
inline void normalize_invariant_factors(std::vector<BigInt>& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      BigInt g = boost::multiprecision::gcd(d[i], d[j]);
      BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
}

inline std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> integer_columns(
    const IntegerMatrix& a) {
  std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> cols(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) cols[c] = a.column(c);
  return cols;
}

}  // namespace detail

// Nonzero invariant factors d_1 | d_2 | ... of A.
inline std::vector<BigInt> smith_invariant_factors(const IntegerMatrix& a) {
  detail::SparseEliminator<detail::IntegerRing> el(a.rows(), detail::integer_columns(a), {});
  el.run();
  std::vector<BigInt> factors(el.unit_pivots(), BigInt(1));
  for (auto& d : detail::dense_smith(el.residual())) factors.push_back(std::move(d));
  detail::normalize_invariant_factors(factors);
  return factors;
}

inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::size_t rank_mod_p(const IntegerMatrix& a, std::uint64_t p = kDefaultPrime) {
  using Field = detail::PrimeField;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> cols(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (const auto& [r, v] : a.column(c)) {
      BigInt m = v % p;
      if (m < 0) m += p;
      if (m != 0) cols[c].emplace_back(r, static_cast<std::uint64_t>(m));
    }
  detail::SparseEliminator<Field> el(a.rows(), std::move(cols), Field{p});
  el.run();
  return el.unit_pivots();
}

// boundary[0] is the augmentation C_0 -> Z; boundary[k] maps k-chains to (k-1)-chains.
struct ChainComplex {
  std::vector<IntegerMatrix> boundary;
};

// Simplicial boundary with the alternating sign convention: dropping the
// i-th vertex (in increasing order) contributes (-1)^i. Checks d∘d = 0.
inline ChainComplex chain_complex(const SimplicialComplex& c) {
  if (c.empty()) throw InputError("chain complex of an empty complex");
  ChainComplex out;
  IntegerMatrix aug(1, c.count(0));
  for (std::size_t j = 0; j < c.count(0); ++j) aug.push_back(j, 0, 1);
  out.boundary.push_back(std::move(aug));
  for (int k = 1; k <= c.dimension(); ++k) {
    auto [first, last] = c.face_range(k);
    auto [lower_first, lower_last] = c.face_range(k - 1);
    IntegerMatrix d(lower_last - lower_first, last - first);
    for (FaceId f = first; f < last; ++f) {
      const Simplex& s = c.face(f);
      std::vector<std::pair<std::size_t, int>> entries;
      for (std::size_t i = 0; i < s.size(); ++i)
        entries.emplace_back(*c.find(s.facet_without(i)) - lower_first, i % 2 == 0 ? 1 : -1);
      std::sort(entries.begin(), entries.end());
      for (auto [r, sign] : entries) d.push_back(f - first, r, sign);
    }
    out.boundary.push_back(std::move(d));
  }
  for (std::size_t k = 1; k < out.boundary.size(); ++k)
    if (!(out.boundary[k - 1] * out.boundary[k]).is_zero())
      throw Error("internal: boundary of boundary is nonzero in dimension " + std::to_string(k));
  return out;
}

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next

  bool trivial() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;

  std::string to_string() const {
    if (trivial()) return "0";
    std::string s;
    if (betti == 1) s = "Z";
    if (betti > 1) s = "Z^" + std::to_string(betti);
    for (const auto& t : torsion) s += (s.empty() ? "" : "+") + ("Z/" + t.str());
    return s;
  }
};

struct HomologyGroups {
  std::vector<HomologyGroup> groups;  // index = dimension

  const HomologyGroup& operator[](std::size_t k) const { return groups.at(k); }

  HomologyGroup at(int k) const {
    return k >= 0 && k < static_cast<int>(groups.size()) ? groups[static_cast<std::size_t>(k)]
                                                          : HomologyGroup{};
  }

  bool acyclic() const {
    return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.trivial(); });
  }

  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> b;
    for (const auto& g : groups) b.push_back(g.betti);
    return b;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < groups.size(); ++k) s += (k ? "," : "") + groups[k].to_string();
    return s + ")";
  }

  friend bool operator==(const HomologyGroups&, const HomologyGroups&) = default;
};

// Reduced homology of a wedge of spheres with the given dimensions, padded to `dim`.
inline HomologyGroups wedge_of_spheres(const std::vector<int>& sphere_dims, int dim) {
  HomologyGroups h;
  h.groups.resize(static_cast<std::size_t>(dim) + 1);
  for (int d : sphere_dims) ++h.groups.at(static_cast<std::size_t>(d)).betti;
  return h;
}

struct HomologyOptions {
  unsigned threads = 1;
  // Recompute every rank over a prime field and require agreement.
  bool cross_check_prime = true;
};

inline HomologyGroups homology_from_chain_complex(const ChainComplex& cc,
                                                  const HomologyOptions& opt = {}) {
  const std::size_t n = cc.boundary.size();
  std::vector<std::vector<BigInt>> factors(n);
  detail::run_partitioned(n, opt.threads, [&](std::size_t k) {
    factors[k] = smith_invariant_factors(cc.boundary[k]);
    if (opt.cross_check_prime) {
      std::size_t r = rank_mod_p(cc.boundary[k]);
      bool p_divides = std::any_of(factors[k].begin(), factors[k].end(),
                                   [](const BigInt& d) { return d % kDefaultPrime == 0; });
      if (r != factors[k].size() && !p_divides)
        throw Error("internal: integer and prime-field ranks disagree in dimension " +
                    std::to_string(k));
    }
  });
  HomologyGroups h;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t chains = cc.boundary[k].cols();
    const std::size_t rank_k = factors[k].size();
    const std::size_t rank_next = k + 1 < n ? factors[k + 1].size() : 0;
    HomologyGroup g;
    g.betti = chains - rank_k - rank_next;
    if (k + 1 < n)
      for (const auto& d : factors[k + 1])
        if (d > 1) g.torsion.push_back(d);
    h.groups.push_back(std::move(g));
  }
  return h;
}

inline HomologyGroups reduced_homology(const SimplicialComplex& c, const HomologyOptions& opt = {}) {
  return homology_from_chain_complex(chain_complex(c), opt);
}

// Order of the finite group H_k; 1 for dimensions outside the complex.
inline BigInt torsion_order(const HomologyGroups& h, int k) {
  HomologyGroup g = h.at(k);
  if (g.betti != 0) throw InputError("H_" + std::to_string(k) + " is infinite");
  BigInt order = 1;
  for (const auto& t : g.torsion) order *= t;
  return order;
}

}  // namespace dmc
