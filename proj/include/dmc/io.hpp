#pragma once

// Facet-list text format: one facet per line as whitespace-separated
// nonnegative integers. '#' starts a comment; blank lines are ignored.
// Graph edge lists are the same format restricted to pairs.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dmc/complex.hpp"

namespace dmc {

struct FacetList {
  std::vector<std::vector<std::int64_t>> facets;
  std::vector<std::size_t> lines;  // 1-based source line of each facet
};

inline FacetList parse_facet_list(std::istream& in) {
  FacetList out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    std::vector<std::int64_t> facet;
    while (tokens >> tok) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw InputError("not an integer: '" + tok + "'", lineno);
      if (v < 0) throw InputError("negative vertex id " + tok, lineno);
      facet.push_back(v);
    }
    if (facet.empty()) continue;
    auto sorted = facet;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
      throw InputError("duplicate vertex " + std::to_string(*dup) + " in facet", lineno);
    out.facets.push_back(std::move(facet));
    out.lines.push_back(lineno);
  }
  return out;
}

// A complex read from text, with sparse input ids remapped to 0..n-1.
struct IngestedComplex {
  SimplicialComplex complex;
  std::vector<std::int64_t> original_ids;  // dense id -> id in the file
  bool remapped = false;
};

inline IngestedComplex ingest_facet_list(std::istream& in) {
  FacetList list = parse_facet_list(in);
  if (list.facets.empty()) throw InputError("empty complex");
  std::map<std::int64_t, Vertex> dense;
  for (const auto& f : list.facets)
    for (auto v : f) dense.emplace(v, 0);
  IngestedComplex out;
  Vertex next = 0;
  for (auto& [orig, id] : dense) {
    id = next++;
    out.original_ids.push_back(orig);
  }
  for (std::size_t i = 0; i < out.original_ids.size(); ++i)
    if (out.original_ids[i] != static_cast<std::int64_t>(i)) out.remapped = true;
  std::vector<std::vector<Vertex>> facets;
  for (const auto& f : list.facets) {
    std::vector<Vertex> g;
    for (auto v : f) g.push_back(dense.at(v));
    facets.push_back(std::move(g));
  }
  out.complex = SimplicialComplex::from_facets(facets);
  return out;
}

inline IngestedComplex read_facet_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return ingest_facet_list(in);
}

inline void write_facet_list(std::ostream& out, const SimplicialComplex& c,
                             const std::string& comment = {}) {
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string l;
    while (std::getline(lines, l)) out << "# " << l << '\n';
  }
  for (FaceId f : c.facets()) {
    const auto v = c.face(f).vertices();
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  }
}

}  // namespace dmc
