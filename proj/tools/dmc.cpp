// dmc: build complexes from facet lists, construct Morse complexes, compute
// homology, and run the verification suites.
//
// Exit codes: 0 success, 1 a check failed, 2 input error, 3 budget exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmc/dmc.hpp"
#include "dmc/verify.hpp"

namespace {

using nlohmann::ordered_json;

enum Exit { kOk = 0, kCheckFailed = 1, kInputError = 2, kBudget = 3 };

struct Global {
  std::string format = "text";
  unsigned threads = 1;
  std::size_t max_faces = 1'000'000;
};

struct Output {
  ordered_json doc;
  std::ostringstream text;
  double started = now();

  static double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
  }
};

ordered_json fvector_json(const dmc::FVector& f) {
  ordered_json a = ordered_json::array();
  for (const auto& c : f.counts) a.push_back(c.str());
  return a;
}

ordered_json homology_json(const dmc::HomologyGroups& h) {
  ordered_json a = ordered_json::array();
  for (std::size_t k = 0; k < h.groups.size(); ++k) {
    ordered_json t = ordered_json::array();
    for (const auto& d : h.groups[k].torsion) t.push_back(d.str());
    a.push_back({{"dim", static_cast<long>(k)},
                 {"betti", h.groups[k].betti},
                 {"torsion", t},
                 {"group", h.groups[k].to_string()}});
  }
  return a;
}

std::string purity(const dmc::SimplicialComplex& c) { return c.is_pure() ? "pure" : "not pure"; }

dmc::SimplicialComplex load(const std::string& path, Output& out) {
  auto in = dmc::read_facet_file(path);
  out.doc["params"]["input"] = path;
  if (in.remapped) {
    ordered_json map = ordered_json::array();
    out.text << "vertex ids remapped:";
    for (std::size_t i = 0; i < in.original_ids.size(); ++i) {
      out.text << ' ' << in.original_ids[i] << "->" << i;
      map.push_back(in.original_ids[i]);
    }
    out.text << '\n';
    out.doc["params"]["vertex_map"] = map;
  }
  return in.complex;
}

int cmd_build(const std::string& path, Output& out) {
  auto c = load(path, out);
  auto f = dmc::f_vector(c);
  out.text << "f = " << f.to_string() << ", dim " << c.dimension() << ", " << purity(c) << ", "
           << c.facets().size() << " facets\n";
  out.doc["f_vector"] = fvector_json(f);
  out.doc["counts"] = {{"dimension", c.dimension()},
                       {"pure", c.is_pure()},
                       {"facets", c.facets().size()},
                       {"vertices", c.count(0)}};
  return kOk;
}

int cmd_dmc(const std::string& path, bool pure, const std::string& export_path, const Global& g,
            Output& out) {
  auto base = load(path, out);
  dmc::MorseComplexOptions opt;
  opt.max_faces = g.max_faces;
  opt.threads = g.threads;
  auto m = pure ? dmc::pure_morse_complex(base, opt) : dmc::discrete_morse_complex(base, opt);
  auto f = dmc::f_vector(m.complex);
  out.text << (pure ? "pure Morse complex" : "Morse complex") << ": f = " << f.to_string()
           << ", dim " << m.complex.dimension() << ", " << purity(m.complex) << ", "
           << m.complex.facets().size() << " facets\n";
  out.doc["params"]["pure"] = pure;
  out.doc["f_vector"] = fvector_json(f);
  out.doc["counts"] = {{"dimension", m.complex.dimension()},
                       {"pure", m.complex.is_pure()},
                       {"facets", m.complex.facets().size()},
                       {"cover_edges", m.hasse.num_edges()}};
  if (!export_path.empty()) {
    std::ofstream file(export_path);
    if (!file) throw dmc::InputError("cannot write " + export_path);
    std::ostringstream legend;
    legend << (pure ? "pure Morse complex" : "Morse complex") << " f = " << f.to_string() << '\n'
           << "vertex i is cover edge i of the base Hasse diagram:";
    for (dmc::EdgeId e = 0; e < m.hasse.num_edges(); ++e)
      legend << "\n  " << e << " " << m.hasse.describe(e);
    dmc::write_facet_list(file, m.complex, legend.str());
    out.text << "exported " << m.complex.facets().size() << " facets to " << export_path << '\n';
    out.doc["params"]["export"] = export_path;
  }
  return kOk;
}

int cmd_homology(const std::string& path, bool reduced, const Global& g, Output& out) {
  auto c = load(path, out);
  dmc::HomologyOptions opt;
  opt.threads = g.threads;
  auto h = dmc::reduced_homology(c, opt);
  if (!reduced && !h.groups.empty()) ++h.groups[0].betti;
  out.doc["params"]["reduced"] = reduced;
  out.doc["homology"] = homology_json(h);
  out.text << (reduced ? "reduced " : "") << "homology over Z\n";
  for (std::size_t k = 0; k < h.groups.size(); ++k)
    out.text << "  H_" << k << " = " << h.groups[k].to_string() << '\n';
  return kOk;
}

int cmd_boundary(const std::string& path, int dim, const std::string& target, Output& out) {
  auto c = load(path, out);
  auto cc = dmc::chain_complex(c);
  if (dim < 0 || static_cast<std::size_t>(dim) >= cc.boundary.size())
    throw dmc::InputError("no boundary map in dimension " + std::to_string(dim));
  const auto& d = cc.boundary[static_cast<std::size_t>(dim)];
  if (target.empty() || target == "-") {
    dmc::write_triples(out.text, d);
  } else {
    std::ofstream file(target);
    if (!file) throw dmc::InputError("cannot write " + target);
    dmc::write_triples(file, d);
    out.text << "wrote " << d.rows() << "x" << d.cols() << " boundary matrix (" << d.nonzeros()
             << " nonzeros) to " << target << '\n';
  }
  out.doc["params"]["dim"] = dim;
  out.doc["counts"] = {{"rows", d.rows()}, {"cols", d.cols()}, {"nonzeros", d.nonzeros()}};
  return kOk;
}

int cmd_verify(const std::string& suite, const Global& g, Output& out) {
  dmc::VerifyOptions opt;
  opt.threads = g.threads;
  auto checks = dmc::run_suite(suite, opt);
  out.doc["params"]["suite"] = suite;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    out.text << c.name << ": " << (c.passed ? "PASS" : "FAIL") << "  [" << c.detail << "]\n";
    out.doc["checks"].push_back({{"name", c.name},
                                 {"claim", c.claim},
                                 {"passed", c.passed},
                                 {"detail", c.detail},
                                 {"seconds", c.seconds}});
    failed += c.passed ? 0 : 1;
  }
  out.text << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return failed == 0 ? kOk : kCheckFailed;
}

int cmd_bounds(int n_max, int exact_max, const Global& g, Output& out) {
  if (n_max < 1) throw dmc::InputError("--n-max must be at least 1");
  dmc::BoundOptions opt;
  opt.threads = g.threads;
  opt.max_exact_n = exact_max;
  out.doc["params"]["n_max"] = n_max;
  out.doc["params"]["exact_max"] = exact_max;
  out.doc["bounds"] = ordered_json::array();
  out.text << "n  product_lower  r(n+1)  f(n)  kalai_upper  cgp_upper\n";
  for (int n = 1; n <= n_max; ++n) {
    auto b = dmc::bounds_report(n, opt);
    const std::string f = b.computed_f ? b.computed_f->str() : "-";
    const std::string cgp = "(" + b.upper_cgp.base.str() + ")^(" + b.upper_cgp.exponent.str() +
                            ") = exp(" + b.upper_cgp.log_value.str(30) + ")";
    out.text << n << "  " << b.lower_product << "  " << b.r_exact << "  " << f << "  "
             << b.upper_kalai << "  " << cgp << '\n';
    ordered_json row{{"n", n},
                     {"lower_product", b.lower_product.str()},
                     {"lower_r", b.r_exact.str()},
                     {"upper_kalai", b.upper_kalai.str()},
                     {"upper_cgp",
                      {{"base", b.upper_cgp.base.str()},
                       {"exponent", b.upper_cgp.exponent.str()},
                       {"log", b.upper_cgp.log_value.str(30)}}}};
    if (b.computed_f) row["computed_f"] = b.computed_f->str();
    out.doc["bounds"].push_back(row);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Morse complexes: construction, homology and enumeration"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--threads", g.threads, "Worker count; results do not depend on it")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--max-faces", g.max_faces, "Face budget for Morse complexes");

  std::string input, export_path, suite, target;
  bool pure = false, reduced = true;
  int dim = 1, n_max = 8, exact_max = 4;

  auto* build = app.add_subcommand("build", "Summarize a complex given as a facet list");
  build->add_option("input", input, "Facet-list file")->required();

  auto* dmc_cmd = app.add_subcommand("dmc", "Construct the discrete Morse complex");
  dmc_cmd->add_option("input", input, "Facet-list file")->required();
  dmc_cmd->add_flag("--pure", pure, "Pure part generated by maximum matchings");
  dmc_cmd->add_option("--export", export_path, "Write the Morse complex as a facet list");

  auto* hom = app.add_subcommand("homology", "Integer homology of a complex");
  hom->add_option("input", input, "Facet-list file")->required();
  hom->add_flag("--reduced,!--unreduced", reduced, "Reduced homology (default)");

  auto* bnd = app.add_subcommand("boundary", "Export a boundary matrix as (row col value) triples");
  bnd->add_option("input", input, "Facet-list file")->required();
  bnd->add_option("--dim", dim, "Boundary map from dim-chains; 0 is the augmentation");
  bnd->add_option("-o,--output", target, "Output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "circle | simplex | graph | kalai | bounds | all")
      ->required()
      ->check(CLI::IsMember({"circle", "simplex", "graph", "kalai", "bounds", "all"}));

  auto* bounds = app.add_subcommand("bounds", "Table of upper and lower bounds on f(n)");
  bounds->add_option("--n-max", n_max, "Largest n");
  bounds->add_option("--exact-max", exact_max, "Compute f(n) exactly up to this n (at most 4)")
      ->check(CLI::Range(0, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  Output out;
  auto* sub = app.get_subcommands().front();
  out.doc["command"] = sub->get_name();
  out.doc["params"] = {{"threads", g.threads}, {"max_faces", g.max_faces}};
  out.doc["checks"] = ordered_json::array();
  int code = kOk;
  try {
    if (sub == build) code = cmd_build(input, out);
    else if (sub == dmc_cmd) code = cmd_dmc(input, pure, export_path, g, out);
    else if (sub == hom) code = cmd_homology(input, reduced, g, out);
    else if (sub == bnd) code = cmd_boundary(input, dim, target, out);
    else if (sub == ver) code = cmd_verify(suite, g, out);
    else code = cmd_bounds(n_max, exact_max, g, out);
  } catch (const dmc::BudgetExceeded& e) {
    out.doc["error"] = {{"kind", "budget"}, {"message", e.what()}};
    std::cerr << "budget exceeded: " << e.what() << '\n';
    code = kBudget;
  } catch (const dmc::InputError& e) {
    out.doc["error"] = {{"kind", "input"}, {"message", e.what()}};
    std::cerr << "input error: " << e.what() << '\n';
    code = kInputError;
  } catch (const dmc::Error& e) {
    out.doc["error"] = {{"kind", "internal"}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << '\n';
    code = kCheckFailed;
  }
  out.doc["seconds"] = Output::now() - out.started;
  if (g.format == "structured")
    std::cout << out.doc.dump(2) << '\n';
  else
    std::cout << out.text.str();
  return code;
}
