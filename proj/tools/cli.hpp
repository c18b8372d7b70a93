#ifndef GHOM_TOOLS_CLI_HPP
#define GHOM_TOOLS_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ghom/ghom.hpp"

namespace ghom::cli {

using nlohmann::json;

struct InputError : std::runtime_error {
  InputError(std::string kind, const std::string& msg) : std::runtime_error(msg), kind(std::move(kind)) {}
  std::string kind;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("unreadable_file", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A graph file, or with --matrix a JSON array of adjacency rows.
inline Graph load_graph(const std::string& path, bool as_matrix) {
  const std::string text = read_file(path);
  if (!as_matrix) return parse_graph(text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorKind::MalformedInput, "matrix file must hold an array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(ErrorKind::MalformedInput, "matrix rows must be arrays");
    std::vector<Integer> row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw Error(ErrorKind::MalformedInput, "matrix entries must be integers");
      row.emplace_back(static_cast<long>(x.get<std::int64_t>()));
    }
    rows.push_back(std::move(row));
  }
  return graph_from_adjacency(IntMatrix::from_rows(rows.empty() ? 0 : rows[0].size(), rows));
}

inline json error_object(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

inline json base_report(const std::string& command, const Graph& g,
                        const std::string& special_policy = "lexicographic_min") {
  return {{"command", command}, {"vertex_order", g.vertices()}, {"conventions", report::conventions(special_policy)}};
}

inline json cmd_h0(const Graph& g) {
  const auto p = h0_presentation(g);
  json j = base_report("h0", g);
  j["group"] = report::group(cokernel(p.relations));
  json rv = json::array();
  for (auto v : p.relation_vertices) rv.push_back(g.vertex_id(v));
  j["relation_vertices"] = rv;
  j["relation_matrix"] = report::matrix(p.relations);
  return j;
}

inline json cmd_h0gr(const Graph& g, const std::vector<std::string>& eq, const std::optional<std::string>& positive,
                     std::size_t cap) {
  const GradedModule m(g);
  json j = base_report("h0gr", g);
  json rel = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (m.regular(v)) rel.push_back(to_string(g, m.relation(v, 0)) + " = 0");
  j["module"] = {{"relations_at_stage_0", rel}, {"stabilization_bound", m.stabilization_bound()}};
  if (!eq.empty()) {
    const auto u = parse_staged(g, eq.at(0));
    const auto v = parse_staged(g, eq.at(1));
    const auto d = u - v;
    j["left"] = report::staged(g, u);
    j["right"] = report::staged(g, v);
    j["equals"] = equals(m, u, v);
    j["difference_pushed"] =
        report::staged(g, d.is_zero() ? d : pushdown(m, d, d.min_stage() - m.stabilization_bound()));
  }
  if (positive) {
    const auto v = parse_staged(g, *positive);
    const Verdict verdict = is_positive(m, v, cap);
    j["element"] = report::staged(g, v);
    j["cap"] = cap;
    j["verdict"] = to_string(verdict);
    if (verdict == Verdict::Positive || verdict == Verdict::Negative) {
      const auto w = verdict == Verdict::Positive ? v : -v;
      j["witness"] = report::staged(g, pushdown(m, w, w.min_stage() - static_cast<Stage>(cap)));
    }
  }
  return j;
}

inline json cmd_cover(const Graph& g, Stage lo, Stage hi) {
  const auto c = covering_graph(g, lo, hi);
  json j = base_report("cover", g);
  j["window"] = {lo, hi};
  json vs = json::array();
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    vs.push_back({{"id", c.graph.vertex_id(i)},
                  {"vertex", g.vertex_id(c.vertices[i].vertex)},
                  {"stage", c.vertices[i].stage}});
  json es = json::array();
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const Edge& e = c.graph.edge(i);
    es.push_back({{"id", e.id},
                  {"edge", g.edge(c.edges[i].edge).id},
                  {"stage", c.edges[i].stage},
                  {"src", c.graph.vertex_id(e.src)},
                  {"dst", c.graph.vertex_id(e.dst)},
                  {"weight", e.weight}});
  }
  j["vertices"] = vs;
  j["edges"] = es;
  return j;
}

inline json cmd_paths(const Graph& g, std::size_t max_len) {
  json j = base_report("paths", g);
  json ps = json::array();
  for (const auto& p : enumerate_paths(g, max_len)) ps.push_back(report::path(g, p));
  j["max_len"] = max_len;
  j["count"] = ps.size();
  j["paths"] = ps;
  return j;
}

inline json cmd_nf(const Graph& g, const std::string& expr, const std::vector<std::string>& special) {
  SpecialEdgeChoice sp = SpecialEdgeChoice::lexicographic(g);
  for (const auto& s : special) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("usage", "--special expects v=e, got '" + s + "'");
    const std::size_t v = g.vertex(s.substr(0, eq));
    const std::size_t e = g.edge_by_id(s.substr(eq + 1));
    if (g.edge(e).src != v)
      throw Error(ErrorKind::Precondition, "edge '" + g.edge(e).id + "' does not start at '" + g.vertex_id(v) + "'");
    sp.set(g, e);
  }
  const auto x = parse_diagonal(g, expr);
  const auto nf = normal_form(g, x, sp);
  json j = base_report("nf", g, special.empty() ? "lexicographic_min" : "lexicographic_min_with_overrides");
  json se = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (auto e = sp.at(v)) se[g.vertex_id(v)] = g.edge(*e).id;
  j["special_edges"] = se;
  j["input"] = report::diagonal(g, x);
  j["normal_form"] = report::diagonal(g, nf);
  j["h0_vector"] = report::vector(to_h0_class(g, nf));
  return j;
}

inline json cmd_oracle(const Graph& g, std::size_t max_len) {
  const auto pres = h0_oracle_presentation(g, max_len);
  const auto oracle = cokernel(pres);
  const auto direct = h0(g);
  json j = base_report("oracle", g);
  j["max_len"] = max_len;
  j["generators"] = pres.rows();
  j["relations"] = pres.cols();
  j["oracle_group"] = report::group(oracle);
  j["group"] = report::group(direct);
  j["agree"] = oracle == direct;
  return j;
}

inline json cmd_exactness(const Graph& g) {
  const auto r = verify_exact_sequence(g);
  json j = base_report("exactness", g);
  j["sigma_lambda_zero"] = r.sigma_lambda_zero;
  j["coker_lambda_equals_h0"] = r.coker_lambda_equals_h0;
  j["coker_lambda"] = report::group(r.coker_lambda);
  j["h0"] = report::group(r.h0_group);
  j["samples"] = r.samples;
  return j;
}

inline json cmd_triple(const Graph& g) {
  const DimensionTriple t(g);
  json j = base_report("triple", g);
  j["matrix_transpose"] = report::matrix(t.matrix());
  j["eventual_kernel"] = report::matrix(t.eventual_kernel_basis());
  j["dimension_rank"] = g.vertex_count() - t.eventual_kernel_basis().rows();
  j["nonzero_spectrum"] = report::polynomial(nonzero_spectrum_fingerprint(adjacency(g)));
  j["h0"] = report::group(h0(g));
  j["automorphism"] = "multiplication by A^t";
  j["equivalence"] = "(x, i) ~ (A^t x, i + 1); stage n <-> index -n";
  return j;
}

inline json cmd_compare(const Graph& g1, const Graph& g2, const Budget& budget) {
  json j = report::invariant_report(eventual_conjugacy_verdict(g1, g2, budget));
  j["command"] = "compare";
  j["conventions"] = report::conventions();
  return j;
}

/// Parses argv, runs one subcommand and writes a JSON document to `out`.
/// Exit 0 on success, 2 on any input error (the document is then an error
/// object).
inline int run(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Zeroth homology of graph groupoids and related invariants", "ghom"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_matrix = false;
  app.add_flag("--matrix", as_matrix, "Read graph files as JSON adjacency matrices");

  std::string file, file2;
  std::vector<std::string> eq;
  std::optional<std::string> positive;
  std::size_t cap = 10;
  Stage lo = 0, hi = 0;
  std::size_t max_len = 0;
  std::string expr;
  std::vector<std::string> special;
  std::size_t max_lag = 2;
  long entry_bound = 2;

  auto* c_h0 = app.add_subcommand("h0", "Non-graded zeroth homology");
  c_h0->add_option("FILE", file)->required();
  auto* c_h0gr = app.add_subcommand("h0gr", "Graded zeroth homology as a Laurent module");
  c_h0gr->add_option("FILE", file)->required();
  auto* o_eq = c_h0gr->add_option("--equals", eq, "Decide equality of two elements")->expected(2);
  auto* o_pos = c_h0gr->add_option("--positive", positive, "Positive-cone verdict for an element");
  c_h0gr->add_option("--cap", cap, "Pushdown depth for positivity");
  o_eq->excludes(o_pos);
  auto* c_cover = app.add_subcommand("cover", "Window of the covering graph");
  c_cover->add_option("FILE", file)->required();
  c_cover->add_option("--min", lo)->required();
  c_cover->add_option("--max", hi)->required();
  auto* c_paths = app.add_subcommand("paths", "Enumerate paths");
  c_paths->add_option("FILE", file)->required();
  c_paths->add_option("--max-len", max_len)->required();
  auto* c_nf = app.add_subcommand("nf", "Normal form of a diagonal element");
  c_nf->add_option("FILE", file)->required();
  c_nf->add_option("--expr", expr)->required();
  c_nf->add_option("--special", special, "Special edge override v=e")->take_all();
  auto* c_oracle = app.add_subcommand("oracle", "Brute-force H0 from truncated diagonal presentations");
  c_oracle->add_option("FILE", file)->required();
  c_oracle->add_option("--max-len", max_len)->required();
  auto* c_exact = app.add_subcommand("exactness", "Check the (x-1)/sum exact sequence");
  c_exact->add_option("FILE", file)->required();
  auto* c_compare = app.add_subcommand("compare", "Eventual-conjugacy verdict for two graphs");
  c_compare->add_option("FILE1", file)->required();
  c_compare->add_option("FILE2", file2)->required();
  c_compare->add_option("--max-lag", max_lag)->required();
  c_compare->add_option("--entry-bound", entry_bound)->required();
  c_compare->add_option("--cap", cap, "Cone check depth");
  auto* c_triple = app.add_subcommand("triple", "Krieger dimension triple");
  c_triple->add_option("FILE", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_object("usage", e.what()).dump(2) << '\n';
    return 2;
  }

  json result;
  try {
    if (c_h0->parsed()) {
      result = cmd_h0(load_graph(file, as_matrix));
    } else if (c_h0gr->parsed()) {
      result = cmd_h0gr(load_graph(file, as_matrix), eq, positive, cap);
    } else if (c_cover->parsed()) {
      result = cmd_cover(load_graph(file, as_matrix), lo, hi);
    } else if (c_paths->parsed()) {
      result = cmd_paths(load_graph(file, as_matrix), max_len);
    } else if (c_nf->parsed()) {
      result = cmd_nf(load_graph(file, as_matrix), expr, special);
    } else if (c_oracle->parsed()) {
      result = cmd_oracle(load_graph(file, as_matrix), max_len);
    } else if (c_exact->parsed()) {
      result = cmd_exactness(load_graph(file, as_matrix));
    } else if (c_compare->parsed()) {
      if (entry_bound < 0) throw InputError("usage", "--entry-bound must be nonnegative");
      result = cmd_compare(load_graph(file, as_matrix), load_graph(file2, as_matrix),
                           Budget{max_lag, Integer(entry_bound), cap});
    } else if (c_triple->parsed()) {
      result = cmd_triple(load_graph(file, as_matrix));
    }
  } catch (const InputError& e) {
    out << error_object(e.kind, e.what()).dump(2) << '\n';
    return 2;
  } catch (const Error& e) {
    out << error_object(to_string(e.kind()), e.what()).dump(2) << '\n';
    return 2;
  }
  out << result.dump(2) << '\n';
  return 0;
}

}  // namespace ghom::cli

#endif
