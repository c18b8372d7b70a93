#ifndef GHOM_REPORT_HPP
#define GHOM_REPORT_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "diagonal.hpp"
#include "dynamics.hpp"
#include "graded.hpp"
#include "graph.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "smith.hpp"

namespace ghom::report {

using nlohmann::json;

// Group invariants are JSON numbers when they fit in 64 bits.
inline json integer(const Integer& x) {
  if (fits_int64(x)) return json(static_cast<std::int64_t>(x.get_si()));
  return json(to_decimal(x));
}

inline json decimal(const Integer& x) { return json(to_decimal(x)); }

inline json vector(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(decimal(x));
  return a;
}

/// Row-major array of decimal strings.
inline json matrix(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    a.push_back(vector(IntVector(m.row(i).begin(), m.row(i).end())));
  return a;
}

inline json group(const FpAbelianGroup& g) {
  json t = json::array();
  for (const auto& d : g.torsion) t.push_back(integer(d));
  return {{"rank", g.rank}, {"torsion", t}, {"text", g.to_string()}};
}

inline json polynomial(const std::vector<Integer>& c) {
  json a = json::array();
  for (const auto& x : c) a.push_back(integer(x));
  return {{"coefficients", a}, {"text", polynomial_to_string(c)}};
}

inline json conventions(const std::string& special_policy = "lexicographic_min") {
  return {{"x_orientation", "x.a(v,n) = a(v,n+1)"},
          {"covering_rule", "s(e_n) = s(e)_n, r(e_n) = r(e)_(n - w(e))"},
          {"lambda", "x - 1"},
          {"special_edge_policy", special_policy},
          {"module_relation", "a(v,n) = sum_{e in s^-1(v)} a(r(e), n - w(e))"}};
}

inline json staged(const Graph& g, const StagedVector& v) {
  json terms = json::array();
  for (const auto& [n, x] : v.stages())
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) terms.push_back({{"stage", n}, {"vertex", g.vertex_id(i)}, {"coeff", integer(x[i])}});
  return {{"terms", terms}, {"text", to_string(g, v)}};
}

inline json diagonal(const Graph& g, const DiagonalElement& x) {
  json terms = json::array();
  for (const auto& [p, c] : x.terms()) {
    json edges = json::array();
    for (auto e : p.edges) edges.push_back(g.edge(e).id);
    terms.push_back({{"start", g.vertex_id(p.start)}, {"edges", edges}, {"coeff", integer(c)}});
  }
  return {{"terms", terms}, {"text", to_string(g, x)}};
}

inline json path(const Graph& g, const Path& p) {
  json edges = json::array();
  for (auto e : p.edges) edges.push_back(g.edge(e).id);
  return {{"start", g.vertex_id(p.start)},
          {"range", g.vertex_id(path_range(g, p))},
          {"edges", edges},
          {"weight", path_weight(g, p)},
          {"text", path_to_string(g, p)}};
}

inline json certificate(const ShiftEquivalenceCertificate& c) {
  return {{"R", matrix(c.R)}, {"S", matrix(c.S)}, {"lag", c.lag}};
}

inline json invariants(const GraphInvariants& inv) {
  return {{"vertex_order", inv.vertex_order},
          {"adjacency", matrix(inv.adjacency)},
          {"h0", group(inv.h0)},
          {"coker_lambda", group(inv.coker_lambda)},
          {"nonzero_spectrum", polynomial(inv.nonzero_spectrum)},
          {"dimension_rank", inv.dimension_rank}};
}

inline json invariant_report(const InvariantReport& r) {
  json j = {{"first", invariants(r.first)},
            {"second", invariants(r.second)},
            {"verdict", to_string(r.verdict)},
            {"budget",
             {{"max_lag", r.budget.max_lag}, {"entry_bound", integer(r.budget.entry_bound)}, {"cap", r.budget.cap}}}};
  if (r.verdict == Comparison::Distinguished) {
    j["distinguished_by"] = r.distinguishing_invariant;
    j["mismatched_invariants"] = r.mismatches;
  }
  if (r.certificate) {
    j["certificate"] = certificate(*r.certificate);
    j["certificate_verified"] =
        verify_shift_equivalence(r.first.adjacency, r.second.adjacency, *r.certificate);
    j["certificate_preserves_cone"] = r.certificate_preserves_cone;
  }
  return j;
}

}  // namespace ghom::report

#endif
