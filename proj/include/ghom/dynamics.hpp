#ifndef GHOM_DYNAMICS_HPP
#define GHOM_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "graded.hpp"
#include "graph.hpp"
#include "homology.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "smith.hpp"

namespace ghom {

/// A R = R B, B S = S A, R S = A^lag, S R = B^lag with R, S >= 0.
struct ShiftEquivalenceCertificate {
  IntMatrix R;
  IntMatrix S;
  std::size_t lag = 1;
};

inline bool verify_shift_equivalence(const IntMatrix& a, const IntMatrix& b,
                                     const ShiftEquivalenceCertificate& c) {
  if (!a.square() || !b.square())
    throw Error(ErrorKind::DimensionMismatch, "shift equivalence needs square matrices");
  const std::size_t n = a.rows(), m = b.rows();
  if (c.R.rows() != n || c.R.cols() != m || c.S.rows() != m || c.S.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "certificate shapes " + c.R.shape() + " / " + c.S.shape() +
                                                  " do not fit " + a.shape() + " and " + b.shape());
  if (c.lag < 1) return false;
  if (!is_nonnegative(c.R) || !is_nonnegative(c.S)) return false;
  return a * c.R == c.R * b && b * c.S == c.S * a && c.R * c.S == mat_pow(a, c.lag) &&
         c.S * c.R == mat_pow(b, c.lag);
}

namespace detail {

// Odometer over rows x cols matrices with entries in [0, bound]; the first
// entry (row-major) turns fastest, which is colexicographic order.
inline bool next_matrix(IntMatrix& m, const Integer& bound) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) < bound) {
        m(i, j) += 1;
        return true;
      }
      m(i, j) = 0;
    }
  return false;
}

template <class Pred>
std::vector<IntMatrix> matrices_where(std::size_t rows, std::size_t cols, const Integer& bound, Pred pred) {
  std::vector<IntMatrix> out;
  IntMatrix m(rows, cols);
  do {
    if (pred(m)) out.push_back(m);
  } while (next_matrix(m, bound));
  return out;
}

}  // namespace detail

/// Exhaustive search over R, S with entries in [0, entry_bound] and lag in
/// [1, max_lag]. Order: lag ascending, then R colex, then S colex; the first
/// hit is returned. No result is not a proof of inequivalence.
inline std::optional<ShiftEquivalenceCertificate> search_shift_equivalence(const IntMatrix& a, const IntMatrix& b,
                                                                           std::size_t max_lag,
                                                                           const Integer& entry_bound) {
  if (!a.square() || !b.square())
    throw Error(ErrorKind::DimensionMismatch, "shift equivalence needs square matrices");
  if (entry_bound < 0) return std::nullopt;
  const std::size_t n = a.rows(), m = b.rows();
  const auto rs = detail::matrices_where(n, m, entry_bound, [&](const IntMatrix& r) { return a * r == r * b; });
  if (rs.empty()) return std::nullopt;
  const auto ss = detail::matrices_where(m, n, entry_bound, [&](const IntMatrix& s) { return b * s == s * a; });
  IntMatrix ap = IntMatrix::identity(n), bp = IntMatrix::identity(m);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    ap = ap * a;
    bp = bp * b;
    for (const auto& r : rs)
      for (const auto& s : ss)
        if (r * s == ap && s * r == bp) return ShiftEquivalenceCertificate{r, s, lag};
  }
  return std::nullopt;
}

/// Coefficients of det(tI - a), highest degree first, computed exactly by
/// the Faddeev-LeVerrier recursion.
inline std::vector<Integer> characteristic_polynomial(const IntMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "characteristic polynomial of non-square " + a.shape());
  const std::size_t n = a.rows();
  std::vector<Integer> c(n + 1, Integer(0));
  c[0] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[k - 1];
    mk = std::move(next);
    IntMatrix am = a * mk;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[k] = -trace / static_cast<long>(k);
  }
  return c;
}

/// Characteristic polynomial with every factor t removed.
inline std::vector<Integer> nonzero_spectrum_fingerprint(const IntMatrix& a) {
  auto c = characteristic_polynomial(a);
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  if (c.front() < 0)
    for (auto& x : c) x = -x;
  return c;
}

inline std::string polynomial_to_string(const std::vector<Integer>& c, const std::string& var = "t") {
  std::string s;
  const std::size_t deg = c.size() - 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const std::size_t p = deg - i;
    Integer m = abs(c[i]);
    if (s.empty()) s += c[i] < 0 ? "-" : "";
    else s += c[i] < 0 ? " - " : " + ";
    if (m != 1 || p == 0) s += to_decimal(m);
    if (p >= 1) s += var;
    if (p >= 2) s += "^" + std::to_string(p);
  }
  return s.empty() ? "0" : s;
}

struct Budget {
  std::size_t max_lag = 2;
  Integer entry_bound = 2;
  std::size_t cap = 20;
};

struct GraphInvariants {
  std::vector<std::string> vertex_order;
  IntMatrix adjacency;
  FpAbelianGroup h0;
  FpAbelianGroup coker_lambda;
  std::vector<Integer> nonzero_spectrum;
  std::size_t dimension_rank = 0;  // n minus rank of the eventual kernel
};

enum class Comparison { EventuallyConjugate, Distinguished, Unknown };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::EventuallyConjugate: return "eventually_conjugate";
    case Comparison::Distinguished: return "distinguished";
    case Comparison::Unknown: return "unknown";
  }
  return "unknown";
}

struct InvariantReport {
  GraphInvariants first;
  GraphInvariants second;
  Comparison verdict = Comparison::Unknown;
  std::string distinguishing_invariant;
  std::vector<std::string> mismatches;
  std::optional<ShiftEquivalenceCertificate> certificate;
  bool certificate_preserves_cone = false;
  Budget budget;
};

inline GraphInvariants graph_invariants(const Graph& g) {
  GraphInvariants inv;
  inv.vertex_order = g.vertices();
  inv.adjacency = adjacency(g);
  inv.h0 = h0(g);
  inv.coker_lambda = coker_lambda(GradedModule(g));
  inv.nonzero_spectrum = nonzero_spectrum_fingerprint(inv.adjacency);
  inv.dimension_rank = g.vertex_count() - eventual_kernel(inv.adjacency.transpose()).rows();
  return inv;
}

/// The induced map (x, i) -> (R^t x, i) between dimension triples sends each
/// vertex generator of the first triple into the positive cone of the second.
inline bool certificate_preserves_cone(const Graph& g1, const Graph& g2, const ShiftEquivalenceCertificate& c,
                                       std::size_t cap) {
  const DimensionTriple t2(g2);
  const IntMatrix rt = c.R.transpose();
  for (std::size_t v = 0; v < g1.vertex_count(); ++v) {
    IntVector x(g1.vertex_count(), Integer(0));
    x[v] = 1;
    const Verdict verdict = t2.positivity({rt * x, 0}, cap);
    if (verdict != Verdict::Positive && verdict != Verdict::Zero) return false;
  }
  return true;
}

inline InvariantReport eventual_conjugacy_verdict(const Graph& g1, const Graph& g2, const Budget& budget) {
  for (const Graph* g : {&g1, &g2}) {
    if (g->has_sinks()) throw Error(ErrorKind::Precondition, "compare needs sink-free graphs");
    if (!g->unit_weights()) throw Error(ErrorKind::Precondition, "compare needs all weights equal to 1");
  }
  InvariantReport rep;
  rep.budget = budget;
  rep.first = graph_invariants(g1);
  rep.second = graph_invariants(g2);
  if (rep.first.nonzero_spectrum != rep.second.nonzero_spectrum) rep.mismatches.push_back("nonzero_spectrum");
  if (rep.first.h0 != rep.second.h0) rep.mismatches.push_back("h0");
  if (rep.first.dimension_rank != rep.second.dimension_rank) rep.mismatches.push_back("dimension_rank");
  if (!rep.mismatches.empty()) {
    rep.verdict = Comparison::Distinguished;
    rep.distinguishing_invariant = rep.mismatches.front();
    return rep;
  }
  rep.certificate = search_shift_equivalence(rep.first.adjacency, rep.second.adjacency, budget.max_lag,
                                             budget.entry_bound);
  if (rep.certificate) {
    rep.verdict = Comparison::EventuallyConjugate;
    rep.certificate_preserves_cone = certificate_preserves_cone(g1, g2, *rep.certificate, budget.cap);
  }
  return rep;
}

}  // namespace ghom

#endif
