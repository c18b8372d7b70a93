#ifndef GHOM_TESTS_ORACLES_HPP
#define GHOM_TESTS_ORACLES_HPP

// Reference computations that share no code path with the library routines
// they check.

#include <cstddef>
#include <map>
#include <vector>

#include "ghom/ghom.hpp"

namespace ghom::testing {

/// Fraction-free Gaussian elimination.
inline Integer bareiss_determinant(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace detail {

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Invariant factors from determinantal divisors: D_k = gcd of k x k
/// minors, d_k = D_k / D_(k-1). Small matrices only.
inline std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols(), r = std::min(m, n);
  std::vector<Integer> d;
  Integer prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    detail::subsets(m, k, 0, cur, rs);
    detail::subsets(n, k, 0, cur, cs);
    Integer g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(ri[i], ci[j]);
        Integer det = bareiss_determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      }
    if (g == 0) {
      for (; k <= r; ++k) d.push_back(0);
      break;
    }
    d.push_back(g / prev);
    prev = g;
  }
  return d;
}

/// det(tI - a) via evaluation at t = 0..n and Lagrange interpolation over Q.
inline std::vector<Integer> charpoly_by_interpolation(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<mpq_class> coeff(n + 1, mpq_class(0));  // low degree first
  for (std::size_t i = 0; i <= n; ++i) {
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = (r == c ? Integer(static_cast<long>(i)) : Integer(0)) - a(r, c);
    const mpq_class yi(bareiss_determinant(m));
    // basis polynomial prod_{j != i} (t - j) / (i - j)
    std::vector<mpq_class> basis{mpq_class(1)};
    mpq_class denom = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      std::vector<mpq_class> next(basis.size() + 1, mpq_class(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * static_cast<long>(j);
      }
      basis = std::move(next);
      denom *= static_cast<long>(i) - static_cast<long>(j);
    }
    for (std::size_t k = 0; k < basis.size(); ++k) coeff[k] += yi * basis[k] / denom;
  }
  std::vector<Integer> out;
  for (std::size_t k = n + 1; k-- > 0;) {
    coeff[k].canonicalize();
    out.push_back(coeff[k].get_num());
  }
  return out;
}

/// Number of paths of length <= max_len: sum of all entries of A^k.
inline Integer path_count_by_powers(const IntMatrix& a, std::size_t max_len) {
  Integer total = 0;
  IntMatrix p = IntMatrix::identity(a.rows());
  for (std::size_t k = 0; k <= max_len; ++k) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (const auto& x : p.row(i)) total += x;
    p = p * a;
  }
  return total;
}

/// A diagonal element as a function on cylinder sets: aa* is the indicator of
/// all boundary paths starting with a. Evaluated on every path of length
/// `depth` and every shorter path ending in a sink; equal functions iff equal
/// elements whenever depth >= longest path in either element.
inline std::map<Path, Integer> cylinder_function(const Graph& g, const DiagonalElement& x, std::size_t depth) {
  std::map<Path, Integer> f;
  for (const auto& p : enumerate_paths(g, depth)) {
    const bool boundary = p.length() == depth || g.is_sink(path_range(g, p));
    if (!boundary) continue;
    Integer value = 0;
    for (const auto& [a, c] : x.terms()) {
      bool prefix = a.start == p.start && a.length() <= p.length();
      for (std::size_t i = 0; prefix && i < a.length(); ++i) prefix = a.edges[i] == p.edges[i];
      if (prefix) value += c;
    }
    if (value != 0) f.emplace(p, value);
  }
  return f;
}

inline std::size_t longest_term(const DiagonalElement& x) {
  std::size_t n = 0;
  for (const auto& [p, c] : x.terms()) n = std::max(n, p.length());
  return n;
}

}  // namespace ghom::testing

#endif
