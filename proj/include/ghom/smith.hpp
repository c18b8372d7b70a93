#ifndef GHOM_SMITH_HPP
#define GHOM_SMITH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "integer.hpp"
#include "matrix.hpp"

namespace ghom {

namespace detail {

inline int cmp_abs(const Integer& a, const Integer& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

template <class T>
int cmp_abs(const T& a, const T& b) {
  using std::abs;
  auto x = abs(a), y = abs(b);
  return x < y ? -1 : (y < x ? 1 : 0);
}

inline bool is_unit(const Integer& a) { return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0; }

template <class T>
bool is_unit(const T& a) {
  return a == T(1) || a == T(-1);
}

template <class T>
bool divisible(const T& a, const T& d) {
  return a % d == 0;
}

inline bool divisible(const Integer& a, const Integer& d) { return divides(d, a); }

/// Row and column operations applied to `a` are mirrored into the optional
/// `u` (row ops) and `v` (column ops) so that U * A_in * V = A_out.
template <class T>
class SmithEngine {
 public:
  SmithEngine(Matrix<T>& a, Matrix<T>* u, Matrix<T>* v) : a_(a), u_(u), v_(v) {}

  void run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      settle(t);
      if (a_(t, t) < 0) negate_row(t);
    }
  }

 private:
  // Smallest |entry| in the trailing submatrix, first hit in row-major order.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const T& x = a_(i, j);
        if (x == 0) continue;
        if (!found || cmp_abs(x, a_(pi, pj)) < 0) {
          pi = i;
          pj = j;
          found = true;
          if (is_unit(x)) return true;
        }
      }
    return found;
  }

  void settle(std::size_t t) {
    for (;;) {
      bool dirty = false;
      const T p = a_(t, t);
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        T q = a_(i, t) / p;
        if (q != 0) add_row(i, t, -q);
        if (a_(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        T q = a_(t, j) / p;
        if (q != 0) add_col(j, t, -q);
        if (a_(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived; promote the smallest.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < a_.rows(); ++i)
          if (a_(i, t) != 0 && cmp_abs(a_(i, t), a_(bi, bj)) < 0) bi = i, bj = t;
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
          if (a_(t, j) != 0 && cmp_abs(a_(t, j), a_(bi, bj)) < 0) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      if (is_unit(p)) return;
      bool fixed = false;
      for (std::size_t i = t + 1; i < a_.rows() && !fixed; ++i)
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (a_(i, j) != 0 && !divisible(a_(i, j), p)) {
            add_row(t, i, T(1));
            fixed = true;
            break;
          }
        }
      if (!fixed) return;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    a_.swap_rows(a, b);
    if (u_) u_->swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    a_.swap_cols(a, b);
    if (v_) v_->swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const T& q) {
    a_.add_row_multiple(dst, src, q);
    if (u_) u_->add_row_multiple(dst, src, q);
  }
  void add_col(std::size_t dst, std::size_t src, const T& q) {
    a_.add_col_multiple(dst, src, q);
    if (v_) v_->add_col_multiple(dst, src, q);
  }
  void negate_row(std::size_t i) {
    a_.negate_row(i);
    if (u_) u_->negate_row(i);
  }

  Matrix<T>& a_;
  Matrix<T>* u_;
  Matrix<T>* v_;
};

}  // namespace detail

/// U * A * V = S with U, V unimodular and S diagonal. `invariant_factors`
/// lists the min(rows, cols) diagonal entries: d1 | d2 | ... | dk, then zeros.
template <class T>
struct SmithDecomposition {
  Matrix<T> U;
  Matrix<T> S;
  Matrix<T> V;
  std::vector<T> invariant_factors;

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& d : invariant_factors)
      if (d != 0) ++r;
    return r;
  }
};

template <class T>
std::vector<T> diagonal_of(const Matrix<T>& s) {
  std::vector<T> d;
  const std::size_t k = std::min(s.rows(), s.cols());
  d.reserve(k);
  for (std::size_t i = 0; i < k; ++i) d.push_back(s(i, i));
  return d;
}

template <class T>
SmithDecomposition<T> smith_normal_form(const Matrix<T>& a) {
  SmithDecomposition<T> out{Matrix<T>::identity(a.rows()), a, Matrix<T>::identity(a.cols()), {}};
  detail::SmithEngine<T>(out.S, &out.U, &out.V).run();
  out.invariant_factors = diagonal_of(out.S);
  return out;
}

/// Same diagonal as smith_normal_form, without accumulating the transforms.
template <class T>
std::vector<T> invariant_factors(Matrix<T> a) {
  detail::SmithEngine<T>(a, nullptr, nullptr).run();
  return diagonal_of(a);
}

/// Finitely generated abelian group Z^rank + sum Z/torsion[i], torsion
/// sorted by divisibility and all > 1. Equal fields iff isomorphic groups.
struct FpAbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;

  bool trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const FpAbelianGroup&) const = default;

  std::string to_string() const {
    if (trivial()) return "0";
    std::string s;
    if (rank) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    for (const auto& d : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/" + to_decimal(d);
    }
    return s;
  }
};

inline FpAbelianGroup group_from_factors(std::size_t ambient, const std::vector<Integer>& factors) {
  FpAbelianGroup g;
  std::size_t nonzero = 0;
  for (const auto& d : factors) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) g.torsion.push_back(d);
  }
  g.rank = ambient - nonzero;
  return g;
}

/// Z^rows / column-span(a).
inline FpAbelianGroup cokernel(const IntMatrix& a) {
  return group_from_factors(a.rows(), invariant_factors(a));
}

/// Coordinates of a class in Z^rank + sum Z/d_i; torsion coordinates are
/// reduced into [0, d_i).
struct CokernelCoordinates {
  IntVector free;
  IntVector torsion;
  bool is_zero() const { return ghom::is_zero(free) && ghom::is_zero(torsion); }
  bool operator==(const CokernelCoordinates&) const = default;
};

/// Quotient map Z^rows -> Z^rows / column-span(a) in canonical coordinates.
class CokernelMap {
 public:
  explicit CokernelMap(const IntMatrix& a) : ambient_(a.rows()) {
    auto snf = smith_normal_form(a);
    u_ = std::move(snf.U);
    factors_ = std::move(snf.invariant_factors);
    group_ = group_from_factors(ambient_, factors_);
  }

  const FpAbelianGroup& group() const { return group_; }
  std::size_t ambient() const { return ambient_; }

  CokernelCoordinates coordinates(const IntVector& x) const {
    if (x.size() != ambient_)
      throw Error(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(x.size()) +
                                                    " in ambient of rank " + std::to_string(ambient_));
    IntVector y = u_ * x;
    CokernelCoordinates c;
    for (std::size_t i = 0; i < ambient_; ++i) {
      const Integer d = i < factors_.size() ? factors_[i] : Integer(0);
      if (d == 0) {
        c.free.push_back(y[i]);
      } else if (d > 1) {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), d.get_mpz_t());
        c.torsion.push_back(r);
      }
    }
    return c;
  }

 private:
  std::size_t ambient_;
  IntMatrix u_;
  std::vector<Integer> factors_;
  FpAbelianGroup group_;
};

/// Row-style Hermite normal form of the lattice spanned by the rows of `gens`:
/// echelon rows with positive pivots, entries above each pivot in [0, pivot),
/// zero rows dropped. Canonical for the lattice.
inline IntMatrix hermite_basis(IntMatrix h) {
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (!best || detail::cmp_abs(h(i, c), h(*best, c)) < 0)) best = i;
      if (!best) break;
      h.swap_rows(r, *best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = h(i, c) / h(r, c);
        h.add_row_multiple(i, r, -q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < m && h(r, c) != 0) {
      if (h(r, c) < 0) h.negate_row(r);
      for (std::size_t i = 0; i < r; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = floor_div(h(i, c), h(r, c));
        if (q != 0) h.add_row_multiple(i, r, -q);
      }
      pivots.push_back(c);
      ++r;
    }
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
  return out;
}

/// Membership of `z` in the lattice whose Hermite basis is `basis`.
inline bool lattice_contains(const IntMatrix& basis, IntVector z) {
  if (z.size() != basis.cols())
    throw Error(ErrorKind::DimensionMismatch, "lattice membership: vector length mismatch");
  std::size_t col = 0;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    std::size_t p = col;
    while (p < basis.cols() && basis(r, p) == 0) ++p;
    for (; col < p; ++col)
      if (z[col] != 0) return false;
    if (!divides(basis(r, p), z[p])) return false;
    Integer q = z[p] / basis(r, p);
    if (q != 0)
      for (std::size_t j = p; j < z.size(); ++j) z[j] -= q * basis(r, j);
    col = p + 1;
  }
  return is_zero(z);
}

/// Column-span membership: z in a * Z^cols.
inline bool in_column_span(const IntMatrix& a, const IntVector& z) {
  if (z.size() != a.rows())
    throw Error(ErrorKind::DimensionMismatch, "span membership: vector length mismatch");
  return lattice_contains(hermite_basis(a.transpose()), z);
}

/// Integer kernel {x : a x = 0} as a Hermite basis (one basis vector per row).
inline IntMatrix kernel_basis(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  const std::size_t k = snf.rank();
  IntMatrix gens(a.cols() - k, a.cols());
  for (std::size_t j = k; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) gens(j - k, i) = snf.V(i, j);
  return hermite_basis(std::move(gens));
}

/// a^k v by repeated application.
inline IntVector mat_pow_apply(const IntMatrix& a, IntVector v, std::size_t k) {
  if (!a.square())
    throw Error(ErrorKind::DimensionMismatch, "mat_pow_apply needs a square matrix, got " + a.shape());
  if (a.cols() != v.size())
    throw Error(ErrorKind::DimensionMismatch, "mat_pow_apply: vector length " + std::to_string(v.size()) +
                                                  " vs matrix " + a.shape());
  for (std::size_t i = 0; i < k; ++i) v = a * v;
  return v;
}

/// Basis of ker(a^n), n = size of a. The kernel chain of powers of an n x n
/// matrix is stationary from step n on.
inline IntMatrix eventual_kernel(const IntMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "eventual_kernel of non-square " + a.shape());
  return kernel_basis(mat_pow(a, a.rows()));
}

/// Same lattice, stopping at the first k with ker(a^k) = ker(a^(k+1)).
inline IntMatrix eventual_kernel_stabilized(const IntMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "eventual_kernel of non-square " + a.shape());
  IntMatrix power = a;
  IntMatrix current = kernel_basis(power);
  for (;;) {
    power = power * a;
    IntMatrix next = kernel_basis(power);
    if (next == current) return current;
    current = std::move(next);
  }
}

}  // namespace ghom

#endif
