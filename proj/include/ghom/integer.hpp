#ifndef GHOM_INTEGER_HPP
#define GHOM_INTEGER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace ghom {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

inline std::string to_decimal(const Integer& x) { return x.get_str(10); }

inline bool fits_int64(const Integer& x) { return x.fits_slong_p() != 0; }

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const Integer& d, const Integer& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline bool is_nonnegative(const IntVector& v) {
  for (const auto& x : v)
    if (sgn(x) < 0) return false;
  return true;
}

inline IntVector make_vector(std::initializer_list<long> xs) {
  IntVector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace ghom

#endif
