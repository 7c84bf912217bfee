#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace divlat {

using Int = mpz_class;
using Rat = mpq_class;

namespace nt {

// Prime factorization as (prime, exponent) pairs with primes ascending.
struct Factorization {
  std::vector<std::pair<Int, unsigned>> factors;

  Int value() const;
  bool divides_some_prime(const Int& q) const;
};

bool is_prime(const Int& n);

// Requires n >= 2.
Factorization factor(const Int& n);

// Requires n >= 1.
Int euler_phi(const Int& n);

// Order of a in (Z/n)^*. Requires n >= 2 and gcd(a, n) == 1.
Int multiplicative_order(const Int& a, const Int& n);

// All primes p <= x, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

Int pow_mod(const Int& base, const Int& exp, const Int& mod);

// Dense univariate polynomial over Z; coeffs[i] is the coefficient of x^i.
// Normalized: no trailing zero coefficients (zero polynomial has empty coeffs).
struct IntPoly {
  std::vector<Int> coeffs;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> c);

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Int& leading() const;
  void trim();

  bool operator==(const IntPoly& o) const { return coeffs == o.coeffs; }
};

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
// Exact division by a monic divisor; throws if the remainder is nonzero.
IntPoly poly_divexact(const IntPoly& num, const IntPoly& den);
// x^m - 1.
IntPoly power_minus_one(unsigned m);

// m-th cyclotomic polynomial. Requires m >= 1.
IntPoly cyclotomic_poly(unsigned m);

// Dense integer matrix, row major.
struct ZMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> a;

  ZMatrix() = default;
  ZMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static ZMatrix identity(std::size_t n);
  ZMatrix transpose() const;

  bool operator==(const ZMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

ZMatrix zmat_mul(const ZMatrix& x, const ZMatrix& y);

// Exact determinant (Bareiss fraction-free elimination). Requires square.
Int zmat_det(const ZMatrix& m);

// Row-style Hermite normal form: output rows span the same row lattice,
// echelon shape, positive pivots, entries above each pivot reduced into
// [0, pivot). Zero rows are dropped, so the output has rank-many rows.
ZMatrix hnf(const ZMatrix& m);

}  // namespace nt
}  // namespace divlat
