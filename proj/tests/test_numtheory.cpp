#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "divlat/numtheory.hpp"

using divlat::Int;
namespace nt = divlat::nt;

namespace {

Int phi_by_counting(long n) {
  Int c = 0;
  for (long k = 1; k <= n; ++k)
    if (gcd(Int(k), Int(n)) == 1) ++c;
  return c;
}

Int order_by_iteration(long a, long n) {
  Int x = a % n, ord = 1;
  while (x != 1) {
    x = x * a % n;
    ++ord;
    REQUIRE(ord <= n);
  }
  return ord;
}

bool prime_by_trial(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Reduce v against an echelon-form matrix by back-substitution; true when v
// lies in the integer row span. Does not call hnf.
bool in_row_lattice(std::vector<Int> v, const nt::ZMatrix& h) {
  for (std::size_t i = 0; i < h.rows; ++i) {
    std::size_t pc = 0;
    while (pc < h.cols && h.at(i, pc) == 0) ++pc;
    if (pc == h.cols) continue;
    if (v[pc] % h.at(i, pc) != 0) return false;
    Int q = v[pc] / h.at(i, pc);
    for (std::size_t j = 0; j < h.cols; ++j) v[j] -= q * h.at(i, j);
  }
  for (const Int& c : v)
    if (c != 0) return false;
  return true;
}

Int det3_by_cofactors(const nt::ZMatrix& m) {
  auto e = [&](int i, int j) { return m.at(i, j); };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace

TEST_CASE("factor on fixed inputs") {
  auto f12 = nt::factor(12);
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0] == std::pair<Int, unsigned>(2, 2));
  CHECK(f12.factors[1] == std::pair<Int, unsigned>(3, 1));

  auto f210 = nt::factor(210);
  REQUIRE(f210.factors.size() == 4);
  CHECK(f210.factors[0].first == 2);
  CHECK(f210.factors[1].first == 3);
  CHECK(f210.factors[2].first == 5);
  CHECK(f210.factors[3].first == 7);

  auto f = nt::factor(30031);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<Int, unsigned>(59, 1));
  CHECK(f.factors[1] == std::pair<Int, unsigned>(509, 1));

  CHECK_THROWS_AS(nt::factor(1), std::invalid_argument);
  CHECK_THROWS_AS(nt::factor(0), std::invalid_argument);
  CHECK_THROWS_AS(nt::factor(-6), std::invalid_argument);
}

TEST_CASE("factor roundtrip and primality of parts") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    long n = 2 + static_cast<long>(rng() % 100000);
    auto f = nt::factor(n);
    CHECK(f.value() == n);
    for (const auto& [p, e] : f.factors) {
      CHECK(e >= 1);
      CHECK(prime_by_trial(p.get_si()));
    }
    for (std::size_t i = 1; i < f.factors.size(); ++i)
      CHECK(f.factors[i - 1].first < f.factors[i].first);
  }
  auto big = nt::factor(Int("614889782588491410"));  // product of first 15 primes
  CHECK(big.factors.size() == 15);
  CHECK(big.value() == Int("614889782588491410"));
}

TEST_CASE("is_prime agrees with trial division") {
  for (long n = 0; n <= 2000; ++n) CHECK(nt::is_prime(n) == prime_by_trial(n));
  CHECK(nt::is_prime(211));
  CHECK_FALSE(nt::is_prime(30031));
  CHECK(nt::is_prime(Int("2305843009213693951")));  // 2^61 - 1
}

TEST_CASE("euler_phi against gcd counting") {
  CHECK(nt::euler_phi(1) == 1);
  CHECK(nt::euler_phi(2) == 1);
  CHECK(nt::euler_phi(12) == 4);
  CHECK(nt::euler_phi(30) == 8);
  for (long n = 1; n <= 300; ++n) CHECK(nt::euler_phi(n) == phi_by_counting(n));
  CHECK_THROWS_AS(nt::euler_phi(0), std::invalid_argument);
  CHECK_THROWS_AS(nt::euler_phi(-5), std::invalid_argument);
}

TEST_CASE("multiplicative_order against iteration") {
  CHECK(nt::multiplicative_order(2, 7) == 3);
  CHECK(nt::multiplicative_order(3, 4) == 2);
  CHECK(nt::multiplicative_order(1, 5) == 1);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    long n = 2 + static_cast<long>(rng() % 400);
    long a = 1 + static_cast<long>(rng() % (n - 1));
    if (gcd(Int(a), Int(n)) != 1) {
      CHECK_THROWS_AS(nt::multiplicative_order(a, n), std::invalid_argument);
      continue;
    }
    CHECK(nt::multiplicative_order(a, n) == order_by_iteration(a, n));
  }
  CHECK_THROWS_AS(nt::multiplicative_order(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(nt::multiplicative_order(2, 4), std::invalid_argument);
}

TEST_CASE("primes_up_to") {
  CHECK(nt::primes_up_to(1).empty());
  CHECK(nt::primes_up_to(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  auto got = nt::primes_up_to(1000);
  std::vector<std::uint64_t> want;
  for (long n = 2; n <= 1000; ++n)
    if (prime_by_trial(n)) want.push_back(n);
  CHECK(got == want);
  CHECK(nt::primes_up_to(100000).size() == 9592);
}

TEST_CASE("cyclotomic polynomials, fixed values") {
  auto poly = [](std::vector<long> c) {
    std::vector<Int> v(c.begin(), c.end());
    return nt::IntPoly(std::move(v));
  };
  CHECK(nt::cyclotomic_poly(1) == poly({-1, 1}));
  CHECK(nt::cyclotomic_poly(2) == poly({1, 1}));
  CHECK(nt::cyclotomic_poly(4) == poly({1, 0, 1}));
  CHECK(nt::cyclotomic_poly(6) == poly({1, -1, 1}));
  CHECK(nt::cyclotomic_poly(12) == poly({1, 0, -1, 0, 1}));
  // First index with a coefficient outside {-1, 0, 1}: x^7 and x^41 carry -2.
  auto c105 = nt::cyclotomic_poly(105);
  CHECK(c105.coeffs[7] == -2);
  CHECK(c105.coeffs[41] == -2);
  CHECK_THROWS_AS(nt::cyclotomic_poly(0), std::invalid_argument);
}

TEST_CASE("cyclotomic product identity and degrees") {
  for (unsigned m = 1; m <= 200; ++m) {
    nt::IntPoly prod(std::vector<Int>{Int(1)});
    for (unsigned d = 1; d <= m; ++d)
      if (m % d == 0) prod = nt::poly_mul(prod, nt::cyclotomic_poly(d));
    CHECK(prod == nt::power_minus_one(m));
    CHECK(Int(nt::cyclotomic_poly(m).degree()) == nt::euler_phi(m));
  }
}

TEST_CASE("hnf on fixed input") {
  nt::ZMatrix a(3, 2);
  a.at(0, 0) = 2;
  a.at(1, 1) = 2;
  a.at(2, 0) = 1;
  a.at(2, 1) = 1;
  auto h = nt::hnf(a);
  REQUIRE(h.rows == 2);
  REQUIRE(h.cols == 2);
  CHECK(h.at(0, 0) == 1);
  CHECK(h.at(0, 1) == 1);
  CHECK(h.at(1, 0) == 0);
  CHECK(h.at(1, 1) == 2);
}

namespace {

void check_echelon_shape(const nt::ZMatrix& h) {
  std::size_t prev_pivot = 0;
  bool first = true;
  for (std::size_t i = 0; i < h.rows; ++i) {
    std::size_t pc = 0;
    while (pc < h.cols && h.at(i, pc) == 0) ++pc;
    REQUIRE(pc < h.cols);  // no zero rows in the output
    if (!first) REQUIRE(pc > prev_pivot);
    first = false;
    prev_pivot = pc;
    CHECK(h.at(i, pc) > 0);
    for (std::size_t k = 0; k < i; ++k) {
      CHECK(h.at(k, pc) >= 0);
      CHECK(h.at(k, pc) < h.at(i, pc));
    }
    for (std::size_t k = i + 1; k < h.rows; ++k) CHECK(h.at(k, pc) == 0);
  }
}

}  // namespace

TEST_CASE("hnf properties on random square matrices") {
  std::mt19937 rng(23);
  auto entry = [&] { return Int(static_cast<long>(rng() % 11) - 5); };
  int nonsingular_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 3 + rng() % 2;
    nt::ZMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = entry();
    auto h = nt::hnf(a);
    check_echelon_shape(h);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Int> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = a.at(i, j);
      CHECK(in_row_lattice(std::move(row), h));
    }
    Int d = nt::zmat_det(a);
    if (d == 0) continue;
    ++nonsingular_seen;
    // Full-rank case: row span containment plus equal lattice index forces
    // equality of the row lattices.
    REQUIRE(h.rows == n);
    Int pivot_prod = 1;
    for (std::size_t i = 0; i < n; ++i) pivot_prod *= h.at(i, i);
    CHECK(pivot_prod == abs(d));
    // Canonical form: a second pass changes nothing.
    CHECK(nt::hnf(h) == h);
  }
  CHECK(nonsingular_seen > 100);
}

TEST_CASE("hnf is invariant under unimodular row operations") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    nt::ZMatrix a(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        a.at(i, j) = Int(static_cast<long>(rng() % 9) - 4);
    nt::ZMatrix b = a;
    // swap two rows, then add a multiple of one row to another
    for (std::size_t j = 0; j < 4; ++j) std::swap(b.at(0, j), b.at(2, j));
    long mult = static_cast<long>(rng() % 5) - 2;
    for (std::size_t j = 0; j < 4; ++j) b.at(1, j) += mult * b.at(0, j);
    CHECK(nt::hnf(a) == nt::hnf(b));
  }
}

TEST_CASE("zmat_det against cofactor expansion") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    nt::ZMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        m.at(i, j) = Int(static_cast<long>(rng() % 21) - 10);
    CHECK(nt::zmat_det(m) == det3_by_cofactors(m));
  }
  CHECK(nt::zmat_det(nt::ZMatrix::identity(5)) == 1);
}

TEST_CASE("pow_mod basics") {
  CHECK(nt::pow_mod(2, 10, 1000) == 24);
  CHECK(nt::pow_mod(-1, 3, 7) == 6);
  CHECK(nt::pow_mod(5, 0, 13) == 1);
  CHECK_THROWS_AS(nt::pow_mod(2, 3, 0), std::invalid_argument);
}
