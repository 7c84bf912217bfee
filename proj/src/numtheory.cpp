#include "divlat/numtheory.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace divlat::nt {

Int Factorization::value() const {
  Int v = 1;
  for (const auto& [p, e] : factors)
    for (unsigned i = 0; i < e; ++i) v *= p;
  return v;
}

bool Factorization::divides_some_prime(const Int& q) const {
  for (const auto& [p, e] : factors)
    if (p % q == 0) return true;
  return false;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

Int pow_mod(const Int& base, const Int& exp, const Int& mod) {
  if (mod <= 0) throw std::invalid_argument("pow_mod: modulus must be positive");
  Int r;
  Int b = base % mod;
  if (b < 0) b += mod;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

namespace {

// Brent's cycle variant of Pollard rho; n must be odd, composite, not a
// prime power handled elsewhere. Returns a nontrivial factor.
Int pollard_brent(const Int& n) {
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xd1e5a7ul);
  while (true) {
    Int y = rng.get_z_range(n - 3) + 2;
    Int c = rng.get_z_range(n - 1) + 1;
    Int m = 128, g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        Int lim = std::min(m, Int(r - k));
        for (Int i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      }
    }
    if (g != n) return g;
  }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  Int rem = n;
  for (Int p = 2; p * p <= rem && p < 1000000; p = (p == 2 ? Int(3) : p + 2)) {
    while (rem % p == 0) {
      ++out[p];
      rem /= p;
    }
  }
  if (rem == 1) return;
  if (is_prime(rem)) {
    ++out[rem];
    return;
  }
  Int d = pollard_brent(rem);
  factor_into(d, out);
  factor_into(rem / d, out);
}

}  // namespace

Factorization factor(const Int& n) {
  if (n < 2) throw std::invalid_argument("factor: input must be >= 2");
  std::map<Int, unsigned> acc;
  factor_into(n, acc);
  Factorization f;
  f.factors.assign(acc.begin(), acc.end());
  return f;
}

Int euler_phi(const Int& n) {
  if (n < 1) throw std::invalid_argument("euler_phi: input must be >= 1");
  if (n == 1) return 1;
  Int phi = 1;
  for (const auto& [p, e] : factor(n).factors) {
    Int pe = 1;
    for (unsigned i = 0; i + 1 < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

Int multiplicative_order(const Int& a, const Int& n) {
  if (n < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
  if (gcd(a, n) != 1)
    throw std::invalid_argument("multiplicative_order: arguments must be coprime");
  Int ord = euler_phi(n);
  if (ord == 1) return ord;
  for (const auto& [p, e] : factor(ord).factors) {
    (void)e;
    while (ord % p == 0 && pow_mod(a, ord / p, n) == 1) ord /= p;
  }
  return ord;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  if (x < 2) return out;
  std::vector<std::uint8_t> sieve(x + 1, 1);
  sieve[0] = sieve[1] = 0;
  for (std::uint64_t i = 2; i * i <= x; ++i)
    if (sieve[i])
      for (std::uint64_t j = i * i; j <= x; j += i) sieve[j] = 0;
  for (std::uint64_t i = 2; i <= x; ++i)
    if (sieve[i]) out.push_back(i);
  return out;
}

IntPoly::IntPoly(std::vector<Int> c) : coeffs(std::move(c)) { trim(); }

const Int& IntPoly::leading() const {
  if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
  return coeffs.back();
}

void IntPoly::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly{};
  std::vector<Int> c(a.coeffs.size() + b.coeffs.size() - 1);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] += a.coeffs[i] * b.coeffs[j];
  return IntPoly(std::move(c));
}

IntPoly poly_divexact(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw std::invalid_argument("poly_divexact: division by zero");
  if (den.leading() != 1) throw std::invalid_argument("poly_divexact: divisor must be monic");
  std::vector<Int> rem = num.coeffs;
  if (num.degree() < den.degree()) {
    if (!num.is_zero()) throw std::domain_error("poly_divexact: nonzero remainder");
    return IntPoly{};
  }
  std::vector<Int> quot(num.degree() - den.degree() + 1);
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    Int c = rem[k + den.degree()];
    quot[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= den.degree(); ++j) rem[k + j] -= c * den.coeffs[j];
  }
  for (const Int& c : rem)
    if (c != 0) throw std::domain_error("poly_divexact: nonzero remainder");
  return IntPoly(std::move(quot));
}

IntPoly power_minus_one(unsigned m) {
  std::vector<Int> c(m + 1);
  c[0] = -1;
  c[m] = 1;
  return IntPoly(std::move(c));
}

IntPoly cyclotomic_poly(unsigned m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_poly: index must be >= 1");
  std::vector<unsigned> divs;
  for (unsigned d = 1; d <= m; ++d)
    if (m % d == 0) divs.push_back(d);
  std::map<unsigned, IntPoly> table;
  for (unsigned d : divs) {
    IntPoly f = power_minus_one(d);
    for (unsigned e : divs) {
      if (e >= d || d % e != 0) continue;
      f = poly_divexact(f, table.at(e));
    }
    table[d] = std::move(f);
  }
  return table.at(m);
}

ZMatrix ZMatrix::identity(std::size_t n) {
  ZMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMatrix ZMatrix::transpose() const {
  ZMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

ZMatrix zmat_mul(const ZMatrix& x, const ZMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("zmat_mul: shape mismatch");
  ZMatrix z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Int& v = x.at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

Int zmat_det(const ZMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("zmat_det: matrix must be square");
  std::size_t n = m.rows;
  if (n == 0) return 1;
  ZMatrix w = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && w.at(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

ZMatrix hnf(const ZMatrix& m) {
  ZMatrix w = m;
  std::size_t row = 0;
  for (std::size_t col = 0; col < w.cols && row < w.rows; ++col) {
    // Euclidean reduction in this column among rows >= row.
    while (true) {
      std::size_t best = w.rows;
      for (std::size_t i = row; i < w.rows; ++i) {
        if (w.at(i, col) == 0) continue;
        if (best == w.rows || abs(w.at(i, col)) < abs(w.at(best, col))) best = i;
      }
      if (best == w.rows) break;  // column is zero below; no pivot here
      if (best != row)
        for (std::size_t j = 0; j < w.cols; ++j) std::swap(w.at(row, j), w.at(best, j));
      bool clean = true;
      for (std::size_t i = row + 1; i < w.rows; ++i) {
        if (w.at(i, col) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), w.at(i, col).get_mpz_t(), w.at(row, col).get_mpz_t());
        if (q != 0)
          for (std::size_t j = 0; j < w.cols; ++j) w.at(i, j) -= q * w.at(row, j);
        if (w.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (w.at(row, col) == 0) continue;
    if (w.at(row, col) < 0)
      for (std::size_t j = 0; j < w.cols; ++j) w.at(row, j) = -w.at(row, j);
    for (std::size_t i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w.at(i, col).get_mpz_t(), w.at(row, col).get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < w.cols; ++j) w.at(i, j) -= q * w.at(row, j);
    }
    ++row;
  }
  ZMatrix out(row, w.cols);
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < w.cols; ++j) out.at(i, j) = w.at(i, j);
  return out;
}

}  // namespace divlat::nt
