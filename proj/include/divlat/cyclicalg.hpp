#pragma once

#include <cstddef>
#include <vector>

#include "divlat/amitsur.hpp"
#include "divlat/numtheory.hpp"

namespace divlat::alg {

// Dense matrix over Q, row major, exact arithmetic.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rat> a;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_integer(const nt::ZMatrix& m);
  RationalMatrix transpose() const;

  bool operator==(const RationalMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

RationalMatrix qmat_mul(const RationalMatrix& x, const RationalMatrix& y);
Rat qmat_det(const RationalMatrix& m);
// Throws std::domain_error on singular input.
RationalMatrix qmat_inverse(const RationalMatrix& m);

// Element of Q(mu_m) over the power basis 1, mu, ..., mu^{phi(m)-1} mod Phi_m.
struct CycloElement {
  std::vector<Rat> coords;

  bool operator==(const CycloElement& o) const { return coords == o.coords; }
};

// Element of the cyclic algebra, comps[c] the coefficient of b^c.
struct AlgElement {
  std::vector<CycloElement> comps;

  bool operator==(const AlgElement& o) const { return comps == o.comps; }
};

// Precomputed data for U_{m,r}: the cyclotomic modulus, reductions of all
// mu powers, the powers of r mod m, and gamma = mu^t.
struct AlgebraDesc {
  unsigned m = 1, r = 1, n = 1, t = 1;
  unsigned phi = 1;
  nt::IntPoly phi_poly;
  std::vector<std::vector<Int>> mu_pow;  // mu^k in the power basis, 0 <= k < max(m, 2*phi-1)
  std::vector<unsigned> rpow;            // r^c mod m for 0 <= c < n
  CycloElement gamma;
};

AlgebraDesc make_algebra(unsigned m, unsigned r);

CycloElement cyclo_zero(const AlgebraDesc& d);
CycloElement cyclo_one(const AlgebraDesc& d);
// mu^k reduced into the power basis; any k >= 0.
CycloElement cyclo_mu_power(unsigned k, const AlgebraDesc& d);
CycloElement cyclo_add(const CycloElement& a, const CycloElement& b);
CycloElement cyclo_sub(const CycloElement& a, const CycloElement& b);
CycloElement cyclo_mul(const CycloElement& a, const CycloElement& b, const AlgebraDesc& d);
bool cyclo_is_zero(const CycloElement& a);

// The automorphism mu -> mu^r.
CycloElement sigma_r(const CycloElement& a, const AlgebraDesc& d);
// sigma_r applied c times, via mu -> mu^{r^c}.
CycloElement sigma_pow(const CycloElement& a, unsigned c, const AlgebraDesc& d);

AlgElement alg_zero(const AlgebraDesc& d);
AlgElement alg_one(const AlgebraDesc& d);
// mu^a b^c as an algebra element; requires a < m, c < n.
AlgElement alg_monomial(unsigned a, unsigned c, const AlgebraDesc& d);
AlgElement alg_add(const AlgElement& x, const AlgElement& y);
AlgElement alg_mul(const AlgElement& x, const AlgElement& y, const AlgebraDesc& d);

// Matrix of right multiplication by y acting on coordinate columns over E:
// entry (i, j) is sigma^j(y_{(i-j) mod n}), times gamma when i < j.
std::vector<std::vector<CycloElement>> right_mul_matrix(const AlgElement& y,
                                                        const AlgebraDesc& d);
// The same matrix applied to x; equals alg_mul(x, y).
AlgElement apply_right_mul_matrix(const std::vector<std::vector<CycloElement>>& mat,
                                  const AlgElement& x, const AlgebraDesc& d);

// Flat coordinates over the Q-basis mu^a b^c, index c*phi + a.
std::vector<Rat> alg_coords(const AlgElement& x, const AlgebraDesc& d);
AlgElement alg_from_coords(const std::vector<Rat>& v, const AlgebraDesc& d);

// N x N matrices of left / right multiplication on that basis, N = n*phi.
RationalMatrix left_regular_rep(const AlgElement& x, const AlgebraDesc& d);
RationalMatrix right_regular_rep(const AlgElement& x, const AlgebraDesc& d);

Rat alg_trace(const AlgElement& x, const AlgebraDesc& d);
Rat alg_norm(const AlgElement& x, const AlgebraDesc& d);

// Group element mu^a b^c in normal form.
struct GroupElement {
  unsigned a = 0, c = 0;

  bool operator==(const GroupElement& o) const { return a == o.a && c == o.c; }
};

std::vector<GroupElement> group_elements(const AlgebraDesc& d);
GroupElement group_mul(GroupElement x, GroupElement y, const AlgebraDesc& d);
GroupElement group_inverse(GroupElement x, const AlgebraDesc& d);
AlgElement group_to_alg(GroupElement x, const AlgebraDesc& d);

// All m*n group elements as algebra elements, same order as group_elements.
// Verifies the defining relations of the group presentation.
std::vector<AlgElement> embed_group(const AlgebraDesc& d);

// HNF basis (rows) of the Z-span of the group inside the coordinate lattice.
// Verifies the order axioms: contains 1, full rank over Q, closed under
// multiplication.
nt::ZMatrix order_basis(const std::vector<AlgElement>& group, const AlgebraDesc& d);

}  // namespace divlat::alg
