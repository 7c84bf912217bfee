#pragma once

#include <iosfwd>
#include <stdexcept>

#include "divlat/cyclicalg.hpp"

namespace divlat::lat {

// Enumeration is exponential in the dimension; callers hit this guard before
// any work starts.
class DimensionGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kDefaultDimensionGuard = 24;

struct GramForm {
  alg::RationalMatrix mat;

  std::size_t dim() const { return mat.rows; }
};

// All leading principal minors positive, checked in exact arithmetic.
bool is_positive_definite_exact(const alg::RationalMatrix& m);

// Validates squareness, symmetry, positive definiteness.
GramForm make_gram_form(alg::RationalMatrix m);

struct LatticeInstance {
  GramForm gram;  // dimension 2N, two diagonal copies of the averaged N-form
  Int group_order;
  unsigned m = 0, r = 0;
  // Block-diagonal integer matrices of the right action of g^{-1} on both
  // copies of the order, one per group element. Empty when the instance was
  // loaded from a document.
  std::vector<nt::ZMatrix> right_action_mats;
};

// Sum over the group of R^T R for the right-multiplication matrices in the
// order basis, duplicated over two copies of the order.
LatticeInstance averaged_gram(unsigned m, unsigned r);

struct LllResult {
  nt::ZMatrix transform;        // unimodular T with reduced = T^T G T
  alg::RationalMatrix reduced;  // Lovasz-reduced Gram matrix
};

LllResult lll_reduce(const GramForm& gram, const Rat& delta);
Rat default_lll_delta();  // 99/100

struct SvpResult {
  Rat min_value;
  std::vector<Int> coeffs;  // attaining vector, coordinates in the input basis
};

// Minimum of v^T G v over nonzero integer vectors, exact. LLL preprocessing,
// float enumeration with margin, exact re-verification of candidates.
SvpResult shortest_vector(const GramForm& gram,
                          unsigned dim_guard = kDefaultDimensionGuard);

// Number of nonzero integer vectors with v^T G v <= radius_sq, exact.
Int count_points(const LatticeInstance& inst, const Rat& radius_sq,
                 unsigned dim_guard = kDefaultDimensionGuard);

// Fraction of space covered by balls of radius sqrt(lambda1)/2 centered at
// lattice points: vol_d(sqrt(lambda1)/2) / sqrt(det G).
double packing_efficiency(const LatticeInstance& inst,
                          unsigned dim_guard = kDefaultDimensionGuard);

// True when every nonzero lattice vector of squared length <= 2*lambda1 has
// a right-action orbit with exactly group_order distinct elements.
bool orbit_check(const LatticeInstance& inst,
                 unsigned dim_guard = kDefaultDimensionGuard);

// Document form: dim, m, r, group_order, gram as exact rational strings,
// generated_by. Reading leaves right_action_mats empty.
void write_json(const LatticeInstance& inst, std::ostream& os);
LatticeInstance read_json(std::istream& is);

}  // namespace divlat::lat
