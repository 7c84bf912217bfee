#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace divlat::red {

enum class DivisionKind { Real, Complex, Quaternion };

// Uniform scalar storage; Real blocks use w only, Complex blocks w and x.
struct Quat {
  double w = 0, x = 0, y = 0, z = 0;
};

Quat operator+(const Quat&, const Quat&);
Quat operator-(const Quat&, const Quat&);
Quat operator*(const Quat&, const Quat&);
Quat operator*(double, const Quat&);
Quat conj(const Quat&);

struct BlockSpec {
  DivisionKind kind;
  unsigned size;  // block is the full size x size matrix algebra over kind
};

struct Algebra {
  std::vector<BlockSpec> blocks;
};

// Validates: at least one block, sizes >= 1.
Algebra make_algebra(std::vector<BlockSpec> blocks);

// Comma list of R{n} | C{n} | H{n}, e.g. "H1,R2".
Algebra parse_algebra_spec(const std::string& spec);

unsigned scalar_dim(DivisionKind kind);  // 1, 2, 4
unsigned real_dim(const Algebra& a);     // sum of size^2 * scalar_dim

// One block's dense matrix.
struct BlockMat {
  unsigned n = 0;
  std::vector<Quat> a;

  Quat& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Quat& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct Element {
  std::vector<BlockMat> blocks;
};

Element zero_element(const Algebra& alg);
Element identity_element(const Algebra& alg);
Element scale(double c, const Element& x);
Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element mul(const Element& x, const Element& y);
Element involute(const Element& x);  // blockwise conjugate transpose
double elem_norm(const Element& x);  // coordinate 2-norm

// Real left-regular-representation trace and determinant.
double trace_A(const Algebra& alg, const Element& x);
double norm_A(const Algebra& alg, const Element& x);
Element inverse_element(const Algebra& alg, const Element& x);

// Square matrix over the algebra.
struct AMat {
  unsigned k = 0;
  std::vector<Element> e;

  Element& at(std::size_t i, std::size_t j) { return e[i * k + j]; }
  const Element& at(std::size_t i, std::size_t j) const { return e[i * k + j]; }
};

AMat amat_zero(const Algebra& alg, unsigned k);
AMat amat_identity(const Algebra& alg, unsigned k);
AMat amat_add(const AMat& x, const AMat& y);
AMat amat_sub(const AMat& x, const AMat& y);
AMat amat_scale(double c, const AMat& x);
AMat amat_mul(const AMat& x, const AMat& y);
AMat involute(const AMat& x);  // entry (i,j) -> involute of entry (j,i)
double amat_norm(const AMat& x);

// M_k(A) folded into one semisimple algebra with blocks scaled by k.
Algebra expanded_algebra(const Algebra& alg, unsigned k);
Element amat_flatten(const Algebra& alg, const AMat& x);
double trace_MkA(const Algebra& alg, const AMat& x);
double norm_MkA(const Algebra& alg, const AMat& x);
AMat amat_inverse(const Algebra& alg, const AMat& x);

// Real Gram matrix of (x, y) -> sum_ij trace_A(x_i^* a_ij y_j) has all
// eigenvalues above tolerance. Throws on non-symmetric input.
bool is_positive_definite(const Algebra& alg, const AMat& a);

struct CholeskyResult {
  AMat t;  // upper triangular with identity diagonal
  AMat d;  // diagonal, each pivot positive definite in A
};

// a = involute(t) * d * t. Throws if a is not symmetric or a pivot fails
// the positive definiteness test.
CholeskyResult block_cholesky(const Algebra& alg, const AMat& a);

// b symmetric positive definite with b*b = a, by the coupled averaging
// iteration with inverses taken inside the algebra.
Element spd_sqrt(const Algebra& alg, const Element& a);

struct NormTraceReport {
  double lhs = 0;  // trace_A(a) / real_dim
  double rhs = 0;  // norm_A(a)^(1/real_dim)
  bool holds = false;
};

// Arithmetic-geometric mean comparison for symmetric positive definite a.
NormTraceReport norm_trace_check(const Algebra& alg, const Element& a);

struct KanResult {
  AMat kappa;  // involute(kappa)*kappa = identity
  AMat a;      // diagonal, positive definite pivots
  AMat n;      // upper triangular, identity diagonal
};

// g = kappa * a * n for invertible g with norm close to 1.
KanResult kan_decompose(const Algebra& alg, const AMat& g);

struct SiegelBounds {
  double C1 = 0;
  double C2 = 0;
  double norm_floor = 0;
};

struct SiegelReport {
  bool norm_floor_ok = false;   // norm of trace-normalized pivots bounded below
  bool trace_chain_ok = false;  // trace(d_ii) <= C1 * trace(d_(i+1)(i+1))
  bool offdiag_ok = false;      // trace(t_ij^* t_ij) <= C2
  bool member = false;
};

SiegelReport siegel_member(const Algebra& alg, const AMat& a,
                           const SiegelBounds& bounds);

// Product over i<j of (c_i/c_j)^real_dim for a diagonal matrix whose entries
// are positive real multiples c_i * 1 of the identity.
double haar_density(const Algebra& alg, const AMat& a_diag);

// Product over i<j of |norm_A(a_ii) / norm_A(a_jj)| for an invertible
// diagonal matrix.
double delta_B(const Algebra& alg, const AMat& a_diag);

// Deterministic Gaussian source; identical streams across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform();  // [0, 1)
  double gauss();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

Element random_element(const Algebra& alg, Rng& rng);
AMat random_amat(const Algebra& alg, unsigned k, Rng& rng);
AMat random_spd_amat(const Algebra& alg, unsigned k, Rng& rng);  // p*p + ridge

}  // namespace divlat::red
