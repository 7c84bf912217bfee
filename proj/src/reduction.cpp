#include "divlat/reduction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "divlat/tolerances.hpp"

namespace divlat::red {

Quat operator+(const Quat& a, const Quat& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

Quat operator-(const Quat& a, const Quat& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat operator*(double c, const Quat& a) { return {c * a.w, c * a.x, c * a.y, c * a.z}; }

Quat conj(const Quat& a) { return {a.w, -a.x, -a.y, -a.z}; }

Algebra make_algebra(std::vector<BlockSpec> blocks) {
  if (blocks.empty()) throw std::invalid_argument("algebra needs at least one block");
  for (const auto& b : blocks)
    if (b.size < 1) throw std::invalid_argument("algebra block sizes must be positive");
  return Algebra{std::move(blocks)};
}

Algebra parse_algebra_spec(const std::string& spec) {
  std::vector<BlockSpec> blocks;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    DivisionKind kind;
    switch (spec[pos]) {
      case 'R': kind = DivisionKind::Real; break;
      case 'C': kind = DivisionKind::Complex; break;
      case 'H': kind = DivisionKind::Quaternion; break;
      default: throw std::invalid_argument("algebra spec: expected R, C or H");
    }
    ++pos;
    std::size_t start = pos;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("algebra spec: missing block size");
    unsigned long n = std::stoul(spec.substr(start, pos - start));
    if (n == 0 || n > 16) throw std::invalid_argument("algebra spec: block size out of range");
    blocks.push_back({kind, static_cast<unsigned>(n)});
    if (pos < spec.size()) {
      if (spec[pos] != ',') throw std::invalid_argument("algebra spec: expected comma");
      ++pos;
      if (pos == spec.size()) throw std::invalid_argument("algebra spec: trailing comma");
    }
  }
  if (blocks.empty()) throw std::invalid_argument("algebra spec: empty");
  return make_algebra(std::move(blocks));
}

unsigned scalar_dim(DivisionKind kind) {
  switch (kind) {
    case DivisionKind::Real: return 1;
    case DivisionKind::Complex: return 2;
    case DivisionKind::Quaternion: return 4;
  }
  return 0;
}

unsigned real_dim(const Algebra& a) {
  unsigned d = 0;
  for (const auto& b : a.blocks) d += b.size * b.size * scalar_dim(b.kind);
  return d;
}

Element zero_element(const Algebra& alg) {
  Element x;
  x.blocks.reserve(alg.blocks.size());
  for (const auto& b : alg.blocks) {
    BlockMat m;
    m.n = b.size;
    m.a.assign(static_cast<std::size_t>(b.size) * b.size, Quat{});
    x.blocks.push_back(std::move(m));
  }
  return x;
}

Element identity_element(const Algebra& alg) {
  Element x = zero_element(alg);
  for (auto& m : x.blocks)
    for (std::size_t i = 0; i < m.n; ++i) m.at(i, i).w = 1.0;
  return x;
}

namespace {

void check_same_shape(const Element& x, const Element& y) {
  if (x.blocks.size() != y.blocks.size())
    throw std::invalid_argument("element shapes differ");
  for (std::size_t b = 0; b < x.blocks.size(); ++b)
    if (x.blocks[b].n != y.blocks[b].n)
      throw std::invalid_argument("element shapes differ");
}

}  // namespace

Element scale(double c, const Element& x) {
  Element out = x;
  for (auto& m : out.blocks)
    for (auto& q : m.a) q = c * q;
  return out;
}

Element add(const Element& x, const Element& y) {
  check_same_shape(x, y);
  Element out = x;
  for (std::size_t b = 0; b < out.blocks.size(); ++b)
    for (std::size_t i = 0; i < out.blocks[b].a.size(); ++i)
      out.blocks[b].a[i] = out.blocks[b].a[i] + y.blocks[b].a[i];
  return out;
}

Element sub(const Element& x, const Element& y) {
  check_same_shape(x, y);
  Element out = x;
  for (std::size_t b = 0; b < out.blocks.size(); ++b)
    for (std::size_t i = 0; i < out.blocks[b].a.size(); ++i)
      out.blocks[b].a[i] = out.blocks[b].a[i] - y.blocks[b].a[i];
  return out;
}

Element mul(const Element& x, const Element& y) {
  check_same_shape(x, y);
  Element out;
  out.blocks.reserve(x.blocks.size());
  for (std::size_t b = 0; b < x.blocks.size(); ++b) {
    const BlockMat& p = x.blocks[b];
    const BlockMat& q = y.blocks[b];
    BlockMat r;
    r.n = p.n;
    r.a.assign(static_cast<std::size_t>(p.n) * p.n, Quat{});
    for (std::size_t i = 0; i < p.n; ++i)
      for (std::size_t l = 0; l < p.n; ++l) {
        const Quat& pil = p.at(i, l);
        for (std::size_t j = 0; j < p.n; ++j)
          r.at(i, j) = r.at(i, j) + pil * q.at(l, j);
      }
    out.blocks.push_back(std::move(r));
  }
  return out;
}

Element involute(const Element& x) {
  Element out = x;
  for (auto& m : out.blocks) {
    BlockMat t = m;
    for (std::size_t i = 0; i < m.n; ++i)
      for (std::size_t j = 0; j < m.n; ++j) t.at(i, j) = conj(m.at(j, i));
    m = std::move(t);
  }
  return out;
}

double elem_norm(const Element& x) {
  double s = 0;
  for (const auto& m : x.blocks)
    for (const auto& q : m.a) s += q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
  return std::sqrt(s);
}

namespace {

std::vector<double> to_coords(const Algebra& alg, const Element& x) {
  std::vector<double> out;
  out.reserve(real_dim(alg));
  for (std::size_t b = 0; b < alg.blocks.size(); ++b) {
    unsigned sd = scalar_dim(alg.blocks[b].kind);
    for (const auto& q : x.blocks[b].a) {
      out.push_back(q.w);
      if (sd >= 2) out.push_back(q.x);
      if (sd == 4) {
        out.push_back(q.y);
        out.push_back(q.z);
      }
    }
  }
  return out;
}

Element from_coords(const Algebra& alg, const std::vector<double>& c) {
  Element x = zero_element(alg);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < alg.blocks.size(); ++b) {
    unsigned sd = scalar_dim(alg.blocks[b].kind);
    for (auto& q : x.blocks[b].a) {
      q.w = c[pos++];
      if (sd >= 2) q.x = c[pos++];
      if (sd == 4) {
        q.y = c[pos++];
        q.z = c[pos++];
      }
    }
  }
  return x;
}

Eigen::MatrixXd regular_rep(const Algebra& alg, const Element& x) {
  unsigned d = real_dim(alg);
  Eigen::MatrixXd rep(d, d);
  std::vector<double> unit(d, 0.0);
  for (unsigned j = 0; j < d; ++j) {
    unit[j] = 1.0;
    Element basis = from_coords(alg, unit);
    unit[j] = 0.0;
    auto col = to_coords(alg, mul(x, basis));
    for (unsigned i = 0; i < d; ++i) rep(i, j) = col[i];
  }
  return rep;
}

}  // namespace

double trace_A(const Algebra& alg, const Element& x) {
  return regular_rep(alg, x).trace();
}

double norm_A(const Algebra& alg, const Element& x) {
  return regular_rep(alg, x).determinant();
}

Element inverse_element(const Algebra& alg, const Element& x) {
  unsigned d = real_dim(alg);
  Eigen::MatrixXd rep = regular_rep(alg, x);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(rep);
  if (!lu.isInvertible()) throw std::domain_error("element is not invertible");
  auto one = to_coords(alg, identity_element(alg));
  Eigen::VectorXd rhs(d);
  for (unsigned i = 0; i < d; ++i) rhs(i) = one[i];
  Eigen::VectorXd sol = lu.solve(rhs);
  std::vector<double> c(d);
  for (unsigned i = 0; i < d; ++i) c[i] = sol(i);
  return from_coords(alg, c);
}

AMat amat_zero(const Algebra& alg, unsigned k) {
  AMat m;
  m.k = k;
  m.e.assign(static_cast<std::size_t>(k) * k, zero_element(alg));
  return m;
}

AMat amat_identity(const Algebra& alg, unsigned k) {
  AMat m = amat_zero(alg, k);
  for (std::size_t i = 0; i < k; ++i) m.at(i, i) = identity_element(alg);
  return m;
}

AMat amat_add(const AMat& x, const AMat& y) {
  if (x.k != y.k) throw std::invalid_argument("matrix sizes differ");
  AMat out = x;
  for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] = add(out.e[i], y.e[i]);
  return out;
}

AMat amat_sub(const AMat& x, const AMat& y) {
  if (x.k != y.k) throw std::invalid_argument("matrix sizes differ");
  AMat out = x;
  for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] = sub(out.e[i], y.e[i]);
  return out;
}

AMat amat_scale(double c, const AMat& x) {
  AMat out = x;
  for (auto& e : out.e) e = scale(c, e);
  return out;
}

AMat amat_mul(const AMat& x, const AMat& y) {
  if (x.k != y.k) throw std::invalid_argument("matrix sizes differ");
  AMat out;
  out.k = x.k;
  out.e.reserve(static_cast<std::size_t>(x.k) * x.k);
  for (std::size_t i = 0; i < x.k; ++i)
    for (std::size_t j = 0; j < x.k; ++j) {
      Element acc = mul(x.at(i, 0), y.at(0, j));
      for (std::size_t l = 1; l < x.k; ++l)
        acc = add(acc, mul(x.at(i, l), y.at(l, j)));
      out.e.push_back(std::move(acc));
    }
  return out;
}

AMat involute(const AMat& x) {
  AMat out = x;
  for (std::size_t i = 0; i < x.k; ++i)
    for (std::size_t j = 0; j < x.k; ++j) out.at(i, j) = involute(x.at(j, i));
  return out;
}

double amat_norm(const AMat& x) {
  double s = 0;
  for (const auto& e : x.e) {
    double n = elem_norm(e);
    s += n * n;
  }
  return std::sqrt(s);
}

Algebra expanded_algebra(const Algebra& alg, unsigned k) {
  if (k == 0) throw std::invalid_argument("matrix size must be positive");
  Algebra out;
  out.blocks.reserve(alg.blocks.size());
  for (const auto& b : alg.blocks) out.blocks.push_back({b.kind, b.size * k});
  return out;
}

Element amat_flatten(const Algebra& alg, const AMat& x) {
  Algebra big = expanded_algebra(alg, x.k);
  Element out = zero_element(big);
  for (std::size_t b = 0; b < alg.blocks.size(); ++b) {
    unsigned n = alg.blocks[b].size;
    for (std::size_t bi = 0; bi < x.k; ++bi)
      for (std::size_t bj = 0; bj < x.k; ++bj) {
        const BlockMat& src = x.at(bi, bj).blocks[b];
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            out.blocks[b].at(bi * n + i, bj * n + j) = src.at(i, j);
      }
  }
  return out;
}

namespace {

AMat amat_unflatten(const Algebra& alg, unsigned k, const Element& x) {
  AMat out = amat_zero(alg, k);
  for (std::size_t b = 0; b < alg.blocks.size(); ++b) {
    unsigned n = alg.blocks[b].size;
    for (std::size_t bi = 0; bi < k; ++bi)
      for (std::size_t bj = 0; bj < k; ++bj)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            out.at(bi, bj).blocks[b].at(i, j) = x.blocks[b].at(bi * n + i, bj * n + j);
  }
  return out;
}

}  // namespace

double trace_MkA(const Algebra& alg, const AMat& x) {
  Algebra big = expanded_algebra(alg, x.k);
  return trace_A(big, amat_flatten(alg, x));
}

double norm_MkA(const Algebra& alg, const AMat& x) {
  Algebra big = expanded_algebra(alg, x.k);
  return norm_A(big, amat_flatten(alg, x));
}

AMat amat_inverse(const Algebra& alg, const AMat& x) {
  Algebra big = expanded_algebra(alg, x.k);
  return amat_unflatten(alg, x.k, inverse_element(big, amat_flatten(alg, x)));
}

namespace {

// Gram matrix of trace_A(u^* v) over the coordinate basis of A.
Eigen::MatrixXd beta_gram_base(const Algebra& alg) {
  unsigned d = real_dim(alg);
  std::vector<Element> basis, basis_star;
  basis.reserve(d);
  basis_star.reserve(d);
  std::vector<double> unit(d, 0.0);
  for (unsigned p = 0; p < d; ++p) {
    unit[p] = 1.0;
    basis.push_back(from_coords(alg, unit));
    unit[p] = 0.0;
    basis_star.push_back(involute(basis.back()));
  }
  Eigen::MatrixXd t2(d, d);
  for (unsigned p = 0; p < d; ++p)
    for (unsigned q = 0; q < d; ++q)
      t2(p, q) = trace_A(alg, mul(basis_star[p], basis[q]));
  return t2;
}

void check_symmetric(const AMat& a) {
  AMat diff = amat_sub(a, involute(a));
  if (amat_norm(diff) > tol::symmetry_rel * std::max(1.0, amat_norm(a)))
    throw std::invalid_argument("matrix is not symmetric");
}

}  // namespace

bool is_positive_definite(const Algebra& alg, const AMat& a) {
  check_symmetric(a);
  unsigned d = real_dim(alg);
  unsigned k = a.k;
  Eigen::MatrixXd t2 = beta_gram_base(alg);
  Eigen::MatrixXd gram(k * d, k * d);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) {
      Eigen::MatrixXd block = t2 * regular_rep(alg, a.at(i, j));
      gram.block(i * d, j * d, d, d) = block;
    }
  Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success)
    throw std::domain_error("eigenvalue computation failed");
  return es.eigenvalues().minCoeff() > tol::spd_eig;
}

CholeskyResult block_cholesky(const Algebra& alg, const AMat& a) {
  check_symmetric(a);
  unsigned k = a.k;
  AMat t = amat_identity(alg, k);
  AMat d = amat_zero(alg, k);
  AMat work = a;
  for (unsigned step = 0; step < k; ++step) {
    Element pivot = work.at(step, step);
    AMat probe = amat_zero(alg, 1);
    probe.at(0, 0) = pivot;
    if (!is_positive_definite(alg, probe))
      throw std::domain_error("pivot is not positive definite");
    d.at(step, step) = pivot;
    Element pivot_inv = inverse_element(alg, pivot);
    for (unsigned j = step + 1; j < k; ++j)
      t.at(step, j) = mul(pivot_inv, work.at(step, j));
    for (unsigned u = step + 1; u < k; ++u)
      for (unsigned v = step + 1; v < k; ++v) {
        Element correction = mul(involute(t.at(step, u)), mul(pivot, t.at(step, v)));
        work.at(u, v) = sub(work.at(u, v), correction);
      }
  }
  return CholeskyResult{std::move(t), std::move(d)};
}

Element spd_sqrt(const Algebra& alg, const Element& a) {
  Element astar = involute(a);
  if (elem_norm(sub(a, astar)) > tol::symmetry_rel * std::max(1.0, elem_norm(a)))
    throw std::invalid_argument("element is not symmetric");
  Element y = a;
  Element z = identity_element(alg);
  for (unsigned iter = 0; iter < tol::sqrt_max_iter; ++iter) {
    Element yi = inverse_element(alg, y);
    Element zi = inverse_element(alg, z);
    Element yn = scale(0.5, add(y, zi));
    Element zn = scale(0.5, add(z, yi));
    yn = scale(0.5, add(yn, involute(yn)));
    zn = scale(0.5, add(zn, involute(zn)));
    double step = elem_norm(sub(yn, y));
    y = std::move(yn);
    z = std::move(zn);
    if (step <= tol::sqrt_step * std::max(elem_norm(y), 1e-300)) return y;
  }
  throw std::domain_error("square root iteration did not converge");
}

NormTraceReport norm_trace_check(const Algebra& alg, const Element& a) {
  AMat probe = amat_zero(alg, 1);
  probe.at(0, 0) = a;
  if (!is_positive_definite(alg, probe))
    throw std::invalid_argument("element is not positive definite");
  double d = real_dim(alg);
  NormTraceReport rep;
  rep.lhs = trace_A(alg, a) / d;
  rep.rhs = std::pow(norm_A(alg, a), 1.0 / d);
  rep.holds = rep.lhs >= rep.rhs - tol::norm_trace_slack;
  return rep;
}

KanResult kan_decompose(const Algebra& alg, const AMat& g) {
  double nrm = norm_MkA(alg, g);
  if (std::abs(nrm - 1.0) > tol::kan_norm_window)
    throw std::invalid_argument("input norm must be 1");
  AMat h = amat_mul(involute(g), g);
  CholeskyResult ch = block_cholesky(alg, h);
  AMat a = amat_zero(alg, g.k);
  for (unsigned i = 0; i < g.k; ++i)
    a.at(i, i) = spd_sqrt(alg, ch.d.at(i, i));
  AMat an = amat_mul(a, ch.t);
  AMat kappa = amat_mul(g, amat_inverse(alg, an));
  return KanResult{std::move(kappa), std::move(a), std::move(ch.t)};
}

SiegelReport siegel_member(const Algebra& alg, const AMat& a,
                           const SiegelBounds& bounds) {
  if (bounds.C1 <= 0 || bounds.C2 <= 0 || bounds.norm_floor <= 0)
    throw std::invalid_argument("bounds must be positive");
  if (!is_positive_definite(alg, a))
    throw std::invalid_argument("matrix is not positive definite");
  CholeskyResult ch = block_cholesky(alg, a);
  unsigned k = a.k;
  SiegelReport rep;
  rep.norm_floor_ok = true;
  for (unsigned i = 0; i < k; ++i) {
    const Element& dii = ch.d.at(i, i);
    double tr = trace_A(alg, dii);
    if (tr <= 0 || norm_A(alg, scale(1.0 / tr, dii)) < bounds.norm_floor)
      rep.norm_floor_ok = false;
  }
  rep.trace_chain_ok = true;
  for (unsigned i = 0; i + 1 < k; ++i)
    if (trace_A(alg, ch.d.at(i, i)) > bounds.C1 * trace_A(alg, ch.d.at(i + 1, i + 1)))
      rep.trace_chain_ok = false;
  rep.offdiag_ok = true;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i + 1; j < k; ++j) {
      const Element& tij = ch.t.at(i, j);
      if (trace_A(alg, mul(involute(tij), tij)) > bounds.C2) rep.offdiag_ok = false;
    }
  rep.member = rep.norm_floor_ok && rep.trace_chain_ok && rep.offdiag_ok;
  return rep;
}

namespace {

void check_diagonal(const AMat& a) {
  double scale_ref = 1.0 + amat_norm(a);
  for (std::size_t i = 0; i < a.k; ++i)
    for (std::size_t j = 0; j < a.k; ++j)
      if (i != j && elem_norm(a.at(i, j)) > 1e-12 * scale_ref)
        throw std::invalid_argument("matrix must be diagonal");
}

}  // namespace

double haar_density(const Algebra& alg, const AMat& a_diag) {
  check_diagonal(a_diag);
  unsigned k = a_diag.k;
  unsigned d = real_dim(alg);
  std::vector<double> c(k);
  Element one = identity_element(alg);
  for (unsigned i = 0; i < k; ++i) {
    const Element& x = a_diag.at(i, i);
    double ci = x.blocks[0].at(0, 0).w;
    if (ci <= 0) throw std::invalid_argument("diagonal entries must be positive");
    if (elem_norm(sub(x, scale(ci, one))) > 1e-9 * (std::abs(ci) + 1.0))
      throw std::invalid_argument("diagonal entries must be real multiples of 1");
    c[i] = ci;
  }
  double prod = 1.0;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i + 1; j < k; ++j)
      prod *= std::pow(c[i] / c[j], static_cast<double>(d));
  return prod;
}

double delta_B(const Algebra& alg, const AMat& a_diag) {
  check_diagonal(a_diag);
  unsigned k = a_diag.k;
  std::vector<double> norms(k);
  for (unsigned i = 0; i < k; ++i) {
    norms[i] = norm_A(alg, a_diag.at(i, i));
    if (std::abs(norms[i]) <= tol::singular_floor)
      throw std::domain_error("diagonal entry is singular");
  }
  double prod = 1.0;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i + 1; j < k; ++j) prod *= std::abs(norms[i] / norms[j]);
  return prod;
}

double Rng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::gauss() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Element random_element(const Algebra& alg, Rng& rng) {
  Element x = zero_element(alg);
  for (std::size_t b = 0; b < alg.blocks.size(); ++b) {
    unsigned sd = scalar_dim(alg.blocks[b].kind);
    for (auto& q : x.blocks[b].a) {
      q.w = rng.gauss();
      if (sd >= 2) q.x = rng.gauss();
      if (sd == 4) {
        q.y = rng.gauss();
        q.z = rng.gauss();
      }
    }
  }
  return x;
}

AMat random_amat(const Algebra& alg, unsigned k, Rng& rng) {
  AMat m = amat_zero(alg, k);
  for (auto& e : m.e) e = random_element(alg, rng);
  return m;
}

AMat random_spd_amat(const Algebra& alg, unsigned k, Rng& rng) {
  AMat p = random_amat(alg, k, rng);
  AMat a = amat_mul(involute(p), p);
  return amat_add(a, amat_scale(1e-3, amat_identity(alg, k)));
}

}  // namespace divlat::red
