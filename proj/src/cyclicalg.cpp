#include "divlat/cyclicalg.hpp"

#include <stdexcept>

namespace divlat::alg {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_integer(const nt::ZMatrix& z) {
  RationalMatrix m(z.rows, z.cols);
  for (std::size_t i = 0; i < z.rows; ++i)
    for (std::size_t j = 0; j < z.cols; ++j) m.at(i, j) = Rat(z.at(i, j));
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalMatrix qmat_mul(const RationalMatrix& x, const RationalMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("qmat_mul: shape mismatch");
  RationalMatrix z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Rat& v = x.at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

Rat qmat_det(const RationalMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("qmat_det: matrix must be square");
  std::size_t n = m.rows;
  RationalMatrix w = m;
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && w.at(piv, k) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
      det = -det;
    }
    det *= w.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w.at(i, k) == 0) continue;
      Rat f = w.at(i, k) / w.at(k, k);
      for (std::size_t j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
    }
  }
  det.canonicalize();
  return det;
}

RationalMatrix qmat_inverse(const RationalMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("qmat_inverse: matrix must be square");
  std::size_t n = m.rows;
  RationalMatrix w = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && w.at(piv, k) == 0) ++piv;
    if (piv == n) throw std::domain_error("qmat_inverse: singular matrix");
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w.at(k, j), w.at(piv, j));
        std::swap(inv.at(k, j), inv.at(piv, j));
      }
    Rat p = w.at(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      w.at(k, j) /= p;
      inv.at(k, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || w.at(i, k) == 0) continue;
      Rat f = w.at(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        w.at(i, j) -= f * w.at(k, j);
        inv.at(i, j) -= f * inv.at(k, j);
      }
    }
  }
  return inv;
}

AlgebraDesc make_algebra(unsigned m, unsigned r) {
  auto params = amitsur::derive_params(m, r);  // validates the pair
  AlgebraDesc d;
  d.m = m;
  d.r = r;
  d.n = static_cast<unsigned>(params.n.get_ui());
  d.t = static_cast<unsigned>(params.t.get_ui());
  d.phi = static_cast<unsigned>(nt::euler_phi(m).get_ui());
  d.phi_poly = nt::cyclotomic_poly(m);

  // Reductions of mu^k: enough powers for mu^a (a < m) and for products of
  // two power-basis elements (degree up to 2*phi - 2).
  unsigned top = std::max(m, 2 * d.phi - 1);
  d.mu_pow.resize(top);
  d.mu_pow[0] = std::vector<Int>(d.phi);
  d.mu_pow[0][0] = 1;
  for (unsigned k = 1; k < top; ++k) {
    std::vector<Int> cur(d.phi);
    const auto& prev = d.mu_pow[k - 1];
    for (unsigned j = 0; j + 1 < d.phi; ++j) cur[j + 1] = prev[j];
    Int carry = prev[d.phi - 1];
    if (carry != 0)
      for (unsigned j = 0; j < d.phi; ++j) cur[j] -= carry * d.phi_poly.coeffs[j];
    d.mu_pow[k] = std::move(cur);
  }

  d.rpow.resize(d.n);
  unsigned long rp = 1;
  for (unsigned c = 0; c < d.n; ++c) {
    d.rpow[c] = static_cast<unsigned>(rp);
    rp = rp * r % m;
  }

  d.gamma = cyclo_mu_power(d.t, d);
  return d;
}

namespace {

void check_len(const CycloElement& a, const AlgebraDesc& d) {
  if (a.coords.size() != d.phi)
    throw std::invalid_argument("cyclotomic element has wrong length");
}

void check_shape(const AlgElement& x, const AlgebraDesc& d) {
  if (x.comps.size() != d.n) throw std::invalid_argument("algebra element has wrong shape");
  for (const auto& c : x.comps) check_len(c, d);
}

}  // namespace

CycloElement cyclo_zero(const AlgebraDesc& d) {
  return CycloElement{std::vector<Rat>(d.phi)};
}

CycloElement cyclo_one(const AlgebraDesc& d) {
  CycloElement e = cyclo_zero(d);
  e.coords[0] = 1;
  return e;
}

CycloElement cyclo_mu_power(unsigned k, const AlgebraDesc& d) {
  k %= d.m;  // mu^m = 1
  CycloElement e = cyclo_zero(d);
  for (unsigned j = 0; j < d.phi; ++j) e.coords[j] = Rat(d.mu_pow[k][j]);
  return e;
}

CycloElement cyclo_add(const CycloElement& a, const CycloElement& b) {
  if (a.coords.size() != b.coords.size())
    throw std::invalid_argument("cyclo_add: length mismatch");
  CycloElement c = a;
  for (std::size_t i = 0; i < c.coords.size(); ++i) c.coords[i] += b.coords[i];
  return c;
}

CycloElement cyclo_sub(const CycloElement& a, const CycloElement& b) {
  if (a.coords.size() != b.coords.size())
    throw std::invalid_argument("cyclo_sub: length mismatch");
  CycloElement c = a;
  for (std::size_t i = 0; i < c.coords.size(); ++i) c.coords[i] -= b.coords[i];
  return c;
}

bool cyclo_is_zero(const CycloElement& a) {
  for (const Rat& v : a.coords)
    if (v != 0) return false;
  return true;
}

CycloElement cyclo_mul(const CycloElement& a, const CycloElement& b, const AlgebraDesc& d) {
  check_len(a, d);
  check_len(b, d);
  std::vector<Rat> prod(2 * d.phi - 1);
  for (unsigned i = 0; i < d.phi; ++i) {
    if (a.coords[i] == 0) continue;
    for (unsigned j = 0; j < d.phi; ++j) {
      if (b.coords[j] == 0) continue;
      prod[i + j] += a.coords[i] * b.coords[j];
    }
  }
  CycloElement out = cyclo_zero(d);
  for (unsigned k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    for (unsigned j = 0; j < d.phi; ++j)
      if (d.mu_pow[k][j] != 0) out.coords[j] += prod[k] * Rat(d.mu_pow[k][j]);
  }
  return out;
}

namespace {

// Substitution mu -> mu^u, the Galois action for u coprime to m.
CycloElement substitute_power(const CycloElement& a, unsigned u, const AlgebraDesc& d) {
  CycloElement out = cyclo_zero(d);
  for (unsigned i = 0; i < d.phi; ++i) {
    if (a.coords[i] == 0) continue;
    unsigned k = static_cast<unsigned>(static_cast<unsigned long>(i) * u % d.m);
    for (unsigned j = 0; j < d.phi; ++j)
      if (d.mu_pow[k][j] != 0) out.coords[j] += a.coords[i] * Rat(d.mu_pow[k][j]);
  }
  return out;
}

}  // namespace

CycloElement sigma_r(const CycloElement& a, const AlgebraDesc& d) {
  check_len(a, d);
  return substitute_power(a, d.r, d);
}

CycloElement sigma_pow(const CycloElement& a, unsigned c, const AlgebraDesc& d) {
  check_len(a, d);
  return substitute_power(a, d.rpow[c % d.n], d);
}

AlgElement alg_zero(const AlgebraDesc& d) {
  AlgElement x;
  x.comps.assign(d.n, cyclo_zero(d));
  return x;
}

AlgElement alg_one(const AlgebraDesc& d) {
  AlgElement x = alg_zero(d);
  x.comps[0] = cyclo_one(d);
  return x;
}

AlgElement alg_monomial(unsigned a, unsigned c, const AlgebraDesc& d) {
  if (a >= d.m || c >= d.n) throw std::invalid_argument("alg_monomial: exponent range");
  AlgElement x = alg_zero(d);
  x.comps[c] = cyclo_mu_power(a, d);
  return x;
}

AlgElement alg_add(const AlgElement& x, const AlgElement& y) {
  if (x.comps.size() != y.comps.size())
    throw std::invalid_argument("alg_add: shape mismatch");
  AlgElement z = x;
  for (std::size_t c = 0; c < z.comps.size(); ++c)
    z.comps[c] = cyclo_add(z.comps[c], y.comps[c]);
  return z;
}

AlgElement alg_mul(const AlgElement& x, const AlgElement& y, const AlgebraDesc& d) {
  check_shape(x, d);
  check_shape(y, d);
  AlgElement z = alg_zero(d);
  for (unsigned c = 0; c < d.n; ++c) {
    if (cyclo_is_zero(x.comps[c])) continue;
    for (unsigned e = 0; e < d.n; ++e) {
      if (cyclo_is_zero(y.comps[e])) continue;
      // x_c b^c y_e b^e = x_c sigma^c(y_e) b^{c+e}, with b^n = gamma.
      CycloElement term = cyclo_mul(x.comps[c], sigma_pow(y.comps[e], c, d), d);
      unsigned i = c + e;
      if (i >= d.n) {
        i -= d.n;
        term = cyclo_mul(term, d.gamma, d);
      }
      z.comps[i] = cyclo_add(z.comps[i], term);
    }
  }
  return z;
}

std::vector<std::vector<CycloElement>> right_mul_matrix(const AlgElement& y,
                                                        const AlgebraDesc& d) {
  check_shape(y, d);
  std::vector<std::vector<CycloElement>> mat(d.n, std::vector<CycloElement>(d.n));
  for (unsigned i = 0; i < d.n; ++i)
    for (unsigned j = 0; j < d.n; ++j) {
      unsigned src = (i + d.n - j % d.n) % d.n;
      CycloElement e = sigma_pow(y.comps[src], j, d);
      if (i < j) e = cyclo_mul(e, d.gamma, d);
      mat[i][j] = std::move(e);
    }
  return mat;
}

AlgElement apply_right_mul_matrix(const std::vector<std::vector<CycloElement>>& mat,
                                  const AlgElement& x, const AlgebraDesc& d) {
  check_shape(x, d);
  AlgElement z = alg_zero(d);
  for (unsigned i = 0; i < d.n; ++i)
    for (unsigned j = 0; j < d.n; ++j)
      z.comps[i] = cyclo_add(z.comps[i], cyclo_mul(mat[i][j], x.comps[j], d));
  return z;
}

std::vector<Rat> alg_coords(const AlgElement& x, const AlgebraDesc& d) {
  check_shape(x, d);
  std::vector<Rat> v(static_cast<std::size_t>(d.n) * d.phi);
  for (unsigned c = 0; c < d.n; ++c)
    for (unsigned a = 0; a < d.phi; ++a)
      v[static_cast<std::size_t>(c) * d.phi + a] = x.comps[c].coords[a];
  return v;
}

AlgElement alg_from_coords(const std::vector<Rat>& v, const AlgebraDesc& d) {
  if (v.size() != static_cast<std::size_t>(d.n) * d.phi)
    throw std::invalid_argument("alg_from_coords: wrong length");
  AlgElement x = alg_zero(d);
  for (unsigned c = 0; c < d.n; ++c)
    for (unsigned a = 0; a < d.phi; ++a)
      x.comps[c].coords[a] = v[static_cast<std::size_t>(c) * d.phi + a];
  return x;
}

namespace {

RationalMatrix regular_rep(const AlgElement& x, const AlgebraDesc& d, bool left) {
  std::size_t N = static_cast<std::size_t>(d.n) * d.phi;
  RationalMatrix rep(N, N);
  for (unsigned c = 0; c < d.n; ++c)
    for (unsigned a = 0; a < d.phi; ++a) {
      AlgElement basis = alg_zero(d);
      basis.comps[c].coords[a] = 1;
      AlgElement img = left ? alg_mul(x, basis, d) : alg_mul(basis, x, d);
      auto col = alg_coords(img, d);
      std::size_t j = static_cast<std::size_t>(c) * d.phi + a;
      for (std::size_t i = 0; i < N; ++i) rep.at(i, j) = std::move(col[i]);
    }
  return rep;
}

}  // namespace

RationalMatrix left_regular_rep(const AlgElement& x, const AlgebraDesc& d) {
  return regular_rep(x, d, true);
}

RationalMatrix right_regular_rep(const AlgElement& x, const AlgebraDesc& d) {
  return regular_rep(x, d, false);
}

Rat alg_trace(const AlgElement& x, const AlgebraDesc& d) {
  auto rep = left_regular_rep(x, d);
  Rat tr = 0;
  for (std::size_t i = 0; i < rep.rows; ++i) tr += rep.at(i, i);
  tr.canonicalize();
  return tr;
}

Rat alg_norm(const AlgElement& x, const AlgebraDesc& d) {
  return qmat_det(left_regular_rep(x, d));
}

std::vector<GroupElement> group_elements(const AlgebraDesc& d) {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(d.m) * d.n);
  for (unsigned a = 0; a < d.m; ++a)
    for (unsigned c = 0; c < d.n; ++c) out.push_back(GroupElement{a, c});
  return out;
}

GroupElement group_mul(GroupElement x, GroupElement y, const AlgebraDesc& d) {
  // (mu^{a1} b^{c1})(mu^{a2} b^{c2}) = mu^{a1 + a2 r^{c1} + t*wrap} b^{(c1+c2) mod n}
  unsigned long a = x.a + static_cast<unsigned long>(y.a) * d.rpow[x.c];
  unsigned c = x.c + y.c;
  if (c >= d.n) {
    c -= d.n;
    a += d.t;
  }
  return GroupElement{static_cast<unsigned>(a % d.m), c};
}

GroupElement group_inverse(GroupElement x, const AlgebraDesc& d) {
  for (unsigned c = 0; c < d.n; ++c) {
    GroupElement cand{0, c};
    for (unsigned a = 0; a < d.m; ++a) {
      cand.a = a;
      auto p = group_mul(x, cand, d);
      if (p.a == 0 && p.c == 0) {
        auto q = group_mul(cand, x, d);
        if (q.a == 0 && q.c == 0) return cand;
      }
    }
  }
  throw std::logic_error("group_inverse: no inverse found");
}

AlgElement group_to_alg(GroupElement x, const AlgebraDesc& d) {
  return alg_monomial(x.a, x.c, d);
}

std::vector<AlgElement> embed_group(const AlgebraDesc& d) {
  // Verify the presentation relations before handing out the embedding.
  AlgElement A = alg_monomial(1 % d.m, 0, d);
  AlgElement B = d.n > 1 ? alg_monomial(0, 1, d) : alg_monomial(d.t % d.m, 0, d);
  AlgElement acc = alg_one(d);
  for (unsigned i = 0; i < d.m; ++i) acc = alg_mul(acc, A, d);
  if (!(acc == alg_one(d))) throw std::logic_error("embed_group: A^m != 1");
  acc = alg_one(d);
  for (unsigned i = 0; i < d.n; ++i) acc = alg_mul(acc, B, d);
  if (!(acc == alg_monomial(d.t % d.m, 0, d)))
    throw std::logic_error("embed_group: B^n != A^t");
  if (!(alg_mul(B, A, d) == alg_mul(alg_monomial(d.r % d.m, 0, d), B, d)))
    throw std::logic_error("embed_group: BA != A^r B");

  std::vector<AlgElement> out;
  for (auto g : group_elements(d)) out.push_back(group_to_alg(g, d));
  return out;
}

nt::ZMatrix order_basis(const std::vector<AlgElement>& group, const AlgebraDesc& d) {
  std::size_t N = static_cast<std::size_t>(d.n) * d.phi;
  nt::ZMatrix rows(group.size(), N);
  for (std::size_t i = 0; i < group.size(); ++i) {
    auto v = alg_coords(group[i], d);
    for (std::size_t j = 0; j < N; ++j) {
      if (v[j].get_den() != 1)
        throw std::logic_error("order_basis: group coordinates must be integral");
      rows.at(i, j) = v[j].get_num();
    }
  }
  nt::ZMatrix basis = nt::hnf(rows);
  if (basis.rows != N)
    throw std::logic_error("order_basis: group span is not full rank");

  // Order axioms: contains 1, closed under multiplication.
  auto reduces = [&](std::vector<Int> v) {
    for (std::size_t i = 0; i < basis.rows; ++i) {
      std::size_t pc = 0;
      while (pc < basis.cols && basis.at(i, pc) == 0) ++pc;
      if (v[pc] % basis.at(i, pc) != 0) return false;
      Int q = v[pc] / basis.at(i, pc);
      for (std::size_t j = 0; j < basis.cols; ++j) v[j] -= q * basis.at(i, j);
    }
    for (const Int& c : v)
      if (c != 0) return false;
    return true;
  };
  std::vector<Int> one(N);
  one[0] = 1;
  if (!reduces(one)) throw std::logic_error("order_basis: 1 is not in the span");
  std::vector<AlgElement> basis_elems;
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<Rat> v(N);
    for (std::size_t j = 0; j < N; ++j) v[j] = Rat(basis.at(i, j));
    basis_elems.push_back(alg_from_coords(v, d));
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      auto prod = alg_coords(alg_mul(basis_elems[i], basis_elems[j], d), d);
      std::vector<Int> w(N);
      for (std::size_t u = 0; u < N; ++u) {
        if (prod[u].get_den() != 1)
          throw std::logic_error("order_basis: non-integral product coordinate");
        w[u] = prod[u].get_num();
      }
      if (!reduces(std::move(w)))
        throw std::logic_error("order_basis: span is not closed under multiplication");
    }
  return basis;
}

}  // namespace divlat::alg
