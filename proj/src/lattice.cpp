#include "divlat/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <set>

#include "divlat/amitsur.hpp"
#include "divlat/tolerances.hpp"
#include "divlat/version.hpp"

namespace divlat::lat {

using alg::RationalMatrix;

bool is_positive_definite_exact(const RationalMatrix& m) {
  if (m.rows != m.cols) return false;
  std::size_t n = m.rows;
  RationalMatrix w = m;
  // Pivots of symmetric elimination are quotients of consecutive leading
  // principal minors; all positive iff all minors positive.
  for (std::size_t k = 0; k < n; ++k) {
    if (w.at(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w.at(i, k) == 0) continue;
      Rat f = w.at(i, k) / w.at(k, k);
      for (std::size_t j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
    }
  }
  return true;
}

GramForm make_gram_form(RationalMatrix m) {
  if (m.rows != m.cols) throw std::invalid_argument("gram matrix must be square");
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m.at(i, j) != m.at(j, i))
        throw std::invalid_argument("gram matrix must be symmetric");
  if (!is_positive_definite_exact(m))
    throw std::invalid_argument("gram matrix must be positive definite");
  return GramForm{std::move(m)};
}

LatticeInstance averaged_gram(unsigned m, unsigned r) {
  auto decision = amitsur::is_division(m, r);
  if (!decision.division)
    throw std::invalid_argument("averaged_gram: (m, r) is not a division pair");
  auto desc = alg::make_algebra(m, r);
  auto nf = alg::group_elements(desc);
  auto group = alg::embed_group(desc);
  auto basis = alg::order_basis(group, desc);
  std::size_t N = basis.rows;

  auto bt = RationalMatrix::from_integer(basis).transpose();
  auto bt_inv = alg::qmat_inverse(bt);

  RationalMatrix sum(N, N);
  std::vector<nt::ZMatrix> acts;
  acts.reserve(nf.size());
  for (auto g : nf) {
    auto u = alg::group_inverse(g, desc);
    auto rep = alg::right_regular_rep(alg::group_to_alg(u, desc), desc);
    auto s = alg::qmat_mul(alg::qmat_mul(bt_inv, rep), bt);
    nt::ZMatrix sz(N, N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        if (s.at(i, j).get_den() != 1)
          throw std::logic_error("averaged_gram: action matrix must be integral");
        sz.at(i, j) = s.at(i, j).get_num();
      }
    auto st = s.transpose();
    auto sts = alg::qmat_mul(st, s);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) sum.at(i, j) += sts.at(i, j);

    nt::ZMatrix block(2 * N, 2 * N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        block.at(i, j) = sz.at(i, j);
        block.at(N + i, N + j) = sz.at(i, j);
      }
    acts.push_back(std::move(block));
  }

  RationalMatrix big(2 * N, 2 * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      big.at(i, j) = sum.at(i, j);
      big.at(N + i, N + j) = sum.at(i, j);
    }

  LatticeInstance inst;
  inst.gram = make_gram_form(std::move(big));
  inst.group_order = Int(nf.size());
  inst.m = m;
  inst.r = r;
  inst.right_action_mats = std::move(acts);
  return inst;
}

namespace {

struct Gso {
  std::vector<std::vector<Rat>> mu;  // mu[i][j] for j < i
  std::vector<Rat> B;                // squared Gram-Schmidt norms
};

Gso exact_gso(const RationalMatrix& g) {
  std::size_t n = g.rows;
  Gso out;
  out.mu.assign(n, {});
  out.B.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    out.mu[i].assign(i, Rat(0));
    for (std::size_t j = 0; j < i; ++j) {
      Rat t = g.at(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= out.mu[i][k] * out.mu[j][k] * out.B[k];
      out.mu[i][j] = t / out.B[j];
    }
    Rat b = g.at(i, i);
    for (std::size_t k = 0; k < i; ++k) b -= out.mu[i][k] * out.mu[i][k] * out.B[k];
    if (b <= 0) throw std::domain_error("gram matrix is not positive definite");
    out.B[i] = b;
  }
  return out;
}

Int round_nearest(const Rat& x) {
  Int num = 2 * x.get_num() + x.get_den();
  Int den = 2 * x.get_den();
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

// Subtract q times row j from row i of the Gram matrix (rows and columns,
// since G tracks inner products of the basis rows) and of the row transform.
void row_op(RationalMatrix& g, nt::ZMatrix& u, std::size_t i, std::size_t j,
            const Int& q) {
  std::size_t n = g.rows;
  Rat qr(q);
  for (std::size_t k = 0; k < n; ++k) g.at(i, k) -= qr * g.at(j, k);
  for (std::size_t k = 0; k < n; ++k) g.at(k, i) -= qr * g.at(k, j);
  for (std::size_t k = 0; k < n; ++k) u.at(i, k) -= q * u.at(j, k);
}

void row_swap(RationalMatrix& g, nt::ZMatrix& u, std::size_t i, std::size_t j) {
  std::size_t n = g.rows;
  for (std::size_t k = 0; k < n; ++k) std::swap(g.at(i, k), g.at(j, k));
  for (std::size_t k = 0; k < n; ++k) std::swap(g.at(k, i), g.at(k, j));
  for (std::size_t k = 0; k < n; ++k) std::swap(u.at(i, k), u.at(j, k));
}

}  // namespace

Rat default_lll_delta() { return Rat(99, 100); }

LllResult lll_reduce(const GramForm& gram, const Rat& delta) {
  if (delta <= Rat(1, 4) || delta >= 1)
    throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");
  std::size_t n = gram.dim();
  RationalMatrix g = gram.mat;
  nt::ZMatrix u = nt::ZMatrix::identity(n);
  if (n <= 1) return LllResult{std::move(u), std::move(g)};

  std::size_t k = 1;
  while (k < n) {
    Gso gso = exact_gso(g);
    for (std::size_t j = k; j-- > 0;) {
      Int q = round_nearest(gso.mu[k][j]);
      if (q != 0) {
        row_op(g, u, k, j, q);
        for (std::size_t l = 0; l < j; ++l) gso.mu[k][l] -= Rat(q) * gso.mu[j][l];
        gso.mu[k][j] -= Rat(q);
      }
    }
    Rat lhs = gso.B[k];
    Rat rhs = (delta - gso.mu[k][k - 1] * gso.mu[k][k - 1]) * gso.B[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      row_swap(g, u, k, k - 1);
      k = k > 1 ? k - 1 : 1;
    }
  }
  // Row convention internally: rows of u are the new basis, so the reduced
  // Gram is u G u^T; report the column-convention transform T = u^T.
  return LllResult{u.transpose(), std::move(g)};
}

namespace {

Rat eval_form(const RationalMatrix& g, const std::vector<long long>& w) {
  Rat acc = 0;
  std::size_t n = g.rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j] == 0) continue;
      acc += g.at(i, j) *
             Rat(Int(static_cast<long>(w[i])) * Int(static_cast<long>(w[j])));
    }
  }
  acc.canonicalize();
  return acc;
}

// Depth-first tree walk over integer coefficient vectors with float value
// under the (mutable) bound; calls visit on every complete nonzero vector
// inside the padded radius. Exact filtering is the caller's job.
void enumerate_box(const Gso& gso, const std::function<double()>& bound,
                   const std::function<void(const std::vector<long long>&)>& visit) {
  int n = static_cast<int>(gso.B.size());
  std::vector<double> bd(n);
  std::vector<std::vector<double>> mud(n);
  for (int i = 0; i < n; ++i) {
    bd[i] = gso.B[i].get_d();
    mud[i].resize(i);
    for (int j = 0; j < i; ++j) mud[i][j] = gso.mu[i][j].get_d();
  }
  std::vector<long long> w(n, 0);
  std::function<void(int, double)> dfs = [&](int i, double partial) {
    if (i < 0) {
      for (long long v : w)
        if (v != 0) {
          visit(w);
          return;
        }
      return;
    }
    double ci = 0;
    for (int j = i + 1; j < n; ++j)
      if (w[j] != 0) ci += mud[j][i] * static_cast<double>(w[j]);
    double rem = bound() - partial;
    if (rem < 0) return;
    double rad = std::sqrt(rem / bd[i]) + tol::enum_abs;
    long long lo = static_cast<long long>(std::ceil(-ci - rad));
    long long hi = static_cast<long long>(std::floor(-ci + rad));
    for (long long cand = lo; cand <= hi; ++cand) {
      double term = bd[i] * (cand + ci) * (cand + ci);
      if (partial + term > bound() + tol::enum_abs) continue;
      w[i] = cand;
      dfs(i - 1, partial + term);
    }
    w[i] = 0;
  };
  dfs(n - 1, 0.0);
}

std::vector<Int> apply_transform(const nt::ZMatrix& t, const std::vector<long long>& w) {
  std::vector<Int> v(t.rows);
  for (std::size_t i = 0; i < t.rows; ++i)
    for (std::size_t j = 0; j < t.cols; ++j)
      if (w[j] != 0) v[i] += t.at(i, j) * Int(static_cast<long>(w[j]));
  return v;
}

}  // namespace

SvpResult shortest_vector(const GramForm& gram, unsigned dim_guard) {
  std::size_t n = gram.dim();
  if (n == 0) throw std::invalid_argument("shortest_vector: empty form");
  if (n > dim_guard)
    throw DimensionGuardError("dimension " + std::to_string(n) +
                              " exceeds the enumeration guard " +
                              std::to_string(dim_guard));
  auto red = lll_reduce(gram, default_lll_delta());
  Gso gso = exact_gso(red.reduced);

  Rat best = red.reduced.at(0, 0);
  std::vector<long long> best_w(n, 0);
  best_w[0] = 1;
  for (std::size_t i = 1; i < n; ++i)
    if (red.reduced.at(i, i) < best) {
      best = red.reduced.at(i, i);
      best_w.assign(n, 0);
      best_w[i] = 1;
    }

  auto bound = [&] { return best.get_d() * (1.0 + tol::enum_margin) + tol::enum_abs; };
  enumerate_box(gso, bound, [&](const std::vector<long long>& w) {
    Rat val = eval_form(red.reduced, w);
    if (val < best) {
      best = val;
      best_w = w;
    }
  });

  SvpResult res;
  res.min_value = best;
  res.coeffs = apply_transform(red.transform, best_w);
  return res;
}

Int count_points(const LatticeInstance& inst, const Rat& radius_sq, unsigned dim_guard) {
  if (radius_sq < 0) throw std::invalid_argument("count_points: negative radius");
  std::size_t n = inst.gram.dim();
  if (n > dim_guard)
    throw DimensionGuardError("dimension " + std::to_string(n) +
                              " exceeds the enumeration guard " +
                              std::to_string(dim_guard));
  auto red = lll_reduce(inst.gram, default_lll_delta());
  Gso gso = exact_gso(red.reduced);
  double cap = radius_sq.get_d() * (1.0 + tol::enum_margin) + tol::enum_abs;
  Int count = 0;
  enumerate_box(
      gso, [&] { return cap; },
      [&](const std::vector<long long>& w) {
        if (eval_form(red.reduced, w) <= radius_sq) ++count;
      });
  return count;
}

double packing_efficiency(const LatticeInstance& inst, unsigned dim_guard) {
  auto svp = shortest_vector(inst.gram, dim_guard);
  double d = static_cast<double>(inst.gram.dim());
  double lambda1 = svp.min_value.get_d();
  double det = alg::qmat_det(inst.gram.mat).get_d();
  double log_vol = (d / 2) * std::log(M_PI) + d * std::log(std::sqrt(lambda1) / 2.0) -
                   std::lgamma(d / 2 + 1);
  return std::exp(log_vol - 0.5 * std::log(det));
}

bool orbit_check(const LatticeInstance& inst, unsigned dim_guard) {
  if (inst.right_action_mats.empty())
    throw std::invalid_argument("orbit_check: instance carries no action matrices");
  std::size_t n = inst.gram.dim();
  if (n > dim_guard)
    throw DimensionGuardError("dimension " + std::to_string(n) +
                              " exceeds the enumeration guard " +
                              std::to_string(dim_guard));
  auto svp = shortest_vector(inst.gram, dim_guard);
  Rat radius = 2 * svp.min_value;

  auto red = lll_reduce(inst.gram, default_lll_delta());
  Gso gso = exact_gso(red.reduced);
  double cap = radius.get_d() * (1.0 + tol::enum_margin) + tol::enum_abs;
  std::vector<std::vector<Int>> sample;
  enumerate_box(
      gso, [&] { return cap; },
      [&](const std::vector<long long>& w) {
        if (eval_form(red.reduced, w) <= radius)
          sample.push_back(apply_transform(red.transform, w));
      });

  for (const auto& v : sample) {
    std::set<std::vector<Int>> orbit;
    for (const auto& act : inst.right_action_mats) {
      std::vector<Int> img(act.rows);
      for (std::size_t i = 0; i < act.rows; ++i)
        for (std::size_t j = 0; j < act.cols; ++j)
          if (v[j] != 0) img[i] += act.at(i, j) * v[j];
      orbit.insert(std::move(img));
    }
    if (Int(orbit.size()) != inst.group_order) return false;
  }
  return true;
}

void write_json(const LatticeInstance& inst, std::ostream& os) {
  nlohmann::json j;
  j["dim"] = inst.gram.dim();
  j["m"] = inst.m;
  j["r"] = inst.r;
  j["group_order"] = inst.group_order.get_ui();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < inst.gram.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < inst.gram.dim(); ++k)
      row.push_back(inst.gram.mat.at(i, k).get_str());
    rows.push_back(std::move(row));
  }
  j["gram"] = std::move(rows);
  j["generated_by"] = std::string(kToolVersion);
  os << j.dump(2) << "\n";
}

LatticeInstance read_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("lattice document parse error: ") + e.what());
  }
  for (const char* key : {"dim", "m", "r", "group_order", "gram"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("lattice document missing field: ") + key);
  std::size_t dim = j.at("dim").get<std::size_t>();
  const auto& rows = j.at("gram");
  if (!rows.is_array() || rows.size() != dim)
    throw std::invalid_argument("lattice document gram has wrong shape");
  RationalMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || row.size() != dim)
      throw std::invalid_argument("lattice document gram has wrong shape");
    for (std::size_t k = 0; k < dim; ++k) {
      try {
        Rat v(row.at(k).get<std::string>());
        v.canonicalize();
        g.at(i, k) = std::move(v);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("lattice document gram entry is not a rational");
      }
    }
  }
  LatticeInstance inst;
  inst.gram = make_gram_form(std::move(g));
  inst.group_order = Int(j.at("group_order").get<unsigned long>());
  inst.m = j.at("m").get<unsigned>();
  inst.r = j.at("r").get<unsigned>();
  return inst;
}

}  // namespace divlat::lat
