#include "divlat/amitsur.hpp"

#include <stdexcept>

namespace divlat::amitsur {

namespace {

// Order of a modulo n, with the trivial modulus allowed: everything is
// congruent mod 1, so the order is 1.
Int order_allowing_one(const Int& a, const Int& n) {
  if (n == 1) return 1;
  return nt::multiplicative_order(a, n);
}

void check_pair(const Int& m, const Int& r) {
  if (m < 1 || r < 1) throw std::invalid_argument("parameters must be positive");
  if (r > m) throw std::invalid_argument("require r <= m");
  if (gcd(m, r) != 1) throw std::invalid_argument("require gcd(m, r) = 1");
}

}  // namespace

AmitsurParams derive_params(const Int& m, const Int& r) {
  check_pair(m, r);
  AmitsurParams p;
  p.m = m;
  p.r = r;
  if (r == 1) {
    p.n = 1;
    p.s = 1;
    p.t = m;
  } else {
    p.n = nt::multiplicative_order(r, m);
    p.s = gcd(r - 1, m);
    p.t = m / p.s;
  }
  return p;
}

DivisionDecision is_division(const Int& m, const Int& r) {
  check_pair(m, r);
  DivisionDecision d;
  d.params = derive_params(m, r);
  if (r == 1) {
    // Commutative case: the algebra is the cyclotomic field itself.
    d.field_case = true;
    d.division = true;
    d.cond_coprime = true;
    return d;
  }
  const Int &n = d.params.n, &s = d.params.s, &t = d.params.t;

  // Clause 1 branch (a).
  d.cond_coprime = gcd(n, t) == 1;

  // Clause 1 branch (b): n = 2n', m = 2^alpha m', s = 2s' with alpha >= 2 and
  // m', s', n' odd, gcd(n,t) = gcd(s,t) = 2, and 2^alpha | r + 1.
  if (!d.cond_coprime) {
    Int mm = m;
    unsigned alpha = 0;
    while (mm % 2 == 0) {
      mm /= 2;
      ++alpha;
    }
    bool shape = n % 2 == 0 && (n / 2) % 2 == 1 && s % 2 == 0 && (s / 2) % 2 == 1 &&
                 alpha >= 2 && mm % 2 == 1;
    if (shape && gcd(n, t) == 2 && gcd(s, t) == 2) {
      Int two_alpha = Int(1) << alpha;
      d.cond_even_split = (r + 1) % two_alpha == 0;
    }
  }

  // Clause 2 branch (a).
  d.cond_quaternionic = n == 2 && s == 2 && (r + 1) % m == 0;

  // Clause 2 branch (b): a witness for every prime divisor of n.
  if (!d.cond_quaternionic) {
    bool all_ok = true;
    for (const auto& [q, qe] : nt::factor(n).factors) {
      (void)qe;
      QWitness w;
      w.q = q;
      for (const auto& [p, pe] : nt::factor(m).factors) {
        Int palpha = 1;
        for (unsigned i = 0; i < pe; ++i) palpha *= p;
        Int mprime = m / palpha;
        if (order_allowing_one(r, mprime) % q == 0) continue;
        w.p = p;
        w.delta = order_allowing_one(p, mprime);
        if (p != 2) {
          w.odd_prime_branch = true;
          Int pd = 1;
          for (Int i = 0; i < w.delta; ++i) pd *= p;
          if ((pd - 1) % s != 0) {
            w.nonintegral_ratio = true;
          } else {
            w.satisfied = gcd(q, (pd - 1) / s) == 1;
          }
        } else if (q == 2) {
          w.even_prime_branch = true;
          w.satisfied = m % 4 == 0 && (m / 4) % 2 == 1 && w.delta % 2 == 1;
        }
        break;
      }
      d.nonintegral_flag = d.nonintegral_flag || w.nonintegral_ratio;
      all_ok = all_ok && w.satisfied;
      d.witnesses.push_back(std::move(w));
    }
    d.cond_primewise = all_ok;
  }

  d.division = (d.cond_coprime || d.cond_even_split) &&
               (d.cond_quaternionic || d.cond_primewise);
  return d;
}

std::optional<Int> unique_p_for_q(const Int& q, const Int& m, const Int& r) {
  check_pair(m, r);
  if (!nt::is_prime(q)) throw std::invalid_argument("q must be prime");
  Int n = r == 1 ? Int(1) : nt::multiplicative_order(r, m);
  if (n % q != 0) throw std::invalid_argument("q must divide the order of r mod m");
  std::optional<Int> found;
  for (const auto& [p, pe] : nt::factor(m).factors) {
    Int palpha = 1;
    for (unsigned i = 0; i < pe; ++i) palpha *= p;
    if (order_allowing_one(r, m / palpha) % q != 0) {
      if (found) throw std::logic_error("matching prime is provably unique");
      found = p;
    }
  }
  return found;
}

bool tstar_compatible(const Int& m, const Int& r) {
  check_pair(m, r);
  if (m % 2 == 0) return false;
  if (!is_division(m, r).division) return false;
  return order_allowing_one(2, m) % 2 == 1;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Gmr: return "Gmr";
    case Family::TstarGmr: return "TstarGmr";
    case Family::BinaryOctahedral: return "BinaryOctahedral";
    case Family::BinaryIcosahedral: return "BinaryIcosahedral";
  }
  throw std::logic_error("unknown family");
}

namespace {

BoundRecord make_record(Family fam, std::optional<AmitsurParams> params, Int order,
                        Int dimq) {
  BoundRecord rec;
  rec.family = fam;
  rec.params = std::move(params);
  rec.group_order = order;
  rec.dimQ = dimq;
  rec.packing_dim = 2 * dimq;
  rec.bound = rec.group_order;
  rec.ratio = Rat(rec.bound, rec.packing_dim);
  rec.ratio.canonicalize();
  return rec;
}

}  // namespace

std::vector<BoundRecord> records_for(const Int& m, const Int& r) {
  std::vector<BoundRecord> out;
  auto dec = is_division(m, r);
  if (!dec.division) return out;
  Int phi = nt::euler_phi(m);
  const Int& n = dec.params.n;
  out.push_back(make_record(Family::Gmr, dec.params, m * n, phi * n));
  if (tstar_compatible(m, r))
    out.push_back(make_record(Family::TstarGmr, dec.params, 24 * m * n, 4 * phi * n));
  return out;
}

std::vector<BoundRecord> sporadic_records() {
  std::vector<BoundRecord> out;
  out.push_back(make_record(Family::BinaryOctahedral, std::nullopt, 48, 16));
  out.push_back(make_record(Family::BinaryIcosahedral, std::nullopt, 120, 20));
  return out;
}

}  // namespace divlat::amitsur
