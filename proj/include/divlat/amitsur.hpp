#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "divlat/numtheory.hpp"

namespace divlat::amitsur {

// Parameters attached to a coprime pair r <= m. For r > 1: n is the order of
// r mod m, s = gcd(r-1, m), t = m/s. The r = 1 convention sets n = s = 1.
struct AmitsurParams {
  Int m, r, n, s, t;
};

AmitsurParams derive_params(const Int& m, const Int& r);

// Certificate for one prime q | n in the primewise clause of the division
// criterion.
struct QWitness {
  Int q;
  Int p;      // matching prime divisor of m, or 0 when none exists
  Int delta;  // order of p modulo m / p^alpha, when p was found
  bool odd_prime_branch = false;
  bool even_prime_branch = false;
  bool nonintegral_ratio = false;  // (p^delta - 1)/s was not an integer
  bool satisfied = false;
};

// Decision plus the trace of which branches fired, so the criterion can be
// audited from the outside.
struct DivisionDecision {
  bool division = false;
  bool field_case = false;  // r = 1: the algebra is the cyclotomic field
  bool cond_coprime = false;      // clause 1, branch (a): gcd(n,t) = 1
  bool cond_even_split = false;   // clause 1, branch (b)
  bool cond_quaternionic = false; // clause 2, branch (a): n = s = 2, m | r+1
  bool cond_primewise = false;    // clause 2, branch (b)
  bool nonintegral_flag = false;  // some witness hit a nonintegral ratio
  std::vector<QWitness> witnesses;
  AmitsurParams params;
};

DivisionDecision is_division(const Int& m, const Int& r);

// The unique prime p | m with q not dividing ord_{m/p^alpha}(r), if any.
// Requires q prime with q | ord_m r; uniqueness is checked, not assumed.
std::optional<Int> unique_p_for_q(const Int& q, const Int& m, const Int& r);

// Whether the binary tetrahedral product family applies on top of (m, r):
// the pair is division, m is odd and the order of 2 mod m is odd.
bool tstar_compatible(const Int& m, const Int& r);

enum class Family { Gmr, TstarGmr, BinaryOctahedral, BinaryIcosahedral };

std::string_view family_name(Family f);

struct BoundRecord {
  Family family = Family::Gmr;
  std::optional<AmitsurParams> params;  // present for the two (m, r) families
  Int group_order;
  Int dimQ;         // dimension over Q of the smallest containing division algebra
  Int packing_dim;  // 2 * dimQ
  Int bound;        // equals the group order
  Rat ratio;        // bound / packing_dim
};

std::vector<BoundRecord> records_for(const Int& m, const Int& r);
std::vector<BoundRecord> sporadic_records();

}  // namespace divlat::amitsur
