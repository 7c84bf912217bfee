#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "divlat/amitsur.hpp"

namespace divlat::seq {

struct ScanResult {
  // Sporadic records first, then families ordered by (m, r), Gmr before
  // TstarGmr for the same pair.
  std::vector<amitsur::BoundRecord> points;
  // For each packing dimension, the record with the largest bound (first
  // encountered in scan order on ties).
  std::map<Int, amitsur::BoundRecord> best_by_dim;
};

// Enumerates records_for(m, r) over all coprime pairs r <= m <= max_m,
// keeping records with packing_dim <= max_dim, plus the sporadic records.
// The thread count never changes the result, only the wall time.
ScanResult scan(const Int& max_m, const Int& max_dim, unsigned threads = 1);

// Known lower-bound baselines for the packing constant in dimension d.
// Keys: "minkowski" (1), "ball" (2(d-1)), "vance" (8.8 * d/4, only when
// 4 | d), "venkatesh" (max k with 2*phi(k) = d, when such k exists).
std::map<std::string, Rat> baselines(const Int& d);

struct SequencePoint {
  Int index;
  Int m, r;
  Int packing_dim;
  Int bound;
  Rat ratio;  // bound / packing_dim
};

// m = product of odd primes p <= x whose order of 2 mod p is odd, r = 1;
// the record is the tetrahedral product family over that m, giving
// packing_dim 8*phi(m) and bound 24m. Empty product (m = 1) when no prime
// qualifies.
SequencePoint improv_sequence(const Int& x);

// m = product of the first N primes, r = m - 1, packing_dim 4*phi(m),
// bound 2m. Requires N >= 1.
SequencePoint even_sequence(unsigned N);

// q = 1 + product of the first N primes; absent when q is composite.
// Otherwise r is congruent to 1 mod each of those primes and generates the
// multiplicative group mod q; m = q(q-1), packing_dim 2(q-1)^2 phi(q-1),
// bound q(q-1)^2.
std::optional<SequencePoint> primorial_prime_family(unsigned N);

struct HasseCount {
  Int count_all_odd_primes;
  Int count_even_order;
  Rat ratio_odd_order;
};

// Over odd primes p <= x, counts how many have even order of 2 mod p and
// returns the fraction with odd order.
HasseCount hasse_ratio(std::uint64_t x);

// Smallest dimension at which the primorial-point baseline family overtakes
// the improved sequence, comparing both as step functions of dimension.
// Absent if no crossover happens at dimension <= 10^max_log10_dim.
std::optional<Int> crossover(unsigned max_log10_dim);

// The comparison convention used by crossover, for reports.
std::string_view crossover_method();

}  // namespace divlat::seq
