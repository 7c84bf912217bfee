#include "divlat/sequences.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace divlat::seq {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) acc = mulmod_u64(acc, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return acc;
}

// The order of 2 mod the odd prime p is odd exactly when 2^u = 1 mod p,
// where u is the odd part of p - 1.
bool order_of_two_is_odd(std::uint64_t p) {
  std::uint64_t u = p - 1;
  while (u % 2 == 0) u /= 2;
  return powmod_u64(2, u, p) == 1;
}

}  // namespace

ScanResult scan(const Int& max_m, const Int& max_dim, unsigned threads) {
  if (max_m < 1) throw std::invalid_argument("scan: max_m must be >= 1");
  if (threads == 0) threads = 1;
  unsigned long mmax = max_m.get_ui();

  std::vector<std::vector<amitsur::BoundRecord>> per_m(mmax + 1);
  std::atomic<unsigned long> next_m{1};
  auto worker = [&] {
    for (unsigned long m = next_m.fetch_add(1); m <= mmax; m = next_m.fetch_add(1)) {
      auto& slot = per_m[m];
      for (unsigned long r = 1; r <= m; ++r) {
        if (gcd(Int(m), Int(r)) != 1) continue;
        for (auto& rec : amitsur::records_for(m, r))
          if (rec.packing_dim <= max_dim) slot.push_back(std::move(rec));
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ScanResult res;
  res.points = amitsur::sporadic_records();
  for (unsigned long m = 1; m <= mmax; ++m)
    for (auto& rec : per_m[m]) res.points.push_back(std::move(rec));
  for (const auto& rec : res.points) {
    auto it = res.best_by_dim.find(rec.packing_dim);
    if (it == res.best_by_dim.end() || rec.bound > it->second.bound)
      res.best_by_dim.insert_or_assign(rec.packing_dim, rec);
  }
  return res;
}

std::map<std::string, Rat> baselines(const Int& d) {
  if (d <= 0) throw std::invalid_argument("baselines: dimension must be positive");
  std::map<std::string, Rat> out;
  out["minkowski"] = Rat(1);
  out["ball"] = Rat(2 * (d - 1));
  if (d % 4 == 0) {
    Rat vance = Rat(88, 10) * Rat(d / 4);
    vance.canonicalize();
    out["vance"] = vance;
  }
  Int limit = std::max(Int(3 * d), Int(1000));
  std::optional<Int> venk;
  for (Int k = 1; k <= limit; ++k)
    if (2 * nt::euler_phi(k) == d) venk = k;
  if (venk) out["venkatesh"] = Rat(*venk);
  return out;
}

SequencePoint improv_sequence(const Int& x) {
  if (x < 0) throw std::invalid_argument("improv_sequence: x must be >= 0");
  Int m = 1;
  for (std::uint64_t p : nt::primes_up_to(x.get_ui()))
    if (p > 2 && order_of_two_is_odd(p)) m *= p;
  SequencePoint pt;
  pt.index = x;
  pt.m = m;
  pt.r = 1;
  pt.packing_dim = 8 * nt::euler_phi(m);
  pt.bound = 24 * m;
  pt.ratio = Rat(pt.bound, pt.packing_dim);
  pt.ratio.canonicalize();
  return pt;
}

SequencePoint even_sequence(unsigned N) {
  if (N < 1) throw std::invalid_argument("even_sequence: N must be >= 1");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t bound = 64; primes.size() < N; bound *= 2)
    primes = nt::primes_up_to(bound);
  Int m = 1;
  for (unsigned i = 0; i < N; ++i) m *= primes[i];
  Int r = m - 1;
  if (!amitsur::is_division(m, r).division)
    throw std::logic_error("even_sequence: constructed pair must be division");
  SequencePoint pt;
  pt.index = N;
  pt.m = m;
  pt.r = r;
  pt.packing_dim = 4 * nt::euler_phi(m);
  pt.bound = 2 * m;
  pt.ratio = Rat(pt.bound, pt.packing_dim);
  pt.ratio.canonicalize();
  return pt;
}

std::optional<SequencePoint> primorial_prime_family(unsigned N) {
  if (N < 1) throw std::invalid_argument("primorial_prime_family: N must be >= 1");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t bound = 64; primes.size() < N; bound *= 2)
    primes = nt::primes_up_to(bound);
  Int prod = 1;
  for (unsigned i = 0; i < N; ++i) prod *= primes[i];
  Int q = prod + 1;
  if (!nt::is_prime(q)) return std::nullopt;

  // Generator of (Z/q)^*: q - 1 = prod is squarefree with known factors.
  Int g = 0;
  for (Int cand = 2; cand < q; ++cand) {
    bool ok = true;
    for (unsigned i = 0; i < N && ok; ++i)
      ok = nt::pow_mod(cand, prod / primes[i], q) != 1;
    if (ok) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw std::logic_error("primorial_prime_family: no generator found");

  // Smallest positive r with r = 1 mod (q-1) and r = g mod q.
  Int m = q * prod;
  Int r = 1;
  while (r % q != g) r += prod;
  if (!amitsur::is_division(m, r).division)
    throw std::logic_error("primorial_prime_family: constructed pair must be division");

  SequencePoint pt;
  pt.index = N;
  pt.m = m;
  pt.r = r;
  pt.packing_dim = 2 * prod * prod * nt::euler_phi(prod);
  pt.bound = q * prod * prod;
  pt.ratio = Rat(pt.bound, pt.packing_dim);
  pt.ratio.canonicalize();
  return pt;
}

HasseCount hasse_ratio(std::uint64_t x) {
  if (x < 3) throw std::invalid_argument("hasse_ratio: x must be >= 3");
  HasseCount c;
  c.count_all_odd_primes = 0;
  c.count_even_order = 0;
  for (std::uint64_t p : nt::primes_up_to(x)) {
    if (p == 2) continue;
    ++c.count_all_odd_primes;
    if (!order_of_two_is_odd(p)) ++c.count_even_order;
  }
  c.ratio_odd_order =
      Rat(c.count_all_odd_primes - c.count_even_order, c.count_all_odd_primes);
  c.ratio_odd_order.canonicalize();
  return c;
}

std::optional<Int> crossover(unsigned max_log10_dim) {
  if (max_log10_dim < 10)
    throw std::invalid_argument("crossover: max_log10_dim must be >= 10");
  Int dim_cap = 1;
  for (unsigned i = 0; i < max_log10_dim; ++i) dim_cap *= 10;

  // Improved-sequence members as (dimension, ratio): m runs over products of
  // qualifying primes, dimension 8*phi(m), ratio 3m/phi(m). Both columns are
  // strictly increasing, so the step function is just the last member so far.
  struct Member {
    Int dim;
    Rat ratio;
  };
  std::vector<Member> improv;
  {
    Int m = 1, phi = 1;
    improv.push_back({Int(8), Rat(3)});
    std::uint64_t sieve_bound = 1 << 12;
    auto primes = nt::primes_up_to(sieve_bound);
    for (std::size_t i = 1; ; ++i) {  // skip p = 2
      if (i >= primes.size()) {
        sieve_bound *= 2;
        primes = nt::primes_up_to(sieve_bound);
      }
      std::uint64_t p = primes[i];
      if (!order_of_two_is_odd(p)) continue;
      m *= p;
      phi *= p - 1;
      Rat ratio = Rat(3 * m, phi);
      ratio.canonicalize();
      improv.push_back({8 * phi, ratio});
      if (improv.back().dim > dim_cap) break;
    }
  }

  // Primorial baseline members: k = product of first j primes, dimension
  // 2*phi(k), ratio k/(2*phi(k)); again both columns increase.
  Int k = 1, phik = 1;
  std::size_t improv_idx = 0;
  std::uint64_t sieve_bound = 1 << 12;
  auto primes = nt::primes_up_to(sieve_bound);
  for (std::size_t j = 0; ; ++j) {
    if (j >= primes.size()) {
      sieve_bound *= 2;
      primes = nt::primes_up_to(sieve_bound);
    }
    k *= primes[j];
    phik *= primes[j] - 1;
    Int dim = 2 * phik;
    if (dim > dim_cap) return std::nullopt;
    Rat ratio = Rat(k, dim);
    ratio.canonicalize();
    while (improv_idx + 1 < improv.size() && improv[improv_idx + 1].dim <= dim)
      ++improv_idx;
    if (improv[improv_idx].dim > dim) continue;  // no improved member yet
    if (ratio > improv[improv_idx].ratio) return dim;
  }
}

std::string_view crossover_method() {
  return "each family is read as a step function of dimension (best ratio among "
         "members of dimension <= d); the reported value is the smallest "
         "primorial-member dimension whose step value strictly exceeds the "
         "improved sequence's step value";
}

}  // namespace divlat::seq
