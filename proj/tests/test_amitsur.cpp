#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "divlat/amitsur.hpp"

using divlat::Int;
using divlat::Rat;
namespace amit = divlat::amitsur;
namespace nt = divlat::nt;

namespace {

// Order of r mod m by plain iteration, no shortcuts.
long order_iter(long r, long m) {
  long v = r % m, ord = 1;
  while (v != 1) {
    v = (v * r) % m;
    ++ord;
  }
  return ord;
}

}  // namespace

TEST_CASE("derive_params on worked examples") {
  auto p = amit::derive_params(4, 3);
  CHECK(p.n == 2);
  CHECK(p.s == 2);
  CHECK(p.t == 2);

  p = amit::derive_params(30, 29);
  CHECK(p.n == 2);
  CHECK(p.s == 2);
  CHECK(p.t == 15);

  p = amit::derive_params(21, 4);
  CHECK(p.n == 3);
  CHECK(p.s == 3);
  CHECK(p.t == 7);

  // r = 1 convention: trivial twist, full modulus as t.
  p = amit::derive_params(12, 1);
  CHECK(p.n == 1);
  CHECK(p.s == 1);
  CHECK(p.t == 12);

  CHECK_THROWS_AS(amit::derive_params(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(amit::derive_params(3, 5), std::invalid_argument);
  CHECK_THROWS_AS(amit::derive_params(0, 1), std::invalid_argument);
}

TEST_CASE("derive_params against iterated order and gcd") {
  for (long m = 2; m <= 80; ++m)
    for (long r = 2; r <= m; ++r) {
      if (std::gcd(m, r) != 1) continue;
      auto p = amit::derive_params(m, r);
      CHECK(p.n == order_iter(r, m));
      CHECK(p.s == std::gcd(r - 1, m));
      CHECK(p.t * p.s == m);
    }
}

TEST_CASE("division decisions on hand-worked pairs") {
  // Each expectation below was worked by hand from the definition before
  // the implementation existed.
  auto d = amit::is_division(4, 3);
  CHECK(d.division);
  CHECK_FALSE(d.field_case);
  CHECK_FALSE(d.cond_coprime);
  CHECK(d.cond_even_split);
  CHECK(d.cond_quaternionic);

  d = amit::is_division(8, 3);
  CHECK_FALSE(d.division);
  CHECK_FALSE(d.cond_coprime);
  CHECK_FALSE(d.cond_even_split);

  d = amit::is_division(30, 29);
  CHECK(d.division);
  CHECK(d.cond_coprime);
  CHECK(d.cond_quaternionic);

  // Symmetric group on three letters: fails on gcd(q, (p^delta - 1)/s).
  d = amit::is_division(3, 2);
  CHECK_FALSE(d.division);
  CHECK(d.cond_coprime);
  CHECK_FALSE(d.cond_quaternionic);
  CHECK_FALSE(d.cond_primewise);

  // Dihedral of order 10.
  CHECK_FALSE(amit::is_division(5, 4).division);

  CHECK_FALSE(amit::is_division(12, 5).division);

  d = amit::is_division(21, 4);
  CHECK(d.division);
  CHECK(d.cond_coprime);
  CHECK_FALSE(d.cond_quaternionic);
  CHECK(d.cond_primewise);
  REQUIRE(d.witnesses.size() == 1);
  CHECK(d.witnesses[0].q == 3);
  CHECK(d.witnesses[0].p == 7);
  CHECK(d.witnesses[0].delta == 1);
  CHECK(d.witnesses[0].odd_prime_branch);
  CHECK(d.witnesses[0].satisfied);

  // Dicyclic of order 20.
  CHECK(amit::is_division(10, 9).division);

  for (long m = 1; m <= 100; ++m) {
    auto field = amit::is_division(m, 1);
    CHECK(field.division);
    CHECK(field.field_case);
  }
}

TEST_CASE("twist by -1 on twice-odd moduli is always division") {
  for (long u = 1; u <= 49; u += 2) {
    long m = 2 * u;
    auto d = amit::is_division(m, m - 1);
    CHECK(d.division);
    if (u > 1) CHECK(d.cond_quaternionic);
  }
}

TEST_CASE("decision structure is internally consistent") {
  for (long m = 1; m <= 60; ++m)
    for (long r = 1; r <= m; ++r) {
      if (std::gcd(m, r) != 1) continue;
      auto d = amit::is_division(m, r);
      CHECK(d.field_case == (r == 1));
      if (!d.field_case) {
        CHECK(d.division == ((d.cond_coprime || d.cond_even_split) &&
                             (d.cond_quaternionic || d.cond_primewise)));
        bool any_nonintegral = false;
        for (const auto& w : d.witnesses) {
          if (w.satisfied) CHECK(w.p != 0);
          if (w.p == 0) CHECK_FALSE(w.satisfied);
          any_nonintegral = any_nonintegral || w.nonintegral_ratio;
          CHECK(d.params.n % w.q == 0);
        }
        CHECK(d.nonintegral_flag == any_nonintegral);
      }
      auto p = amit::derive_params(m, r);
      CHECK(d.params.n == p.n);
      CHECK(d.params.s == p.s);
      CHECK(d.params.t == p.t);
    }
}

TEST_CASE("unique matching prime agrees with the witness search") {
  CHECK(amit::unique_p_for_q(2, 4, 3) == Int(2));
  CHECK_FALSE(amit::unique_p_for_q(2, 30, 29).has_value());
  CHECK(amit::unique_p_for_q(3, 21, 4) == Int(7));
  CHECK_THROWS_AS(amit::unique_p_for_q(4, 4, 3), std::invalid_argument);
  CHECK_THROWS_AS(amit::unique_p_for_q(3, 4, 3), std::invalid_argument);

  for (long m = 2; m <= 60; ++m)
    for (long r = 2; r <= m; ++r) {
      if (std::gcd(m, r) != 1) continue;
      auto d = amit::is_division(m, r);
      for (const auto& w : d.witnesses)
        if (w.satisfied) {
          auto p = amit::unique_p_for_q(w.q, m, r);
          REQUIRE(p.has_value());
          CHECK(*p == w.p);
        }
    }
}

TEST_CASE("tetrahedral product compatibility") {
  CHECK(amit::tstar_compatible(1, 1));
  CHECK(amit::tstar_compatible(7, 1));
  CHECK(amit::tstar_compatible(23, 1));
  CHECK_FALSE(amit::tstar_compatible(3, 1));  // order of 2 mod 3 is even
  CHECK_FALSE(amit::tstar_compatible(5, 1));
  CHECK_FALSE(amit::tstar_compatible(4, 3));  // even modulus
  CHECK_FALSE(amit::tstar_compatible(15, 1)); // not cyclic mod 15 anyway: order of 2 is 4
}

TEST_CASE("record shapes and the ratio formulas") {
  auto recs = amit::records_for(7, 1);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].family == amit::Family::Gmr);
  CHECK(recs[0].group_order == 7);
  CHECK(recs[0].dimQ == 6);
  CHECK(recs[0].packing_dim == 12);
  CHECK(recs[0].bound == 7);
  CHECK(recs[1].family == amit::Family::TstarGmr);
  CHECK(recs[1].group_order == 168);
  CHECK(recs[1].dimQ == 24);
  CHECK(recs[1].packing_dim == 48);
  CHECK(recs[1].bound == 168);
  CHECK(recs[1].ratio == Rat(7, 2));

  recs = amit::records_for(4, 3);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].group_order == 8);
  CHECK(recs[0].packing_dim == 8);
  CHECK(recs[0].ratio == 1);

  recs = amit::records_for(1, 1);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].packing_dim == 2);
  CHECK(recs[0].bound == 1);
  CHECK(recs[1].packing_dim == 8);
  CHECK(recs[1].bound == 24);
  CHECK(recs[1].ratio == 3);

  CHECK(amit::records_for(3, 2).empty());
  CHECK(amit::records_for(8, 3).empty());

  for (long m = 1; m <= 40; ++m)
    for (long r = 1; r <= m; ++r) {
      if (std::gcd(m, r) != 1) continue;
      Int phi = nt::euler_phi(m);
      for (const auto& rec : amit::records_for(m, r)) {
        CHECK(rec.packing_dim == 2 * rec.dimQ);
        CHECK(rec.bound == rec.group_order);
        Rat expect = rec.family == amit::Family::Gmr ? Rat(Int(m), 2 * phi)
                                                     : Rat(3 * Int(m), phi);
        expect.canonicalize();
        CHECK(rec.ratio == expect);
      }
    }
}

TEST_CASE("sporadic records") {
  auto recs = amit::sporadic_records();
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].family == amit::Family::BinaryOctahedral);
  CHECK(recs[0].group_order == 48);
  CHECK(recs[0].packing_dim == 32);
  CHECK(recs[0].ratio == Rat(3, 2));
  CHECK_FALSE(recs[0].params.has_value());
  CHECK(recs[1].family == amit::Family::BinaryIcosahedral);
  CHECK(recs[1].group_order == 120);
  CHECK(recs[1].packing_dim == 40);
  CHECK(recs[1].ratio == 3);
}

TEST_CASE("family names") {
  CHECK(amit::family_name(amit::Family::Gmr) == "Gmr");
  CHECK(amit::family_name(amit::Family::TstarGmr) == "TstarGmr");
  CHECK(amit::family_name(amit::Family::BinaryOctahedral) == "BinaryOctahedral");
  CHECK(amit::family_name(amit::Family::BinaryIcosahedral) == "BinaryIcosahedral");
}
