#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "altnet/formulas.hpp"

using namespace altnet;

namespace {

StateFractions random_fractions(std::mt19937_64& rng) {
  std::array<std::int64_t, 4> w;
  std::int64_t total = 0;
  for (auto& x : w) {
    x = static_cast<std::int64_t>(rng() % 1000);
    total += x;
  }
  if (total == 0) w[0] = total = 1;
  return StateFractions{Rational(w[0], total), Rational(w[1], total),
                        Rational(w[2], total), Rational(w[3], total)};
}

}  // namespace

TEST_CASE("interference capacity formula on the worked points") {
  CHECK(ic2_sum_capacity(StateFractions::parse("1/3,1/3,1/3,0")) ==
        Rational(4, 3));
  CHECK(ic2_sum_capacity(StateFractions::parse("0,0,0,1")) == Rational(2));
  CHECK(ic2_sum_capacity(StateFractions::parse("1,0,0,0")) == Rational(1));
}

TEST_CASE("outer bound set on the worked points") {
  BoundSet b = ic2_outer_bounds(StateFractions::parse("1/3,1/3,1/3,0"));
  CHECK(b.z_bound == Rational(4, 3));
  CHECK(b.mac_bound_1 == Rational(4, 3));
  CHECK(b.mac_bound_2 == Rational(4, 3));
  BoundSet d = ic2_outer_bounds(StateFractions::parse("0,0,0,1"));
  CHECK(d.z_bound == Rational(2));
  CHECK(d.mac_bound_1 == Rational(2));
  CHECK(d.mac_bound_2 == Rational(2));
}

TEST_CASE("the capacity equals the minimum of the three bounds") {
  std::mt19937_64 rng(20260809);
  for (int trial = 0; trial < 500; ++trial) {
    StateFractions f = random_fractions(rng);
    CHECK(ic2_sum_capacity(f) == ic2_outer_bounds(f).min());
  }
}

TEST_CASE("baseline and joint-coding gain") {
  auto [baseline, gain] =
      ic2_baseline_and_gain(StateFractions::parse("1/3,1/3,1/3,0"));
  CHECK(baseline == Rational(1));
  CHECK(gain == Rational(1, 3));

  auto [b2, g2] = ic2_baseline_and_gain(StateFractions::parse("1/2,1/2,0,0"));
  CHECK(b2 == Rational(1));
  CHECK(g2 == Rational(0));
}

TEST_CASE("the gain vanishes whenever one of A, B, C never occurs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    StateFractions f = random_fractions(rng);
    int zeroed = static_cast<int>(rng() % 3);
    std::array<Rational, 4> vals = {f.a(), f.b(), f.c(), f.d()};
    vals[3] = vals[3] + vals[zeroed];
    vals[zeroed] = Rational(0);
    StateFractions g{vals[0], vals[1], vals[2], vals[3]};
    CHECK(ic2_baseline_and_gain(g).second == Rational(0));
  }
}

TEST_CASE("capacity sits in [1, 2] and hits 2 only without interference") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    StateFractions f = random_fractions(rng);
    Rational cap = ic2_sum_capacity(f);
    CHECK(cap >= Rational(1));
    CHECK(cap <= Rational(2));
    CHECK((cap == Rational(2)) == (f.d() == Rational(1)));
  }
}

TEST_CASE("X-channel formula on the worked points") {
  CHECK(x2_sum_capacity(StateFractions::parse("1/4,1/4,1/4,1/4")) ==
        Rational(3, 2));
  CHECK(x2_sum_capacity(StateFractions::parse("1/3,1/3,1/3,0")) ==
        Rational(4, 3));
  CHECK_THROWS_AS(x2_sum_capacity(StateFractions::parse("1/2,1/4,1/8,1/8")),
                  TheoremPreconditionError);
}

TEST_CASE("on symmetric fractions the X formula matches the IC formula") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    StateFractions f = random_fractions(rng);
    Rational rest = Rational(1) - f.c() - f.d();
    Rational half = rest / Rational(2);
    StateFractions sym{half, half, f.c(), f.d()};
    CHECK(x2_sum_capacity(sym) == ic2_sum_capacity(sym));
  }
}

TEST_CASE("broadcast formula on the worked points") {
  CHECK(bc2_sum_capacity(StateFractions::parse("1/2,1/2,0,0")) ==
        Rational(3, 2));
  CHECK(bc2_sum_capacity(StateFractions::parse("0,0,0,1")) == Rational(2));
  CHECK(bc2_sum_capacity(StateFractions::parse("0,0,1,0")) == Rational(1));
  CHECK_THROWS_AS(bc2_sum_capacity(StateFractions::parse("1/2,1/4,1/8,1/8")),
                  TheoremPreconditionError);
}

TEST_CASE("cooperation never loses rate on symmetric fractions") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    StateFractions f = random_fractions(rng);
    Rational rest = Rational(1) - f.c() - f.d();
    Rational half = rest / Rational(2);
    StateFractions sym{half, half, f.c(), f.d()};
    Rational diff = bc2_sum_capacity(sym) - ic2_sum_capacity(sym);
    CHECK(diff == sym.a() - min(sym.a(), sym.c()));
    CHECK(diff >= Rational(0));
  }
}

TEST_CASE("the CSIT-state correspondence is the fixed bijective table") {
  auto table = csit_state_mapping();
  REQUIRE(table.size() == 4);
  CHECK(table[0].state == TwoUserStateId::A);
  CHECK(table[0].user1 == 'N');
  CHECK(table[0].user2 == 'P');
  CHECK(table[1].user1 == 'P');
  CHECK(table[1].user2 == 'N');
  CHECK(table[2].user1 == 'N');
  CHECK(table[2].user2 == 'N');
  CHECK(table[3].state == TwoUserStateId::D);
  CHECK(table[3].user1 == 'P');
  CHECK(table[3].user2 == 'P');
  std::set<std::pair<char, char>> images;
  std::set<TwoUserStateId> domains;
  for (const auto& e : table) {
    images.insert({e.user1, e.user2});
    domains.insert(e.state);
  }
  CHECK(images.size() == 4);
  CHECK(domains.size() == 4);
}
