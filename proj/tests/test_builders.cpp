#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "altnet/builders.hpp"
#include "altnet/verifier.hpp"

using namespace altnet;

TEST_CASE("joint A/B/C code has rate 4/3 and decodes the all-ones channel") {
  FieldSpec f3(3);
  LinearScheme s = ic2_joint_abc_scheme(f3);
  CHECK(s.rate() == Rational(4, 3));

  ChannelRealization ones(f3, s.seq());
  for (int slot = 0; slot < 3; ++slot)
    for (int r = 0; r < 2; ++r)
      for (int t = 0; t < 2; ++t)
        if (s.seq().state_at(slot).link(r, t)) ones.set_coeff(slot, r, t, 1);
  ones.validate_support(s.seq());

  std::vector<std::int64_t> msg = {1, 2, 1, 2};
  auto views = receive(s, ones, msg);
  for (int r = 0; r < 2; ++r) {
    auto wanted = s.config().desired_of(r);
    auto solved = solve_for(views[r].effective, views[r].observed, wanted);
    for (int i : wanted) {
      REQUIRE(solved.at(i).has_value());
      CHECK(solved.at(i)->value() == msg[i]);
    }
  }
}

TEST_CASE("receiver 1's decode determinant is h11A * h11B * h12C") {
  FieldSpec f7(7);
  LinearScheme s = ic2_joint_abc_scheme(f7);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    ChannelRealization real = sample_realization(s.seq(), f7, rng());
    Matrix m1 = effective_matrix(s, real, 0);
    // 3x3 block on the unknowns receiver 1 actually sees: a1, a2, b1
    std::int64_t det = 0;
    auto at = [&](int r, int c) { return m1.at(r, c); };
    det = gf::sub(
        gf::add(gf::mul(at(0, 0), gf::mul(at(1, 1), at(2, 2), 7), 7),
                gf::add(gf::mul(at(0, 1), gf::mul(at(1, 2), at(2, 0), 7), 7),
                        gf::mul(at(0, 2), gf::mul(at(1, 0), at(2, 1), 7), 7), 7),
                7),
        gf::add(gf::mul(at(0, 2), gf::mul(at(1, 1), at(2, 0), 7), 7),
                gf::add(gf::mul(at(0, 1), gf::mul(at(1, 0), at(2, 2), 7), 7),
                        gf::mul(at(0, 0), gf::mul(at(1, 2), at(2, 1), 7), 7), 7),
                7),
        7);
    std::int64_t expected = gf::mul(
        real.coeff(0, 0, 0), gf::mul(real.coeff(1, 0, 0), real.coeff(2, 0, 1), 7), 7);
    CHECK(det == expected);
    CHECK(det != 0);
  }
}

TEST_CASE("cooperative A/B code has rate 3/2 and the clean-slot structure") {
  FieldSpec f5(5);
  LinearScheme s = bc2_joint_ab_scheme(f5);
  CHECK(s.rate() == Rational(3, 2));
  CHECK(s.config().mode == MessageMode::BC);

  ChannelRealization real = sample_realization(s.seq(), f5, 31);
  // receiver 2 sees b1 alone in the A slot: row (0, h22A, 0)
  Matrix m2 = effective_matrix(s, real, 1);
  CHECK(m2.at(0, 0) == 0);
  CHECK(m2.at(0, 1) == real.coeff(0, 1, 1));
  CHECK(m2.at(0, 2) == 0);
  // and b1 with b2 in the B slot: row (0, h21B, h22B)
  CHECK(m2.at(1, 0) == 0);
  CHECK(m2.at(1, 1) == real.coeff(1, 1, 0));
  CHECK(m2.at(1, 2) == real.coeff(1, 1, 1));

  std::vector<std::int64_t> msg = {4, 2, 3};
  auto views = receive(s, real, msg);
  auto solved2 =
      solve_for(views[1].effective, views[1].observed, s.config().desired_of(1));
  CHECK(solved2.at(1)->value() == 2);
  CHECK(solved2.at(2)->value() == 3);
  auto solved1 =
      solve_for(views[0].effective, views[0].observed, s.config().desired_of(0));
  CHECK(solved1.at(0)->value() == 4);
}

TEST_CASE("interference schedule hits the worked examples") {
  FieldSpec f5(5);
  CHECK(ic2_schedule(StateFractions::parse("1/3,1/3,1/3,0"), 3, f5).rate() ==
        Rational(4, 3));
  CHECK(ic2_schedule(StateFractions::parse("0,0,0,1"), 4, f5).rate() ==
        Rational(2));
  // quotas (4,2,1,1): one joint triple, one D slot, four leftovers
  CHECK(ic2_schedule(StateFractions::parse("1/2,1/4,1/8,1/8"), 8, f5).rate() ==
        Rational(5, 4));
}

TEST_CASE("schedule rate follows the closed form (n + count_D + triples) / n") {
  std::mt19937_64 rng(17);
  FieldSpec f3(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<std::int64_t, 4> w;
    std::int64_t total = 0;
    for (auto& x : w) {
      x = static_cast<std::int64_t>(rng() % 8);
      total += x;
    }
    if (total == 0) w[2] = total = 1;
    StateFractions f{Rational(w[0], total), Rational(w[1], total),
                     Rational(w[2], total), Rational(w[3], total)};
    int n = 1 + static_cast<int>(rng() % 12);
    auto counts = quota_counts(f, n);
    int joint = std::min({counts[0], counts[1], counts[2]});
    LinearScheme s = ic2_schedule(f, n, f3);
    CHECK(s.rate() == Rational(n + counts[3] + joint, n));
  }
}

TEST_CASE("schedule rate is monotone in the D count and the triple count") {
  FieldSpec f3(3);
  // n = 8 throughout; one leftover A slot turns into a D slot (J fixed)
  CHECK(ic2_schedule_from_counts({3, 2, 1, 2}, f3).rate() <
        ic2_schedule_from_counts({2, 2, 1, 3}, f3).rate());
  // n = 8; rebalancing leftovers completes a second triple (count_D fixed)
  CHECK(ic2_schedule_from_counts({3, 2, 1, 2}, f3).rate() <
        ic2_schedule_from_counts({2, 2, 2, 2}, f3).rate());
}

TEST_CASE("short schedules survive exhaustive verification") {
  FieldSpec f3(3);
  for (const char* lambda : {"1/3,1/3,1/3,0", "1/2,1/4,1/8,1/8", "0,0,0,1"}) {
    LinearScheme s = ic2_schedule(StateFractions::parse(lambda), 3, f3);
    CHECK(worst_case_check(s).verdict);
  }
  LinearScheme bc = bc2_schedule(StateFractions::parse("1/4,1/4,1/4,1/4"), 4, f3);
  CHECK(worst_case_check(bc).verdict);
  LinearScheme x = x2_schedule(StateFractions::parse("1/3,1/3,1/3,0"), 3, f3);
  CHECK(worst_case_check(x).verdict);
}

TEST_CASE("X schedule carries only the direct message groups") {
  FieldSpec f5(5);
  LinearScheme s = x2_schedule(StateFractions::parse("1/3,1/3,1/3,0"), 3, f5);
  CHECK(s.config().mode == MessageMode::X);
  CHECK(s.rate() == Rational(4, 3));
  for (int j = 0; j < s.symbol_count(); ++j)
    CHECK(s.config().origin[j] == s.config().desired_rx[j]);  // W11/W22 only
  CHECK(x2_schedule(StateFractions::parse("0,0,0,1"), 4, f5).rate() ==
        Rational(2));
}

TEST_CASE("broadcast schedule hits the worked examples") {
  FieldSpec f5(5);
  CHECK(bc2_schedule(StateFractions::parse("1/2,1/2,0,0"), 2, f5).rate() ==
        Rational(3, 2));
  CHECK(bc2_schedule(StateFractions::parse("0,0,1,0"), 3, f5).rate() ==
        Rational(1));
  // quotas (2,2,2,2): two joint pairs, two C singles, two D slots
  CHECK(bc2_schedule(StateFractions::parse("1/4,1/4,1/4,1/4"), 8, f5).rate() ==
        Rational(3, 2));
}

TEST_CASE("broadcast schedule approaches 1 + lambda_A + lambda_D") {
  FieldSpec f3(3);
  StateFractions f = StateFractions::parse("1/4,1/4,1/4,1/4");
  Rational target(3, 2);
  for (int n : {8, 40, 200}) {
    Rational rate = bc2_schedule(f, n, f3).rate();
    CHECK(abs(target - rate) <= Rational(4, n));
  }
}

TEST_CASE("three-user candidate builder") {
  FieldSpec f3(3);
  TopologyState s1 = TopologyState::fully_connected(3);
  TopologyState s2 = TopologyState::interference_free(3);
  Ic3Assignment all_active{{true, true}, {true, true}, {true, true}};
  LinearScheme s = ic3_candidate_scheme(s1, s2, all_active, f3);
  CHECK(s.rate() == Rational(3, 2));
  for (int t = 0; t < 3; ++t) {
    int nonzero = 0;
    for (int slot = 0; slot < 2; ++slot)
      if (s.encoder_entry(t, slot, t) != 0) ++nonzero;
    CHECK(nonzero == 2);
  }

  Ic3Assignment silent{{false, false}, {true, true}, {true, true}};
  CHECK_THROWS_AS(ic3_candidate_scheme(s1, s2, silent, f3),
                  std::invalid_argument);
}

TEST_CASE("encoders are a function of the state sequence alone") {
  FieldSpec f5(5);
  // building twice gives identical schemes; no realization is ever an input
  CHECK(ic2_joint_abc_scheme(f5) == ic2_joint_abc_scheme(f5));
  StateFractions f = StateFractions::parse("1/2,1/4,1/8,1/8");
  CHECK(ic2_schedule(f, 16, f5) == ic2_schedule(f, 16, f5));
}
