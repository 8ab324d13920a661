#include <catch2/catch_amalgamated.hpp>

#include "altnet/rational.hpp"

using altnet::Rational;

TEST_CASE("construction normalizes to lowest terms") {
  CHECK(Rational(4, 6) == Rational(2, 3));
  CHECK(Rational(-4, 6) == Rational(-2, 3));
  CHECK(Rational(4, -6) == Rational(-2, 3));
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(7, 7).num() == 1);
  CHECK(Rational(7, 7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse accepts num/den and integers only") {
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("-2/4") == Rational(-1, 2));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("/3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("one third"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1) - Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(4, 3) >= Rational(4, 3));
  CHECK(altnet::min(Rational(1, 3), Rational(1, 4)) == Rational(1, 4));
  CHECK(altnet::max(Rational(1, 3), Rational(1, 4)) == Rational(1, 3));
}

TEST_CASE("string rendering") {
  CHECK(Rational(4, 3).str() == "4/3");
  CHECK(Rational(2).str() == "2");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(4, 3).decimal() == "1.333333");
  CHECK(Rational(2, 3).decimal() == "0.666667");
  CHECK(Rational(1, 2).decimal() == "0.500000");
  CHECK(Rational(2).decimal() == "2.000000");
  CHECK(Rational(-1, 8).decimal(3) == "-0.125");
  CHECK(Rational(1, 1000000).decimal(3) == "0.000");
}

TEST_CASE("overflow is detected, not wrapped") {
  Rational big(INT64_MAX, 1);
  CHECK_THROWS_AS(big + Rational(1), std::overflow_error);
  CHECK_THROWS_AS(big * Rational(2), std::overflow_error);
  // reducible intermediates survive because reduction happens in 128 bits
  Rational half_max(INT64_MAX - 1, 2);
  CHECK_NOTHROW(half_max * Rational(2, INT64_MAX - 1));
}
