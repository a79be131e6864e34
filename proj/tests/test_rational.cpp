#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gapamp/rational.hpp"
#include "test_util.hpp"

using namespace gapamp;

TEST_CASE("construction normalizes") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).to_string() == "2");
    CHECK(Rational(3, 8).to_string() == "3/8");
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 8) == Rational(3, 8));
    CHECK(Rational(1, 2) * Rational(1, 2) == Rational(1, 4));
    CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
    CHECK(rational_pow(Rational(3, 4), 3) == Rational(27, 64));
    CHECK(rational_abs(Rational(-3, 8)) == Rational(3, 8));
}

TEST_CASE("comparisons cross-multiply") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(3, 8) <= Rational(3, 8));
    CHECK(Rational(7, 16) > Rational(3, 8));
    CHECK_FALSE(Rational(1, 2) < Rational(1, 2));
}

TEST_CASE("overflow and zero denominators are loud") {
    using test::thrown_code;
    CHECK(thrown_code([] { Rational(1, 0); }) == ErrorCode::NumericOverflow);
    CHECK(thrown_code([] { Rational big(INT64_MAX, 1); auto r = big * big; (void)r; }) ==
          ErrorCode::NumericOverflow);
    CHECK(thrown_code([] { auto r = Rational(1, 2) / Rational(0); (void)r; }) ==
          ErrorCode::NumericOverflow);
}
