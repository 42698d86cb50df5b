#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "snum/ext_real.hpp"
#include "snum/rational.hpp"

using namespace snum;

TEST_CASE("rational arithmetic and normalization") {
    CHECK(Rational(1, 2) + Rational(3, 2) == Rational(2));
    CHECK(Rational(1, 2) - Rational(3, 2) == Rational(-1));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(7, 3) * Rational(3, 7) == Rational(1));
    CHECK(Rational(5, 4) / Rational(5, 2) == Rational(1, 2));
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(pos(Rational(-3, 4)) == Rational(0));
    CHECK(pos(Rational(3, 4)) == Rational(3, 4));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational::parse(" 7/4 ") == Rational(7, 4));
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK(Rational(22, 7).str() == "22/7");
    CHECK(Rational(-3).str() == "-3");
}

TEST_CASE("rational overflow is detected, not wrapped") {
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("ext real ordering runs through reciprocals") {
    ExtReal inf = ExtReal::infinity();
    ExtReal two(2);
    ExtReal half = ExtReal::from_value(Rational(1, 2));
    CHECK(half < two);
    CHECK(two < inf);
    CHECK(inf == ExtReal::from_recip(Rational(0)));
    CHECK(ExtReal::parse("inf").is_inf());
    CHECK(ExtReal::parse("3/2") == ExtReal::from_value(Rational(3, 2)));
    CHECK(min(two, inf) == two);
    CHECK(two.recip() == Rational(1, 2));
    CHECK_THROWS_AS(ExtReal::from_value(Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(ExtReal::parse("-2"), std::invalid_argument);
    CHECK_THROWS_AS(inf.value(), std::domain_error);
}

TEST_CASE("exact floor of dyadic powers") {
    CHECK(floor_pow2(Rational(0)) == 1);
    CHECK(floor_pow2(Rational(10)) == 1024);
    CHECK(floor_pow2(Rational(1, 2)) == 1);  // sqrt(2)
    CHECK(floor_pow2(Rational(3, 2)) == 2);  // 2.828...
    CHECK(floor_pow2(Rational(5, 2)) == 5);  // 5.656...
    CHECK(floor_pow2(Rational(10, 3)) == 10); // 2^(10/3) = 10.079...
    CHECK(floor_pow2(Rational(61, 2)) == 1518500249); // floor(2^30.5)
    CHECK_THROWS_AS(floor_pow2(Rational(-1)), std::invalid_argument);
    CHECK_THROWS_AS(floor_pow2(Rational(80)), std::overflow_error);
}

TEST_CASE("power comparison helpers agree with floating point away from ties") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> kv(1, 1 << 20), nv(1, 10), dv(1, 10);
    for (int i = 0; i < 2000; ++i) {
        long long k = kv(rng);
        Rational q(nv(rng) * 3, dv(rng));
        int exact = cmp_rat_pow2(Rational(k), q);
        double diff = std::log2((double)k) - q.to_double();
        if (std::abs(diff) > 1e-9) CHECK(exact == (diff < 0 ? -1 : 1));
    }
}
