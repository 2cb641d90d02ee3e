#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mms3/rational.hpp"

using mms3::BigInt;
using mms3::Rational;

TEST_CASE("arithmetic is exact and canonical", "[rational]") {
    Rational a(1, 3), b(1, 6);
    CHECK((a + b) == Rational(1, 2));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a * b) == Rational(1, 18));
    CHECK((a / b) == Rational(2));
    CHECK(Rational(2, 4).numerator() == 1);
    CHECK(Rational(2, 4).denominator() == 2);
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).denominator() == 2);
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK((-Rational(5, 3)).sign() == -1);
    CHECK(mms3::abs(Rational(-5, 3)) == Rational(5, 3));
}

TEST_CASE("zero denominators and division by zero are rejected", "[rational]") {
    CHECK_THROWS_AS(Rational(1, 0), mms3::ArgumentError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), mms3::ArgumentError);
}

TEST_CASE("comparisons are exact", "[rational]") {
    CHECK(Rational(1, 3) < Rational(34, 100));
    CHECK(Rational(11, 12) < Rational(1));
    CHECK(Rational(19, 18) > Rational(1));
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(7, 3) >= Rational(7, 3));
}

TEST_CASE("parse accepts integers, fractions and mixed forms", "[rational]") {
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse("22/3") == Rational(22, 3));
    CHECK(Rational::parse("7+1/3") == Rational(22, 3));
    CHECK(Rational::parse("-7+1/3") == Rational(-22, 3));
    CHECK(Rational::parse("10+1/3") == Rational(31, 3));
    CHECK(Rational::parse("0") == Rational(0));
    CHECK_THROWS_AS(Rational::parse(""), mms3::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/"), mms3::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), mms3::ParseError);
    CHECK_THROWS_AS(Rational::parse("7+1"), mms3::ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), mms3::ParseError);
    CHECK_THROWS_AS(Rational::parse("2x"), mms3::ParseError);
}

TEST_CASE("parse(format(r)) round-trips", "[rational]") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 500; ++trial) {
        long long num = static_cast<long long>(rng() % 2000001) - 1000000;
        long long den = static_cast<long long>(rng() % 1000000) + 1;
        Rational r(num, den);
        CHECK(Rational::parse(r.str()) == r);
    }
    // Values wider than 64 bits survive too.
    Rational big(BigInt("123456789012345678901234567890"), BigInt("98765432109876543210987"));
    CHECK(Rational::parse(big.str()) == big);
}

TEST_CASE("intermediate products exceed 64 bits without losing exactness", "[rational]") {
    Rational product(1);
    for (int i = 0; i < 40; ++i)
        product *= Rational(10);
    Rational back = product;
    for (int i = 0; i < 40; ++i)
        back /= Rational(10);
    CHECK(back == Rational(1));
    CHECK(product.str() == "1" + std::string(40, '0'));
}
