#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mfsp/error.hpp"
#include "mfsp/rational.hpp"

using namespace mfsp;

TEST_CASE("parse: fractions, integers and exact decimals") {
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("2.1") == Rational(21, 10));
  CHECK(Rational::parse("2.1").to_string() == "21/10");
  CHECK(Rational::parse("1e9") == Rational(Natural(1000000000)));
  CHECK(Rational::parse("1.5e-3") == Rational(3, 2000));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational::parse(""), Error);
}

TEST_CASE("canonical form and string round trip") {
  const Rational r(Natural(10), Natural(-4));
  CHECK(r.numerator() == -5);
  CHECK(r.denominator() == 2);
  CHECK(r.to_string() == "-5/2");
  CHECK(Rational::parse(r.to_string()) == r);
  CHECK(Rational(Natural(6), Natural(3)).is_integer());
  CHECK_THROWS_AS(Rational(Natural(1), Natural(0)), Error);
}

TEST_CASE("field operations are exact") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational a(Natural(static_cast<long>(rng() % 2001) - 1000), Natural(static_cast<long>(1 + rng() % 97)));
    const Rational b(Natural(static_cast<long>(rng() % 2001) - 1000), Natural(static_cast<long>(1 + rng() % 89)));
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    if (b.sign() != 0) CHECK((a / b) * b == a);
    CHECK(abs(a - b) == abs(b - a));
    CHECK(min(a, b) <= a);
    CHECK(min(a, b) <= b);
    CHECK(((a < b) || (a == b) || (a > b)));
  }
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK(-Rational(1, 3) == Rational(-1, 3));
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}
