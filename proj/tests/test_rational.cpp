#include <doctest.h>

#include <doxa/rational.hpp>

using namespace doxa;

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(to_string(parse_rational("1/3")) == "1/3");
  CHECK(to_string(parse_rational("2/6")) == "1/3");
  CHECK(to_string(parse_rational("-2/6")) == "-1/3");
  CHECK(to_string(parse_rational("4")) == "4");
  CHECK(to_string(parse_rational("0")) == "0");
  CHECK(to_string(parse_rational("0/5")) == "0");
  CHECK(to_string(parse_rational("+7/14")) == "1/2");
  CHECK(parse_rational("123456789012345678901234567890/2") ==
        parse_rational("61728394506172839450617283945"));
}

TEST_CASE("malformed rationals are rejected") {
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-3"), ParseError);
  CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  CHECK_THROWS_AS(parse_rational("/2"), ParseError);
  CHECK_THROWS_AS(make_rational(1, 0), ValidationError);
}

TEST_CASE("arithmetic is exact") {
  Rational a = parse_rational("1/3");
  Rational b = parse_rational("1/6");
  CHECK(Rational(a + b) == parse_rational("1/2"));
  CHECK(Rational(a - b) == parse_rational("1/6"));
  CHECK(Rational(a * b) == parse_rational("1/18"));
  CHECK(Rational(a / b) == Rational(2));
  CHECK(sign(Rational(a - a)) == 0);
  CHECK(sign(Rational(b - a)) < 0);
  CHECK(make_rational(-4, -8) == parse_rational("1/2"));
}
