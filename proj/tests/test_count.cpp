#include <doctest.h>

#include "mlmotif/count.hpp"

using namespace mlmotif;

TEST_CASE("decimal output") {
  CHECK(to_decimal(Count(0)) == "0");
  CHECK(to_decimal(Count(1) << 100) == "1267650600228229401496703205376");
  CHECK(to_decimal(Rational(13, 4)) == "3.25");
  CHECK(to_decimal(Rational(-1, 8)) == "-0.125");
  CHECK(to_decimal(Rational(16, 3)) == "5.333333333");
  CHECK(to_decimal(Rational(2, 3), 3) == "0.667");
  CHECK(to_decimal(Rational(6)) == "6");
  CHECK(to_fraction(Rational(6, 4)) == "3/2");
  CHECK(to_fraction(Rational(10, 5)) == "2");
}

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("-12") == Rational(-12));
  CHECK(parse_rational("3.25") == Rational(13, 4));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5E2") == Rational(250));
  CHECK(parse_rational("7/4") == Rational(7, 4));
  CHECK(parse_rational("0.1") * 10 == Rational(1));
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("falling factorial and factorial") {
  CHECK(falling_factorial(5, 0) == 1);
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(3, 4) == 0);
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == Count("2432902008176640000"));
  CHECK(factorial(25) == Count("15511210043330985984000000"));
}
