#include <doctest.h>

#include <sstream>

#include "hadamard/errors.hpp"
#include "hadamard/rational.hpp"
#include "hadamard/scalar.hpp"

using hadamard::DomainError;
using hadamard::Rational;

TEST_CASE("rational literals parse to canonical form") {
  CHECK(Rational::parse("2/4") == Rational(1, 2));
  CHECK(Rational::parse(" -3/9 ") == Rational(-1, 3));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("+5/10") == Rational(1, 2));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
  CHECK(Rational::parse("3/-6") == Rational(-1, 2));
  CHECK(Rational(6, -8).str() == "-3/4");
  CHECK(Rational(0, 5).str() == "0");
}

TEST_CASE("malformed rationals are rejected") {
  CHECK_THROWS_AS(Rational::parse(""), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rational::parse("abc"), DomainError);
  CHECK_THROWS_AS(Rational::parse("."), DomainError);
  CHECK_THROWS_AS(Rational::parse("1e-6"), DomainError);
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("arithmetic and ordering are exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(abs(Rational(-2, 7)) == Rational(2, 7));
  CHECK(b < a);
  CHECK(a >= b);
  CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10));
  CHECK_THROWS_AS(a / Rational(0), DomainError);
  std::ostringstream os;
  os << Rational(-5, 15);
  CHECK(os.str() == "-1/3");
}

TEST_CASE("floor and conversions") {
  CHECK(Rational(7, 2).floor_long() == 3);
  CHECK(Rational(-7, 2).floor_long() == -4);
  CHECK(Rational(4).floor_long() == 4);
  CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
  CHECK(hadamard::ratio<double>(1, 4) == 0.25);
  CHECK(hadamard::ratio<Rational>(2, 8) == Rational(1, 4));
  CHECK(hadamard::to_string(0.1) == "0.1");
}

TEST_CASE("unit interval precondition") {
  CHECK_NOTHROW(hadamard::require_unit_interval(Rational(1), "t"));
  CHECK_THROWS_AS(hadamard::require_unit_interval(Rational(-1, 9), "t"), DomainError);
  CHECK_THROWS_AS(hadamard::require_unit_interval(1.5, "t"), DomainError);
  CHECK_THROWS_AS(hadamard::require_unit_interval(std::nan(""), "t"), DomainError);
}
