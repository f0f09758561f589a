#include "dioph/scalar.hpp"

#include <doctest.h>

#include <numeric>

using namespace dioph;

TEST_CASE("parseRational accepts integers, fractions and decimals") {
  CHECK(parseRational("7") == BigRat(7));
  CHECK(parseRational("-3/6") == BigRat(-1, 2));
  CHECK(parseRational("1.25") == BigRat(5, 4));
  CHECK(parseRational(" 2 ") == BigRat(2));
  CHECK_THROWS_AS(parseRational("1/0"), ValidationError);
  CHECK_THROWS_AS(parseRational("abc"), ValidationError);
  CHECK_THROWS_AS(parseInteger("1/2"), ValidationError);
}

TEST_CASE("floor and ceil agree with long double on small fractions") {
  for (int p = -40; p <= 40; ++p)
    for (int q = 1; q <= 7; ++q) {
      BigRat x(p, q);
      CHECK(floorOf(x) == BigInt(static_cast<long>(std::floor(static_cast<long double>(p) / q))));
      CHECK(ceilOf(x) == BigInt(static_cast<long>(std::ceil(static_cast<long double>(p) / q))));
    }
  CHECK(floorDiv(BigInt(-7), BigInt(2)) == -4);
}

TEST_CASE("powers, gcd and the extended gcd identity") {
  CHECK(ipow(BigInt(5), 9) == BigInt(1953125));
  CHECK(rpow(BigRat(2, 3), -2) == BigRat(9, 4));
  CHECK(gcd(BigInt(84), BigInt(-36)) == 12);
  CHECK(lcm(BigInt(4), BigInt(6)) == 12);
  for (long a = -30; a <= 30; a += 7)
    for (long b = -25; b <= 25; b += 6) {
      BigInt g, s, t;
      extendedGcd(BigInt(a), BigInt(b), g, s, t);
      CHECK(g == BigInt(std::gcd(a, b)));
      CHECK(s * a + t * b == g);
    }
}

TEST_CASE("row parsing and denominator clearing") {
  auto rows = parseIntRows("1,0,1; 0,1,1");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][2] == 1);
  IntMatrix m = columns(rows);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  RatVector v(3);
  v << BigRat(1, 2), BigRat(1, 3), BigRat(0);
  IntVector c = clearDenominators(v);
  CHECK(c[0] == 3);
  CHECK(c[1] == 2);
  CHECK(content(c) == 1);
  CHECK_THROWS_AS(parseIntRows("1,,2"), ValidationError);
}

TEST_CASE("primality and the seeded mixer") {
  CHECK(isProbablePrime(BigInt(5)));
  CHECK(isProbablePrime(BigInt(1000003)));
  CHECK_FALSE(isProbablePrime(BigInt(1000001)));
  CHECK(splitmix64(1) == splitmix64(1));
  CHECK(splitmix64(1) != splitmix64(2));
  CHECK(toString(BigRat(6, 4)) == "3/2");
  CHECK(toString(BigRat(4, 2)) == "2");
}
