#include "dioph/interval.hpp"

#include <doctest.h>

using namespace dioph;

TEST_CASE("intervals enclose exact rationals") {
  Interval third = Interval::fromRational(BigRat(1, 3), 128);
  CHECK(third.contains(BigRat(1, 3)));
  CHECK_FALSE(third.contains(BigRat(1, 4)));
  Interval sum = third + third + third;
  CHECK(sum.contains(BigRat(1)));
  CHECK(mpfr_cmp_ui(sum.width().get(), 0) >= 0);
}

TEST_CASE("sqrt and log enclose known values") {
  Interval two = Interval::fromInteger(2, 200);
  Interval r = sqrt(two);
  // 1.41421356237 < sqrt 2 < 1.41421356238
  CHECK(mpfr_cmp_d(r.lo().get(), 1.41421356237) > 0);
  CHECK(mpfr_cmp_d(r.hi().get(), 1.41421356238) < 0);
  Interval prod = r * r;
  CHECK(prod.contains(BigRat(2)));
  Interval l = log(Interval::fromInteger(1, 64));
  CHECK(l.contains(BigRat(0)));
  CHECK_THROWS(log(Interval::fromInteger(0, 64)));
}

TEST_CASE("division rejects intervals through zero") {
  Interval a = Interval::fromInteger(1, 64);
  Interval z = Interval::fromBounds(BigRat(-1), BigRat(1), 64);
  CHECK(z.containsZero());
  CHECK_THROWS(a / z);
  Interval q = a / Interval::fromInteger(4, 64);
  CHECK(q.contains(BigRat(1, 4)));
}

TEST_CASE("certain comparisons and exact conversion") {
  Interval a = Interval::fromBounds(BigRat(1), BigRat(2), 64);
  Interval b = Interval::fromBounds(BigRat(3), BigRat(4), 64);
  CHECK(certainlyLess(a, b));
  CHECK_FALSE(certainlyLess(b, a));
  CHECK(exactValue(a.hi()) == BigRat(2));
  Interval h = Interval::hull(a, b);
  CHECK(h.contains(BigRat(5, 2)));
  CHECK(max(a, b).contains(BigRat(7, 2)));
  CHECK(approxLog(BigRat(1)) == doctest::Approx(0.0));
  CHECK(approxLog(BigRat(ipow(BigInt(10), 400))) == doctest::Approx(400 * std::log(10.0)));
}
