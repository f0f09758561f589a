#include "dioph/polynomial.hpp"

#include <doctest.h>

using namespace dioph;

namespace {

Polynomial poly(std::initializer_list<long> ascending) {
  std::vector<BigRat> c;
  for (long x : ascending) c.push_back(BigRat(x));
  return Polynomial(c);
}

}  // namespace

TEST_CASE("division reconstructs the dividend") {
  Polynomial a = poly({-1, 0, 0, 1}), b = poly({-1, 1});
  Polynomial q, r;
  divide(a, b, q, r);
  CHECK(q == poly({1, 1, 1}));
  CHECK(r.isZero());
  CHECK(gcd(poly({-1, 0, 1}), poly({1, 2, 1})).monic() == poly({1, 1}));
}

TEST_CASE("characteristic polynomial of small matrices") {
  RatMatrix m(2, 2);
  m << BigRat(2), BigRat(1), BigRat(1), BigRat(2);
  // x^2 - 4x + 3
  CHECK(characteristicPolynomial(m) == poly({3, -4, 1}));
  RatMatrix d = RatMatrix::Identity(3, 3) * BigRat(5);
  Polynomial p = characteristicPolynomial(d);
  CHECK(p(BigRat(5)) == 0);
  CHECK(p.degree() == 3);
}

TEST_CASE("square-free decomposition recovers multiplicities") {
  // (x - 1)^2 (x - 2)
  Polynomial p = poly({-2, 5, -4, 1});
  auto f = squareFreeDecomposition(p);
  int total = 0;
  for (const auto& s : f) total += s.factor.degree() * s.multiplicity;
  CHECK(total == 3);
  bool sawDouble = false;
  for (const auto& s : f)
    if (s.multiplicity == 2) sawDouble = s.factor.monic() == poly({-1, 1});
  CHECK(sawDouble);
}

TEST_CASE("real roots are bracketed with the requested relative width") {
  // x^2 - 2 on [0, 2]
  auto roots = realRoots(poly({-2, 0, 1}), BigRat(0), BigRat(2), BigRat(1, 1000000));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].lo * roots[0].lo <= 2);
  CHECK(roots[0].hi * roots[0].hi >= 2);
  CHECK(roots[0].hi - roots[0].lo <= roots[0].lo / 1000000);
  // x (x - 1/2)^2 keeps the double root and finds 0 exactly
  std::vector<BigRat> c = {BigRat(0), BigRat(1, 4), BigRat(-1), BigRat(1)};
  auto r2 = realRoots(Polynomial(c), BigRat(0), BigRat(1), BigRat(1, 1000));
  REQUIRE(r2.size() == 3);
  CHECK(r2[0].exact);
  CHECK(r2[0].lo == 0);
  CHECK(r2[1].lo <= BigRat(1, 2));
  CHECK(r2[2].hi >= BigRat(1, 2));
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplestRational(BigRat(3, 10), BigRat(2, 5)) == BigRat(1, 3));
  CHECK(simplestRational(BigRat(2), BigRat(2)) == BigRat(2));
  CHECK(simplestRational(BigRat(1, 2), BigRat(3, 2)) == BigRat(1));
}
