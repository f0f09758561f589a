#include "dioph/angles.hpp"
#include "dioph/construct.hpp"

#include <doctest.h>

#include <random>

using namespace dioph;

namespace {

RatVector rv(std::initializer_list<long> xs) {
  RatVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v[i++] = BigRat(x);
  return v;
}

RatMatrix cols(std::initializer_list<RatVector> vs) {
  std::vector<RatVector> v(vs);
  return columns(v);
}

RationalSubspace span(std::initializer_list<RatVector> vs) {
  std::vector<IntVector> iv;
  for (const auto& v : vs) iv.push_back(clearDenominators(v));
  return saturate(iv);
}

// Oracle: |a ^ b|^2 / (|a|^2 |b|^2) through Gram determinants (Cauchy-Binet).
BigRat wedgeRatio(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  return determinant<BigRat>(RatMatrix(ab.transpose() * ab)) /
         (determinant<BigRat>(RatMatrix(a.transpose() * a)) * determinant<BigRat>(RatMatrix(b.transpose() * b)));
}

}  // namespace

TEST_CASE("squared sines of vector pairs") {
  CHECK(angleOfVectors(rv({1, 1}), rv({1, 0})) == BigRat(1, 2));
  CHECK(angleOfVectors(rv({2, 4, 6}), rv({1, 2, 3})) == 0);
  CHECK(angleOfVectors(rv({1, 0}), rv({0, 1})) == 1);
  CHECK_THROWS_AS(angleOfVectors(rv({0, 0}), rv({0, 1})), ValidationError);
}

TEST_CASE("first angle from a line to a subspace") {
  CHECK(firstAngleLineToSubspace(rv({1, 1, 0}), span({rv({1, 0, 0})})) == BigRat(1, 2));
  CHECK(firstAngleLineToSubspace(rv({1, 1, 2}), span({rv({1, 0, 1}), rv({0, 1, 1})})) == 0);
  CHECK(firstAngleLineToSubspace(rv({0, 0, 1}), span({rv({1, 0, 0}), rv({0, 1, 0})})) == 1);
  CHECK_THROWS_AS(firstAngleLineToSubspace(rv({0, 0, 0}), span({rv({1, 0, 0})})), ValidationError);
}

TEST_CASE("principal sines on small configurations") {
  auto r = principalSines(cols({rv({1, 0, 0}), rv({0, 1, 0})}), cols({rv({1, 0, 0}), rv({0, 1, 1})}));
  REQUIRE(r.omegas.size() == 2);
  CHECK(r.omegas[0].exact);
  CHECK(r.omegas[0].sqLo == 0);
  CHECK(r.omegas[1].sqLo <= BigRat(1, 2));
  CHECK(r.omegas[1].sqHi >= BigRat(1, 2));

  auto same = principalSines(cols({rv({1, 2, 3}), rv({0, 1, 1})}), cols({rv({1, 3, 4}), rv({1, 1, 2})}));
  for (const auto& w : same.omegas) CHECK(w.sqHi == 0);

  auto orth = principalSines(cols({rv({1, 0, 0})}), cols({rv({0, 1, 0}), rv({0, 0, 1})}));
  CHECK(orth.omegas[0].sqLo == 1);
  CHECK_THROWS_AS(principalSines(cols({rv({1, 0, 0}), rv({2, 0, 0})}), cols({rv({0, 1, 0})})), ValidationError);
}

TEST_CASE("exact line path lies inside the principal-sine bracket") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(-7, 7);
  for (int t = 0; t < 30; ++t) {
    RatVector y(4), b1(4), b2(4);
    for (int i = 0; i < 4; ++i) {
      y[i] = d(rng);
      b1[i] = d(rng);
      b2[i] = d(rng);
    }
    RatMatrix b = cols({b1, b2});
    if (y.isZero() || rank(b) < 2) continue;
    BigRat exact = firstAngleLineToSubspace(y, saturate(std::vector<IntVector>{clearDenominators(b1), clearDenominators(b2)}));
    auto rep = principalSines(cols({y}), b);
    CHECK(rep.omegas[0].sqLo <= exact);
    CHECK(exact <= rep.omegas[0].sqHi);
  }
}

TEST_CASE("product of squared sines matches the wedge ratio") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 25; ++t) {
    RatMatrix a(5, 2), b(5, 2);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 2; ++j) {
        a(i, j) = d(rng);
        b(i, j) = d(rng);
      }
    if (rank(a) < 2 || rank(b) < 2) continue;
    auto rep = principalSines(a, b);
    BigRat lo = 1, hi = 1;
    for (const auto& w : rep.omegas) {
      lo *= w.sqLo;
      hi *= w.sqHi;
      CHECK(w.sqLo >= 0);
      CHECK(w.sqHi <= 1);
    }
    const BigRat ratio = wedgeRatio(a, b);
    CHECK(lo <= ratio);
    CHECK(ratio <= hi);
    for (std::size_t i = 1; i < rep.omegas.size(); ++i) CHECK(rep.omegas[i - 1].sqLo <= rep.omegas[i].sqHi);
  }
}

TEST_CASE("nested targets never increase the matching angle") {
  // A' = Span(a1) inside A = Span(a1, a2): omega_1(A, B) <= omega_1(A', B).
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int t = 0; t < 20; ++t) {
    RatMatrix a(4, 2), b(4, 2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j) {
        a(i, j) = d(rng);
        b(i, j) = d(rng);
      }
    if (rank(a) < 2 || rank(b) < 2) continue;
    auto big = principalSines(a, b);
    auto small = principalSines(RatMatrix(a.leftCols(1)), b);
    CHECK(big.omegas[0].sqLo <= small.omegas[0].sqHi);
  }
}

TEST_CASE("psi drops the forced zero angles") {
  auto r = principalSines(cols({rv({1, 0, 0}), rv({0, 1, 0})}), cols({rv({1, 0, 0}), rv({0, 1, 1})}));
  auto psi = psiFromOmegas(r, 2, 2, 3);
  REQUIRE(psi.size() == 1);
  CHECK(psi[0].sqLo <= BigRat(1, 2));
  auto line = principalSines(cols({rv({1, 1, 0})}), cols({rv({1, 0, 0})}));
  CHECK(psiFromOmegas(line, 1, 1, 3).size() == 1);
  auto four = principalSines(cols({rv({1, 0, 0, 0}), rv({0, 1, 0, 0})}), cols({rv({1, 1, 0, 0}), rv({0, 0, 1, 0})}));
  CHECK(psiFromOmegas(four, 2, 2, 4).size() == 2);
}

TEST_CASE("angle to a truncated line target follows theta^-alpha") {
  auto lb = buildLine(3, {BigRat(3)}, BigInt(5), 1);
  const auto& line = lb.line;
  for (long N = 1; N <= 3; ++N)
    for (int e = 1; e <= 2; ++e) {
      auto b = line.bApprox(N, e);
      auto ta = angleIntervalToTruncatedTarget(line.truncatedTarget(N + e + 2), b, 1);
      CHECK(ta.rigorous);
      const double logPsi = std::log(ta.psi.midDouble()) / std::log(5.0);
      const double alpha = static_cast<double>(line.schedule().alpha(N + e));
      // within a factor 2 in log scale
      CHECK(-logPsi >= alpha / 2);
      CHECK(-logPsi <= 2 * alpha);
    }
}

TEST_CASE("truncated targets inside B give [0, delta] and bad j throws") {
  auto lb = buildLine(3, {BigRat(3)}, BigInt(5), 1);
  auto t = lb.line.truncatedTarget(2);
  auto b = saturate(std::vector<IntVector>{clearDenominators(t.generators.col(0)), IntVector::Unit(3, 1)});
  auto ta = angleIntervalToTruncatedTarget(t, b, 1);
  CHECK(mpfr_zero_p(ta.psi.lo().get()));
  CHECK(mpfr_cmp(ta.psi.hi().get(), ta.delta.hi().get()) <= 0);
  CHECK_THROWS_AS(angleIntervalToTruncatedTarget(t, b, 2), ValidationError);
}

TEST_CASE("coarse truncation raises PrecisionExhausted") {
  auto lb = buildLine(3, {BigRat(3)}, BigInt(5), 1);
  auto b = lb.line.bApprox(3, 1);
  CHECK_THROWS_AS(angleIntervalToTruncatedTarget(lb.line.truncatedTarget(1), b, 1), PrecisionExhausted);
}

TEST_CASE("projection witness") {
  std::vector<int> blocks = {2, 2};
  auto w = projectionLowerBoundWitness(cols({rv({1, 0, 0, 0})}), {1, 2}, blocks);
  CHECK(w.j == 2);
  CHECK(w.ratioLo == 1);
  auto w2 = projectionLowerBoundWitness(cols({rv({1, 1})}), {1, 2}, {1, 1});
  CHECK(w2.ratioLo <= BigRat(1, 2));
  CHECK(w2.ratioHi >= BigRat(1, 2));
  CHECK(w2.ratioLo >= BigRat(1, 5));
  CHECK_THROWS_AS(projectionLowerBoundWitness(cols({rv({1, 0}), rv({0, 1})}), {1, 2}, {1, 1}), ValidationError);
}

TEST_CASE("projection witness ratio stays above 1/(n^2+1)") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 20; ++t) {
    // Three blocks of size 2, F of dimension 2 < #J = 3.
    RatMatrix f(6, 2);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 2; ++j) f(i, j) = d(rng);
    if (rank(f) < 2) continue;
    auto w = projectionLowerBoundWitness(f, {1, 2, 3}, {2, 2, 2});
    CHECK(w.ratioHi >= BigRat(1, 37));
  }
}
