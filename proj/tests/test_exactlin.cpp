#include "dioph/exactlin.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace dioph;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v[i++] = x;
  return v;
}

IntMatrix randomMatrix(std::mt19937_64& rng, int n, int k, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = d(rng);
  return m;
}

// Oracle: Cauchy-Binet gives |X_1 ^ ... ^ X_e|^2 = det(X^T X).
BigInt gramDet(const IntMatrix& basis) { return determinant<BigInt>(IntMatrix(basis.transpose() * basis)); }

// Oracle: enumerate integer points of the rational span with small entries
// and check each is an integer combination of the basis.
bool containsSmallLatticePoints(const RationalSubspace& b, int box) {
  const int n = b.ambient();
  RatMatrix basis = toRational(b.basis());
  IntVector v(n);
  std::vector<int> idx(static_cast<std::size_t>(n), -box);
  while (true) {
    for (int i = 0; i < n; ++i) v[i] = idx[static_cast<std::size_t>(i)];
    auto sol = solveExact(basis, toRational(v));
    if (sol && (basis * *sol) == toRational(v)) {
      for (Eigen::Index i = 0; i < sol->size(); ++i)
        if (denom((*sol)[i]) != 1) return false;
    }
    int p = 0;
    while (p < n && idx[static_cast<std::size_t>(p)] == box) idx[static_cast<std::size_t>(p++)] = -box;
    if (p == n) break;
    ++idx[static_cast<std::size_t>(p)];
  }
  return true;
}

}  // namespace

TEST_CASE("colex subsets and ranks") {
  auto s = colexSubsets(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s[0] == std::vector<int>{0, 1});
  CHECK(s[1] == std::vector<int>{0, 2});
  CHECK(s[2] == std::vector<int>{1, 2});
  CHECK(s[3] == std::vector<int>{0, 3});
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(colexRank(s[i]) == i);
}

TEST_CASE("wedge products") {
  IntMatrix m(3, 2);
  m.col(0) = iv({1, 0, 1});
  m.col(1) = iv({0, 1, 1});
  auto w = wedge(m);
  CHECK(w.coords() == std::vector<BigInt>{1, 1, -1});
  IntMatrix single(3, 1);
  single.col(0) = iv({1, 2, 3});
  CHECK(wedge(single).coords() == std::vector<BigInt>{1, 2, 3});
  IntMatrix par(2, 2);
  par << 1, 2, 0, 0;
  CHECK(wedge(par).isZero());
  IntMatrix empty(3, 0);
  CHECK_THROWS(wedge(empty));
}

TEST_CASE("wedge is alternating") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    IntMatrix m = randomMatrix(rng, 5, 3, 9);
    IntMatrix swapped = m;
    swapped.col(0).swap(swapped.col(2));
    auto a = wedge(m), b = wedge(swapped);
    for (std::size_t i = 0; i < a.coords().size(); ++i) CHECK(a.coords()[i] == -b.coords()[i]);
    IntMatrix rep = m;
    rep.col(1) = rep.col(0);
    CHECK(wedge(rep).isZero());
  }
}

TEST_CASE("saturation examples") {
  auto b = saturate(std::vector<IntVector>{iv({2, 0}), iv({0, 2})});
  CHECK(b.dim() == 2);
  CHECK(b.heightSq() == 1);
  auto line = saturate(std::vector<IntVector>{iv({2, 4})});
  CHECK(line.basis().col(0) == iv({1, 2}));
  auto plane = saturate(std::vector<IntVector>{iv({1, 0, 1}), iv({0, 1, 1})});
  CHECK(plane.heightSq() == 3);
  CHECK(heightSq(saturate(std::vector<IntVector>{iv({1, 2, 2})})) == 9);
  CHECK(RationalSubspace::full(4).heightSq() == 1);
  CHECK(RationalSubspace::zero(4).heightSq() == 1);
  CHECK_THROWS_AS(saturate(std::vector<IntVector>{iv({0, 0, 0})}), ValidationError);
}

TEST_CASE("saturated bases generate every small lattice point of the span") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 15; ++t) {
    IntMatrix s = randomMatrix(rng, 3, 2, 6);
    s.col(0) *= 2;
    if (rank(s) < 2) continue;
    auto b = saturate(s);
    CHECK(containsSmallLatticePoints(b, 4));
  }
}

TEST_CASE("height via saturation equals the Gram determinant of the saturated basis") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % n);
    IntMatrix s = randomMatrix(rng, n, k, 20);
    if (rank(s) == 0) continue;
    auto b = saturate(s);
    CHECK(b.heightSq() == gramDet(b.basis()));
    CHECK(b.plucker().normSq() == b.heightSq());
    CHECK(b.dim() == rank(s));
  }
}

TEST_CASE("orthogonal complements") {
  auto line = saturate(std::vector<IntVector>{iv({1, 2, 2})});
  auto perp = orthComplement(line);
  CHECK(perp.dim() == 2);
  CHECK(perp.heightSq() == 9);
  CHECK((perp.basis().transpose() * line.basis()).isZero());
  auto e1 = saturate(std::vector<IntVector>{iv({1, 0, 0})});
  CHECK(orthComplement(e1) == saturate(std::vector<IntVector>{iv({0, 1, 0}), iv({0, 0, 1})}));
  CHECK(orthComplement(perp) == line);
  CHECK_THROWS_AS(orthComplement(RationalSubspace::full(3)), ValidationError);
}

TEST_CASE("coordinate projections") {
  auto b = saturate(std::vector<IntVector>{iv({0, 0, 1}), iv({1, 1, 0})});
  auto split = coordProject(b, {0, 1});
  CHECK(split.kerPart.heightSq() == 1);
  CHECK(split.kerPart.dim() == 1);
  CHECK(split.image.heightSq() == 2);
  CHECK(split.factorizationHolds);
  CHECK(split.kernelInside);

  auto c = saturate(std::vector<IntVector>{iv({1, 0, 1}), iv({0, 1, 1})});
  auto bad = coordProject(c, {0, 1});
  CHECK(bad.kerPart.dim() == 0);
  CHECK(bad.image.dim() == 2);
  CHECK(bad.image.heightSq() == 1);
  CHECK_FALSE(bad.factorizationHolds);
  CHECK_FALSE(bad.kernelInside);

  auto e1 = saturate(std::vector<IntVector>{iv({1, 0, 0})});
  CHECK(coordProject(e1, {0}).factorizationHolds);
}

TEST_CASE("projection never raises the height") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % (n - 1));
    IntMatrix s = randomMatrix(rng, n, k, 5);
    if (rank(s) == 0) continue;
    auto b = saturate(s);
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
      if (rng() % 2) keep.push_back(i);
    if (keep.empty()) keep.push_back(0);
    auto split = coordProject(b, keep);
    CHECK(split.image.heightSq() <= b.heightSq());
    if (split.kernelInside) CHECK(split.factorizationHolds);
  }
}

TEST_CASE("membership by wedge") {
  auto plane = saturate(std::vector<IntVector>{iv({1, 0, 1}), iv({0, 1, 1})});
  CHECK(membershipByWedge(iv({1, 1, 2}), plane).verdict == Membership::InB);
  auto xy = saturate(std::vector<IntVector>{iv({1, 0, 0}), iv({0, 1, 0})});
  auto r = membershipByWedge(iv({1, 1, 1}), xy);
  CHECK(r.verdict == Membership::Inconclusive);
  CHECK(r.wedgeNormSq == 1);
  auto l = saturate(std::vector<IntVector>{iv({1, 2, 3})});
  CHECK(membershipByWedge(iv({2, 4, 6}), l).verdict == Membership::InB);
  CHECK_THROWS_AS(membershipByWedge(iv({0, 0, 0}), l), ValidationError);
}

TEST_CASE("membership agrees with an exact linear solve") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    IntMatrix s = randomMatrix(rng, 4, 2, 3);
    if (rank(s) < 2) continue;
    auto b = saturate(s);
    IntVector y = randomMatrix(rng, 4, 1, 3).col(0);
    if (t % 2 == 0) y = s.col(0) * 2 - s.col(1);
    if (y.isZero()) continue;
    RatMatrix basis = toRational(b.basis());
    auto sol = solveExact(basis, toRational(y));
    const bool inSpan = sol && basis * *sol == toRational(y);
    CHECK((membershipByWedge(y, b).verdict == Membership::InB) == inSpan);
  }
}

TEST_CASE("direct sums of coordinate blocks") {
  IntMatrix a(4, 1), b(4, 1);
  a.col(0) = iv({1, 2, 0, 0});
  b.col(0) = iv({0, 0, 1, 1});
  auto s = directSum({saturate(a), saturate(b)}, 4);
  CHECK(s.dim() == 2);
  CHECK(s.heightSq() == 10);
}

TEST_CASE("inverse and rank") {
  RatMatrix m(2, 2);
  m << BigRat(2), BigRat(1), BigRat(1), BigRat(1);
  RatMatrix inv = inverseExact(m);
  CHECK(m * inv == RatMatrix::Identity(2, 2));
  CHECK(rank(m) == 2);
  RatMatrix sing(2, 2);
  sing << BigRat(1), BigRat(2), BigRat(2), BigRat(4);
  CHECK(rank(sing) == 1);
  CHECK_THROWS(inverseExact(sing));
}
