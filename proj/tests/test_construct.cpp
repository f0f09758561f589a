#include "dioph/construct.hpp"

#include <doctest.h>

using namespace dioph;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v[i++] = x;
  return v;
}

// The worked line: n = 3, theta = 5, floors (1, 2, 7), digits 1, 1, 2.
LineConstruction workedLine() {
  auto schedule = std::make_shared<const GrowthSchedule>(std::vector<BigRat>{BigRat(2), BigRat(7, 2)}, BigInt(5));
  return LineConstruction(3, 0, schedule, DigitFamily(2, 0, {1, 1, 2}));
}

}  // namespace

TEST_CASE("alpha sequences") {
  auto a = alphaSequence({BigRat(3)}, 3);
  REQUIRE(a.size() == 4);
  CHECK(a[3].first == 27);
  CHECK(a[3].second == 27);
  auto b = alphaSequence({BigRat(5, 2), BigRat(3)}, 3);
  CHECK(b[1].first == BigRat(5, 2));
  CHECK(b[2].first == BigRat(15, 2));
  CHECK(b[3].first == BigRat(75, 4));
  CHECK(b[1].second == 2);
  CHECK(b[2].second == 7);
  CHECK(b[3].second == 18);
  auto c = alphaSequence({BigRat(3)}, 0);
  REQUIRE(c.size() == 1);
  CHECK(c[0].first == 1);
  CHECK_THROWS_AS(alphaSequence({BigRat(1)}, 2), ValidationError);
}

TEST_CASE("growth schedules reject bad theta and cap the floors") {
  CHECK_THROWS_AS(GrowthSchedule({BigRat(3)}, BigInt(4)), ValidationError);
  CHECK_THROWS_AS(GrowthSchedule({BigRat(3)}, BigInt(3)), ValidationError);
  GrowthSchedule capped({BigRat(3)}, BigInt(5), 100);
  CHECK(capped.floorAlpha(4) == 81);
  CHECK_THROWS_AS(capped.floorAlpha(5), ValidationError);
  GrowthSchedule periodic({BigRat(3), BigRat(4)}, BigInt(5));
  CHECK(periodic.gamma(1) == 3);
  CHECK(periodic.gamma(2) == 4);
  CHECK(periodic.gamma(7) == 3);
}

TEST_CASE("worked X vectors and the one-entry recurrence") {
  auto line = workedLine();
  CHECK(line.xVector(0) == iv({5, 1, 0}));
  CHECK(line.xVector(1) == iv({25, 5, 1}));
  CHECK(line.xVector(2) == iv({78125, 15627, 3125}));
  for (long N = 1; N <= 2; ++N) {
    IntVector w = line.wVector(N);
    int nonzero = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (w[i] != 0) {
        ++nonzero;
        CHECK((w[i] == 1 || w[i] == 2));
      }
    CHECK(nonzero == 1);
  }
}

TEST_CASE("worked B_{0,2} from the claimed basis and by saturation") {
  auto line = workedLine();
  auto b = line.bApprox(0, 2);
  CHECK(b.heightSq() == 26);
  CHECK(b == line.bApproxBySaturation(0, 2));
  CHECK(b == saturate(std::vector<IntVector>{iv({5, 1, 0}), iv({0, 0, 1})}));
  CHECK_THROWS_AS(line.bApprox(0, 3), ValidationError);
}

TEST_CASE("claimed Z-basis matches saturation across the grid") {
  for (int n = 3; n <= 4; ++n) {
    auto lb = buildLine(n, {BigRat(3)}, BigInt(5), 42);
    for (long N = 0; N <= 4; ++N)
      for (int e = 1; e <= n - 1; ++e) {
        auto b = lb.line.bApprox(N, e);
        CHECK(b.dim() == e);
        CHECK(b.heightSq() == lb.line.bApproxBySaturation(N, e).heightSq());
        CHECK(b.heightSq() <= lb.line.xVector(N).squaredNorm());
      }
  }
}

TEST_CASE("first coordinate of X_N is a theta power and e = 1 gives |X_N|^2") {
  auto lb = buildLine(3, {BigRat(3)}, BigInt(5), 7);
  for (long N = 0; N <= 4; ++N) {
    CHECK(lb.line.xVector(N)[0] == ipow(BigInt(5), static_cast<unsigned long>(lb.line.schedule().floorAlpha(N))));
    CHECK(lb.line.bApprox(N, 1).heightSq() == lb.line.xVector(N).squaredNorm());
  }
}

TEST_CASE("truncation tail bound dominates the difference of two levels") {
  auto lb = buildLine(3, {BigRat(3)}, BigInt(5), 3);
  for (long M = 1; M <= 3; ++M) {
    RatVector a = lb.line.yTruncation(M), b = lb.line.yTruncation(M + 2);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      BigRat diff = a[i] - b[i];
      if (diff < 0) diff = -diff;
      CHECK(diff <= lb.line.tailBound(M));
    }
  }
}

TEST_CASE("line predictions and modes") {
  auto three = buildLine(3, {BigRat(3)}, BigInt(5), 1);
  CHECK(three.line.predictedExponent(1).value() == 3);
  CHECK(three.line.predictedExponent(2).value() == 9);
  auto mixed = buildLine(3, {BigRat(3), BigRat(4)}, BigInt(5), 1);
  CHECK(mixed.line.predictedExponent(1).value() == 4);
  CHECK(mixed.line.predictedExponent(2).value() == 12);
  auto other = buildLine(3, {BigRat(3), BigRat(4)}, BigInt(5), 2);
  CHECK(other.line.predictedExponent(2).value() == 12);
  CHECK(other.line.digits().transcript(40) != mixed.line.digits().transcript(40));

  CHECK_THROWS_AS(buildLine(3, {BigRat(5, 2)}, BigInt(5), 1, Mode::Strict), ValidationError);
  auto relaxed = buildLine(3, {BigRat(5, 2)}, BigInt(5), 1, Mode::Relaxed);
  CHECK_FALSE(relaxed.flags.empty());
  CHECK_THROWS_AS(buildLine(3, {BigRat(2)}, BigInt(5), 1, Mode::Relaxed), ValidationError);
}

TEST_CASE("digit families") {
  auto f = digitFamily(2, 9);
  for (long k = 0; k < 10; ++k) CHECK(f.lane(k) == k % 2);
  CHECK(f.transcript(50) == digitFamily(2, 9).transcript(50));
  long ones = 0;
  const long K = 10000;
  for (int d : f.transcript(K)) {
    CHECK((d == 1 || d == 2));
    ones += d == 1;
  }
  CHECK(ones >= 45 * K / 100);
  CHECK(ones <= 55 * K / 100);
  CHECK(f.value(1, 3) == f.digit(3));
  CHECK(f.value(0, 3) == 0);
}

TEST_CASE("block constructions") {
  BlockParams p;
  p.d = 2;
  p.m = 2;
  p.beta = {{BigRat(5), BigRat(4)}, {BigRat(26), BigRat(25)}};
  p.mode = Mode::Relaxed;
  auto bc = buildBlocks(p);
  CHECK(bc.n() == 6);
  CHECK(bc.predictedExponent(3, 2).value() == BigRat(260, 23));

  // Cross-block generators are orthogonal.
  for (long N = 0; N <= 1; ++N) CHECK(bc.xVector(1, N).dot(bc.xVector(2, N)) == 0);

  // e = 3, k = 2, N = (2, 2): height is the product of the block heights.
  auto c = bc.cApprox({1, 2}, {2, 2}, 3);
  CHECK(c.dim() == 3);
  auto b1 = bc.blocks()[0].bApprox(2, 2), b2 = bc.blocks()[1].bApprox(2, 1);
  CHECK(c.heightSq() == b1.heightSq() * b2.heightSq());

  auto single = bc.cApprox({1}, {1}, 1);
  CHECK(single.heightSq() == bc.blocks()[0].bApprox(1, 1).heightSq());

  // v_q = m + 1 collapses to a full coordinate block of height 1.
  auto full = bc.cApprox({1, 2}, {1, 1}, 5);
  CHECK(full.heightSq() == bc.blocks()[1].bApprox(1, 2).heightSq());

  p.mode = Mode::Strict;
  CHECK_THROWS_AS(buildBlocks(p), ValidationError);
}

TEST_CASE("a single block reduces to the line") {
  BlockParams p;
  p.d = 1;
  p.m = 2;
  p.beta = {{BigRat(3), BigRat(3)}};
  p.mode = Mode::Relaxed;
  p.seed = 4;
  auto bc = buildBlocks(p);
  CHECK(bc.n() == 3);
  CHECK(bc.xVector(1, 2) == bc.blocks()[0].xVector(2));
  CHECK(bc.predictedExponent(1, 1) == bc.blocks()[0].predictedExponent(1));
}

TEST_CASE("strictly increasing rows fail the strict hypotheses") {
  BlockParams p;
  p.d = 1;
  p.m = 2;
  p.beta = {{BigRat(10), BigRat(1000)}};
  CHECK_THROWS_AS(buildBlocks(p), ValidationError);
}

TEST_CASE("recursive constructions") {
  RecursiveParams p;
  p.n = 3;
  p.d = 1;
  p.gamma = {BigRat(3), BigRat(4)};
  p.seed = 5;
  auto rc = buildRecursive(p);
  auto lb = buildLine(3, p.gamma, BigInt(5), 5);
  CHECK(rc.levels()[0].xVector(3) == lb.line.xVector(3));
  CHECK(rc.predictedExponent(1).value() == 4);

  RecursiveParams q;
  q.n = 4;
  q.d = 2;
  q.gamma = {BigRat(4), BigRat(4)};
  q.mode = Mode::Relaxed;
  q.proxy = BigRat(3);
  q.truncation = 3;
  auto r2 = buildRecursive(q);
  REQUIRE(r2.levels().size() == 2);
  CHECK(r2.levels()[0].zeroGap() == 1);
  CHECK(r2.levels()[0].lanes() == 2);
  CHECK(r2.levels()[1].zeroGap() == 0);
  CHECK(r2.levels()[1].lanes() == 3);
  auto t = r2.truncatedTarget();
  CHECK(t.d == 2);
  CHECK(rank(t.generators) == 2);
  // Y_1 = (1, 0, sigma...) keeps its zero.
  CHECK(t.generators(1, 0) == 0);
  CHECK(r2.predictedExponent(2).value() == 16);

  q.mode = Mode::Strict;
  CHECK_THROWS_AS(buildRecursive(q), ValidationError);
  q.mode = Mode::Relaxed;
  q.proxy.reset();
  CHECK_THROWS_AS(buildRecursive(q), ValidationError);
}

TEST_CASE("C_2 for n = 4 follows 5 n^2 C_1^(2n)") {
  Interval c2 = cdInterval(2, 4, 256);
  Interval c1 = cdInterval(1, 4, 256);
  Interval expect = Interval::fromInteger(80, 256);
  for (int i = 0; i < 8; ++i) expect = expect * c1;
  CHECK(mpfr_cmp(c2.lo().get(), expect.hi().get()) <= 0);
  CHECK(mpfr_cmp(expect.lo().get(), c2.hi().get()) <= 0);
}
