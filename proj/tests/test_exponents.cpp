#include "dioph/exponents.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace dioph;

namespace {

// Independent window maximum: every contiguous run of length v.
BigRat windowMaxOracle(const std::vector<BigRat>& row, int v) {
  BigRat best = v == 0 ? BigRat(1) : BigRat(0);
  for (std::size_t s = 0; s + static_cast<std::size_t>(v) <= row.size() && v > 0; ++s) {
    BigRat p = 1;
    for (int t = 0; t < v; ++t) p *= row[s + static_cast<std::size_t>(t)];
    best = std::max(best, p);
  }
  return best;
}

std::vector<BigRat> randomRow(std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<int> num(2, 40), den(1, 5);
  std::vector<BigRat> row;
  for (int i = 0; i < len; ++i) row.push_back(BigRat(num(rng), den(rng)) + 1);
  return row;
}

}  // namespace

TEST_CASE("g and f") {
  CHECK(gFunc(1, 1, 3) == 0);
  CHECK(gFunc(2, 2, 3) == 1);
  CHECK(fFunc(5, 4) == 1);
  CHECK(fFunc(3, 4) == 0);
}

TEST_CASE("vQ splits e into k near-equal parts") {
  CHECK(vQ(5, 2) == std::vector<int>{3, 2});
  CHECK(vQ(4, 2) == std::vector<int>{2, 2});
  CHECK(vQ(5, 3) == std::vector<int>{2, 2, 1});
  for (int k = 1; k <= 8; ++k)
    for (int e = k; e <= 64; ++e) {
      auto v = vQ(e, k);
      int sum = 0;
      for (int x : v) sum += x;
      CHECK(sum == e);
      CHECK(std::is_sorted(v.rbegin(), v.rend()));
      CHECK(v.front() - v.back() <= 1);
    }
}

TEST_CASE("Kmax") {
  std::vector<BigRat> row{4, 3, 2};
  CHECK(Kmax(row, 2) == 12);
  CHECK(Kmax(row, 0) == 1);
  CHECK(Kmax(std::vector<BigRat>(4, BigRat(7)), 3) == 343);
  CHECK_THROWS(Kmax(row, 4));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto r = randomRow(rng, 5);
    for (int v = 0; v <= 5; ++v) {
      CHECK(Kmax(r, v) == windowMaxOracle(r, v));
      if (v > 0) CHECK(Kmax(r, v - 1) <= Kmax(r, v));
    }
  }
}

TEST_CASE("line formula") {
  CHECK(muLineFormula({3, 4}, 1) == ExponentValue(4));
  CHECK(muLineFormula({3, 4}, 2) == ExponentValue(12));
  CHECK(muLineFormula({5}, 3) == ExponentValue(125));
  CHECK(muLineFormula({3}, 2) == ExponentValue(9));
}

TEST_CASE("block formula") {
  std::vector<std::vector<BigRat>> beta{{5, 4}, {26, 25}};
  CHECK(muBlockFormula(2, 2, beta, 3, 2) == ExponentValue(BigRat(260, 23)));
  CHECK_THROWS(muBlockFormula(2, 2, beta, 6, 2));

  SUBCASE("d = 1 reduces to the window maximum of the row") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const int m = 2 + trial % 3;
      auto row = randomRow(rng, m);
      for (int e = 1; e <= m; ++e)
        CHECK(muBlockFormula(1, m, {row}, e, 1) == ExponentValue(windowMaxOracle(row, e)));
    }
  }
  SUBCASE("audit compares both row conventions with the subset maximum") {
    auto audit = auditBlockFormula(2, 2, beta, 3, 2);
    CHECK(audit.primary == ExponentValue(BigRat(260, 23)));
    CHECK(audit.subsetMax == audit.primary);
    CHECK(audit.primaryMatches);
    CHECK_FALSE(audit.shifted.has_value());
  }
}

TEST_CASE("Roy constraints") {
  CHECK(royCheck(3, {BigRat(2), BigRat(4)}).ok);
  auto bad = royCheck(3, {BigRat(3), BigRat(4)});
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.violated.empty());
  CHECK(royCheck(3, {ExponentValue::infinity(), ExponentValue::infinity()}).ok);
  CHECK_FALSE(royCheck(3, {BigRat(1), BigRat(2)}).ok);
  CHECK_THROWS(royCheck(4, {BigRat(2)}));
}

TEST_CASE("direct-sum combiner") {
  SubsetTable t{{{1}, BigRat(5)}, {{2}, BigRat(3)}};
  auto r = directSumCombine(t, 2, 1, 0);
  CHECK(r.direct == ExponentValue(5));
  CHECK(r.agree);

  SubsetTable whole{{{1, 2}, BigRat(7)}};
  CHECK(directSumCombine(whole, 2, 1, 1).direct == ExponentValue(7));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 5;
    const int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
    SubsetTable table;
    ExponentValue best;
    bool first = true;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      std::vector<int> J;
      for (int i = 0; i < d; ++i)
        if (mask & (1u << i)) J.push_back(i + 1);
      ExponentValue v = rng() % 10 == 0 ? ExponentValue::infinity() : ExponentValue(BigRat(rng() % 97 + 1, 7));
      if (first || best < v) best = v;
      first = false;
      table[J] = v;
    }
    auto res = directSumCombine(table, d, size, 0);
    CHECK(res.agree);
    CHECK(res.direct == best);
  }
}

TEST_CASE("C1 and Cd") {
  CHECK(atLeastC1(BigRat(2619, 1000)));
  CHECK_FALSE(atLeastC1(BigRat(2618, 1000)));
  CHECK(exceedsCd(BigRat(3), 1, 3));
  CHECK_FALSE(exceedsCd(BigRat(2), 1, 3));
  auto c1 = cdInterval(1, 3, 256);
  CHECK(certainlyLess(Interval::fromRational(BigRat(2618, 1000), 256), c1));
  CHECK(certainlyLess(c1, Interval::fromRational(BigRat(2619, 1000), 256)));
  CHECK(cdUpperBound(1, 3) == BigRat(2619, 1000));
  CHECK(cdUpperBound(2, 4) == 5 * 16 * rpow(BigRat(2619, 1000), 8));
}

TEST_CASE("gamma from beta") {
  auto g = gammaFromBeta({4, 12}, 1, 3);
  CHECK(g.gamma == std::vector<BigRat>{4, 3});
  CHECK(g.inO);
  CHECK(muLineFormula(g.gamma, 1) == ExponentValue(4));
  CHECK(Kmax(g.gamma, 2) == 12);

  auto geo = gammaFromBeta({5, 25, 125}, 1, 4);
  CHECK(geo.gamma == std::vector<BigRat>{5, 5, 5});

  auto off = gammaFromBeta({4, 20}, 1, 3, BigRat(4));
  CHECK_FALSE(off.inO);
  CHECK_FALSE(off.failures.empty());
}

TEST_CASE("beta hypotheses") {
  auto weak = validateBetaHypotheses(1, 2, {{100, 90}}, BigRat(11, 10));
  CHECK_FALSE(weak.hypothesesPass);

  // Constant rows with a large gap between blocks.
  BigRat a = BigRat(1000000), b = BigRat(100000000);
  auto gap = validateBetaHypotheses(2, 1, {{a}, {b}}, BigRat(13, 10));
  CHECK(gap.hypothesesPass);
  CHECK(gap.minKKi.passed);
  CHECK(gap.extendedBeta[0].size() == 2);
  CHECK(gap.extendedBeta[1][1] == b);

  CHECK(extendBetaRows(2, {{9, 7}})[0] == std::vector<BigRat>{9, 7, 7});
  CHECK(blockEnergy({2, 3, 5}, 2) == 2 * 3 * 25);
}

TEST_CASE("witness indices") {
  CHECK(witnessNs({{2, 2}, {3, 3}}, 1, {1, 2}, 2, 2, 2) == std::vector<long>{2, 0});
  CHECK(witnessNs({{2, 2}, {2, 2}}, 1, {1, 2}, 2, 2, 4) == std::vector<long>{4, 4});
  CHECK(witnessNs({{5, 4, 4}}, 2, {1}, 1, 1, 8) == std::vector<long>{8});
  CHECK_THROWS_AS(witnessNs({{2, 2}, {3, 3}}, 1, {1, 2}, 2, 2, 3), ValidationError);
}
