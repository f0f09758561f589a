#include "dioph/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace dioph {

const BigRat& ExponentValue::value() const {
  if (infinite_) throw std::logic_error("ExponentValue: value of an infinite exponent");
  return value_;
}

int gFunc(int d, int e, int n) { return std::max(0, d + e - n); }
int fFunc(int e, int mk) { return std::max(0, e - mk); }

std::vector<int> vQ(int e, int k) {
  if (k < 1) throw std::invalid_argument("vQ: k must be >= 1");
  if (e < k) throw std::invalid_argument("vQ: requires e >= k");
  const int v = e / k, u = e % k;
  std::vector<int> out(static_cast<std::size_t>(k));
  for (int q = 1; q <= k; ++q) out[static_cast<std::size_t>(q - 1)] = q <= u ? v + 1 : v;
  return out;
}

BigRat Kmax(const std::vector<BigRat>& row, int v) {
  if (v < 0 || v > static_cast<int>(row.size())) throw std::invalid_argument("Kmax: window length out of range");
  if (v == 0) return 1;
  BigRat best = 0;
  for (std::size_t l = 0; l + static_cast<std::size_t>(v) <= row.size(); ++l) {
    BigRat p = 1;
    for (int t = 0; t < v; ++t) p *= row[l + static_cast<std::size_t>(t)];
    if (l == 0 || p > best) best = p;
  }
  return best;
}

ExponentValue muLineFormula(const std::vector<BigRat>& gammaPeriod, int e) {
  if (e < 1) throw std::invalid_argument("muLineFormula: e must be >= 1");
  if (gammaPeriod.empty()) throw std::invalid_argument("muLineFormula: empty schedule");
  const std::size_t T = gammaPeriod.size();
  BigRat best = 0;
  for (std::size_t i = 0; i < T; ++i) {
    BigRat p = 1;
    for (int t = 0; t < e; ++t) p *= gammaPeriod[(i + static_cast<std::size_t>(t)) % T];
    if (i == 0 || p > best) best = p;
  }
  return ExponentValue(best);
}

namespace {

void checkBlockIndices(int d, int m, const std::vector<std::vector<BigRat>>& beta, int e, int k) {
  if (d < 1 || m < 1) throw ValidationError("block formula: d and m must be >= 1");
  if (static_cast<int>(beta.size()) != d) throw ValidationError("block formula: beta must have d rows");
  for (const auto& row : beta)
    if (static_cast<int>(row.size()) < m) throw ValidationError("block formula: each beta row needs m entries");
  const int n = (m + 1) * d;
  if (e < 1 || e > n - 1) throw ValidationError("block formula: e must be in [1, n-1]");
  if (k < 1 + gFunc(d, e, n) || k > std::min(d, e))
    throw ValidationError("block formula: k must be in [1+g(d,e,n), min(d,e)]");
  if (e >= k * (m + 1)) throw ValidationError("block formula: requires e < k(m+1)");
}

std::vector<BigRat> firstM(const std::vector<BigRat>& row, int m) {
  return std::vector<BigRat>(row.begin(), row.begin() + m);
}

// 1 / sum_{q=1+f}^{k} 1 / K_{rows[q-1], v_q} on rows of m entries.
BigRat blockValue(int m, const std::vector<std::vector<BigRat>>& beta, const std::vector<int>& rows, int e, int k) {
  const auto v = vQ(e, k);
  const int f = fFunc(e, m * k);
  BigRat sum = 0;
  for (int q = 1 + f; q <= k; ++q) {
    const auto& row = beta[static_cast<std::size_t>(rows[static_cast<std::size_t>(q - 1)] - 1)];
    sum += BigRat(1) / Kmax(firstM(row, m), v[static_cast<std::size_t>(q - 1)]);
  }
  return BigRat(1) / sum;
}

void forEachSubset(int d, int size, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> s(static_cast<std::size_t>(size));
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == size) {
      fn(s);
      return;
    }
    for (int j = start; j <= d - (size - pos) + 1; ++j) {
      s[static_cast<std::size_t>(pos)] = j;
      rec(pos + 1, j + 1);
    }
  };
  rec(0, 1);
}

}  // namespace

ExponentValue muBlockFormula(int d, int m, const std::vector<std::vector<BigRat>>& beta, int e, int k) {
  checkBlockIndices(d, m, beta, e, k);
  std::vector<int> rows;
  for (int q = 1; q <= k; ++q) rows.push_back(q + d - k);
  return ExponentValue(blockValue(m, beta, rows, e, k));
}

BlockFormulaAudit auditBlockFormula(int d, int m, const std::vector<std::vector<BigRat>>& beta, int e, int k) {
  BlockFormulaAudit audit;
  audit.primary = muBlockFormula(d, m, beta, e, k);
  std::vector<int> shiftedRows;
  for (int q = 1; q <= k; ++q) shiftedRows.push_back(q + d - k + 1);
  const int f = fFunc(e, m * k);
  bool inRange = true;
  for (int q = 1 + f; q <= k; ++q) inRange = inRange && shiftedRows[static_cast<std::size_t>(q - 1)] <= d;
  if (inRange) audit.shifted = ExponentValue(blockValue(m, beta, shiftedRows, e, k));
  BigRat best = 0;
  forEachSubset(d, k, [&](const std::vector<int>& J) { best = std::max(best, blockValue(m, beta, J, e, k)); });
  audit.subsetMax = ExponentValue(best);
  audit.primaryMatches = audit.primary == audit.subsetMax;
  audit.shiftedMatches = audit.shifted && *audit.shifted == audit.subsetMax;
  return audit;
}

RoyResult royCheck(int n, const std::vector<ExponentValue>& mu) {
  if (static_cast<int>(mu.size()) != n - 1) throw std::invalid_argument("royCheck: expects n-1 exponents");
  RoyResult r;
  auto fail = [&](std::string what) {
    r.ok = false;
    r.violated = std::move(what);
    return r;
  };
  if (!mu[0].isInfinite() && mu[0].value() < BigRat(n, n - 1)) return fail("mu_1 >= n/(n-1)");
  for (int e = 2; e <= n - 1; ++e) {
    const auto& cur = mu[static_cast<std::size_t>(e - 1)];
    const auto& prev = mu[static_cast<std::size_t>(e - 2)];
    const std::string tag = " (e=" + std::to_string(e) + ")";
    // e mu_e / (mu_e + e - 1) <= mu_{e-1}; the left side tends to e as mu_e -> inf.
    if (!prev.isInfinite()) {
      BigRat left = cur.isInfinite() ? BigRat(e) : BigRat(e) * cur.value() / (cur.value() + BigRat(e - 1));
      if (left > prev.value()) return fail("e mu_e/(mu_e+e-1) <= mu_{e-1}" + tag);
    }
    // mu_{e-1} <= (n-e) mu_e / (n-e+1).
    if (!cur.isInfinite()) {
      if (prev.isInfinite()) return fail("mu_{e-1} <= (n-e) mu_e/(n-e+1)" + tag);
      if (prev.value() > BigRat(n - e) * cur.value() / BigRat(n - e + 1))
        return fail("mu_{e-1} <= (n-e) mu_e/(n-e+1)" + tag);
    }
  }
  return r;
}

CombineResult directSumCombine(const SubsetTable& table, int d, int k, int g) {
  const int size = k + g;
  if (size < 1 || size > d) throw std::invalid_argument("directSumCombine: k + g must be in [1, d]");
  auto lookup = [&](const std::vector<int>& J) -> const ExponentValue& {
    auto it = table.find(J);
    if (it == table.end()) {
      std::string key;
      for (int j : J) key += (key.empty() ? "" : ",") + std::to_string(j);
      throw std::invalid_argument("directSumCombine: missing table entry for J={" + key + "}");
    }
    return it->second;
  };
  CombineResult out;
  bool first = true;
  forEachSubset(d, size, [&](const std::vector<int>& J) {
    const auto& v = lookup(J);
    if (first || out.direct < v) out.direct = v;
    first = false;
  });
  // Remove one index at a time until the subsets reach size k + g.
  std::map<std::vector<int>, ExponentValue> memo;
  std::function<ExponentValue(const std::vector<int>&)> rec = [&](const std::vector<int>& S) -> ExponentValue {
    if (static_cast<int>(S.size()) == size) return lookup(S);
    if (auto it = memo.find(S); it != memo.end()) return it->second;
    ExponentValue best;
    for (std::size_t i = 0; i < S.size(); ++i) {
      std::vector<int> smaller = S;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      ExponentValue v = rec(smaller);
      if (i == 0 || best < v) best = v;
    }
    memo.emplace(S, best);
    return best;
  };
  std::vector<int> all(static_cast<std::size_t>(d));
  std::iota(all.begin(), all.end(), 1);
  out.recursive = rec(all);
  out.agree = out.direct == out.recursive;
  return out;
}

Interval cdInterval(int d, int n, mpfr_prec_t bits) {
  if (d < 1) throw std::invalid_argument("cdInterval: d must be >= 1");
  Interval c = (Interval::fromInteger(3, bits) + sqrt(Interval::fromInteger(5, bits))) / Interval::fromInteger(2, bits);
  const Interval factor = Interval::fromInteger(BigInt(5 * n * n), bits);
  for (int level = 2; level <= d; ++level) {
    Interval p = Interval::fromInteger(1, bits);
    for (int t = 0; t < 2 * n; ++t) p = p * c;
    c = factor * p;
  }
  return c;
}

BigRat cdUpperBound(int d, int n) {
  if (d < 1) throw std::invalid_argument("cdUpperBound: d must be >= 1");
  BigRat c(2619, 1000);
  for (int level = 2; level <= d; ++level) c = BigRat(5 * n * n) * rpow(c, 2 * n);
  return c;
}

bool atLeastC1(const BigRat& x) {
  BigRat t = BigRat(2) * x - BigRat(3);
  return t >= 0 && t * t >= 5;
}

bool exceedsCd(const BigRat& x, int d, int n) {
  if (d == 1) return atLeastC1(x);
  for (mpfr_prec_t bits = 128; bits <= 8192; bits *= 2) {
    Interval c = cdInterval(d, n, bits);
    Interval xi = Interval::fromRational(x, bits);
    if (certainlyLess(c, xi)) return true;
    if (certainlyLess(xi, c)) return false;
  }
  throw PrecisionExhausted("comparison with C_d stayed ambiguous");
}

GammaFromBeta gammaFromBeta(const std::vector<BigRat>& beta, int d, int n, const std::optional<BigRat>& threshold) {
  if (beta.empty()) throw std::invalid_argument("gammaFromBeta: empty beta");
  GammaFromBeta out;
  BigRat prev = 1;
  for (const auto& b : beta) {
    if (b <= 0) throw std::invalid_argument("gammaFromBeta: beta must be positive");
    out.gamma.push_back(b / prev);
    prev = b;
  }
  auto above = [&](const BigRat& x) { return threshold ? x > *threshold : exceedsCd(x, d, n); };
  const std::string cname = threshold ? toString(*threshold) : "C_" + std::to_string(d);
  if (!above(beta[0])) out.failures.push_back("beta_1 > " + cname);
  for (std::size_t i = 0; i + 1 < beta.size(); ++i) {
    const std::string tag = " (i=" + std::to_string(i + 1) + ")";
    if (!above(beta[i + 1] / beta[i])) out.failures.push_back(cname + " beta_i < beta_{i+1}" + tag);
    for (std::size_t j = 1; j <= i + 1; ++j) {
      if (!(beta[i + 1] < beta[i + 1 - j] * beta[j - 1])) {
        out.failures.push_back("beta_{i+1} < beta_{i+1-j} beta_j" + tag + " j=" + std::to_string(j));
        break;
      }
    }
  }
  out.inO = out.failures.empty();
  return out;
}

std::vector<std::vector<BigRat>> extendBetaRows(int m, const std::vector<std::vector<BigRat>>& beta) {
  std::vector<std::vector<BigRat>> out;
  for (const auto& row : beta) {
    if (static_cast<int>(row.size()) != m && static_cast<int>(row.size()) != m + 1)
      throw ValidationError("beta rows must have m or m+1 entries");
    for (const auto& b : row)
      if (b <= 1) throw ValidationError("beta entries must exceed 1");
    std::vector<BigRat> r = row;
    if (static_cast<int>(r.size()) == m) r.push_back(*std::min_element(row.begin(), row.end()));
    out.push_back(std::move(r));
  }
  return out;
}

BigRat blockEnergy(const std::vector<BigRat>& extendedRow, int m) {
  BigRat e = 1;
  for (int l = 0; l < m; ++l) e *= extendedRow[static_cast<std::size_t>(l)];
  return e * rpow(extendedRow[static_cast<std::size_t>(m)], m);
}

namespace {

// Exponent of a power: either an exact rational or an interval-valued function
// of the working precision.
struct PowerExponent {
  std::optional<BigRat> exact;
  std::function<Interval(mpfr_prec_t)> approx;

  static PowerExponent of(const BigRat& q) {
    return {q, [q](mpfr_prec_t bits) { return Interval::fromRational(q, bits); }};
  }
};

// sign(a^x - b^y) for a, b > 0.
int comparePowers(const BigRat& a, const PowerExponent& x, const BigRat& b, const PowerExponent& y) {
  if (x.exact && y.exact) {
    BigInt l = lcm(denom(*x.exact), denom(*y.exact));
    BigRat ex = *x.exact * BigRat(l), ey = *y.exact * BigRat(l);
    if (abs(numer(ex)) <= 4096 && abs(numer(ey)) <= 4096) {
      BigRat lhs = rpow(a, numer(ex).convert_to<long>());
      BigRat rhs = rpow(b, numer(ey).convert_to<long>());
      return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
  }
  for (mpfr_prec_t bits = 128; bits <= 8192; bits *= 2) {
    Interval lhs = x.approx(bits) * log(Interval::fromRational(a, bits));
    Interval rhs = y.approx(bits) * log(Interval::fromRational(b, bits));
    if (certainlyLess(lhs, rhs)) return -1;
    if (certainlyLess(rhs, lhs)) return 1;
  }
  throw PrecisionExhausted("power comparison stayed ambiguous at 8192 bits");
}

std::string powerString(const BigRat& a, const PowerExponent& x) {
  const mpfr_prec_t bits = 128;
  Interval v = exp(x.approx(bits) * log(Interval::fromRational(a, bits)));
  std::string base = toString(a);
  std::string exponent = x.exact ? toString(*x.exact) : "[" + x.approx(bits).loString(8) + "," + x.approx(bits).hiString(8) + "]";
  if (x.exact && *x.exact == 1) return base;
  return base + "^(" + exponent + ") in [" + v.loString(12) + ", " + v.hiString(12) + "]";
}

BigRat rowMin(const std::vector<BigRat>& row, int len) {
  return *std::min_element(row.begin(), row.begin() + len);
}
BigRat rowMax(const std::vector<BigRat>& row, int len) {
  return *std::max_element(row.begin(), row.begin() + len);
}

}  // namespace

BetaReport validateBetaHypotheses(int d, int m, const std::vector<std::vector<BigRat>>& beta, const BigRat& c2) {
  if (d < 1 || m < 1) throw ValidationError("validateBetaHypotheses: d and m must be >= 1");
  if (static_cast<int>(beta.size()) != d) throw ValidationError("validateBetaHypotheses: beta must have d rows");
  const BigRat c1pow = BigRat(m + 1, m);  // c1^d
  if (c2 <= 1 || rpow(c2, d) >= c1pow)
    throw ValidationError("c2 must satisfy 1 < c2 < (1+1/m)^(1/d)");

  BetaReport report;
  report.extendedBeta = extendBetaRows(m, beta);
  const auto& ext = report.extendedBeta;

  PowerExponent c1;
  if (d == 1) {
    c1 = PowerExponent::of(c1pow);
  } else {
    c1.approx = [c1pow, d](mpfr_prec_t bits) {
      Interval l = log(Interval::fromRational(c1pow, bits)) / Interval::fromInteger(d, bits);
      return exp(l);
    };
  }
  const PowerExponent one = PowerExponent::of(1);
  const PowerExponent pc2 = PowerExponent::of(c2);
  const PowerExponent pc2ratio = PowerExponent::of(c2 / (c2 - 1));
  const BigRat threeD(3 * d);

  auto add = [&](std::string name, const BigRat& a, const PowerExponent& x, const BigRat& b, const PowerExponent& y,
                 bool strict) {
    int s = comparePowers(a, x, b, y);
    report.checks.push_back({std::move(name), strict ? s > 0 : s >= 0, powerString(a, x), powerString(b, y)});
  };

  for (int len : {m, m + 1}) {
    const bool baseRows = len == m;
    const std::string suffix = baseRows ? "" : " [with beta_{i,m+1}]";
    const BigRat mn1 = rowMin(ext[0], len), mx1 = rowMax(ext[0], len);
    add("min beta_1 > (3d)^(c2/(c2-1))" + suffix, mn1, one, threeD, pc2ratio, baseRows);
    add("min beta_1^c1 > max beta_1^c2" + suffix, mn1, c1, mx1, pc2, baseRows);
    for (int i = 0; i + 1 < d; ++i) {
      const std::string tag = " (i=" + std::to_string(i + 1) + ")" + suffix;
      const BigRat mni = rowMin(ext[static_cast<std::size_t>(i)], len);
      const BigRat mxi = rowMax(ext[static_cast<std::size_t>(i)], len);
      const BigRat mnn = rowMin(ext[static_cast<std::size_t>(i + 1)], len);
      const BigRat mxn = rowMax(ext[static_cast<std::size_t>(i + 1)], len);
      add("min beta_i^c1 > max beta_{i+1}" + tag, mni, c1, mxn, one, baseRows);
      add("min beta_{i+1} > max beta_i^c2" + tag, mnn, one, mxi, pc2, baseRows);
    }
  }
  report.hypothesesPass =
      std::all_of(report.checks.begin(), report.checks.end(), [](const HypothesisCheck& c) { return c.passed; });

  // The sufficient inequality, over every k, e and block set j_1 < ... < j_k.
  // Repeated rows are skipped: with j_q = j_{u+1} and v_q - 1 = v_{u+1} it
  // would need K >= K^c2, and the construction only uses sets of blocks.
  report.minKKi = {"min-KKi inequality", true, "all cases >= 0", "0"};
  for (int k = 1; k <= d && report.minKKi.passed; ++k) {
    std::vector<int> js(static_cast<std::size_t>(k));
    std::iota(js.begin(), js.end(), 1);
    for (;;) {
      for (int e = k; e <= k * (m + 1) - 1 && report.minKKi.passed; ++e) {
        const auto v = vQ(e, k);
        const int f = fFunc(e, m * k);
        BigRat sum = 0;
        for (int l = 1 + f; l <= k; ++l)
          sum += BigRat(1) / Kmax(ext[static_cast<std::size_t>(js[static_cast<std::size_t>(l - 1)] - 1)],
                                  v[static_cast<std::size_t>(l - 1)]);
        const BigRat harmonic = BigRat(1) / sum - BigRat(1);
        for (int q = 1; q <= k; ++q) {
          const auto& row = ext[static_cast<std::size_t>(js[static_cast<std::size_t>(q - 1)] - 1)];
          BigRat value = (BigRat(1) - BigRat(1) / rowMin(row, m + 1)) * harmonic -
                         Kmax(row, v[static_cast<std::size_t>(q - 1)] - 1);
          if (value < 0) {
            std::ostringstream where;
            where << "k=" << k << " e=" << e << " q=" << q << " J=(";
            for (std::size_t t = 0; t < js.size(); ++t) where << (t ? "," : "") << js[t];
            where << ") value=" << toString(value);
            report.minKKi = {"min-KKi inequality", false, where.str(), "0"};
            break;
          }
        }
      }
      // Next increasing tuple.
      int p = k - 1;
      while (p >= 0 && js[static_cast<std::size_t>(p)] == d - k + 1 + p) --p;
      if (p < 0 || !report.minKKi.passed) break;
      ++js[static_cast<std::size_t>(p)];
      for (int t = p + 1; t < k; ++t) js[static_cast<std::size_t>(t)] = js[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
  return report;
}

namespace {
// alpha_{t} for the 2m-periodic extension of one block row (alpha_0 = 1).
BigRat blockAlpha(const std::vector<BigRat>& ext, int m, int t) {
  BigRat a = 1;
  for (int s = 1; s <= t; ++s) {
    int l = (s - 1) % (2 * m) + 1;
    a *= l <= m ? ext[static_cast<std::size_t>(l - 1)] : ext[static_cast<std::size_t>(m)];
  }
  return a;
}
}  // namespace

std::vector<long> witnessNs(const std::vector<std::vector<BigRat>>& extendedBeta, int m, const std::vector<int>& J,
                            int e, int k, long nf1) {
  const int d = static_cast<int>(extendedBeta.size());
  if (static_cast<int>(J.size()) != k) throw ValidationError("witnessNs: #J must equal k");
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (J[i] < 1 || J[i] > d) throw ValidationError("witnessNs: block index out of range");
    if (i > 0 && J[i] <= J[i - 1]) throw ValidationError("witnessNs: J must be strictly increasing");
  }
  if (nf1 <= 0 || nf1 % (2 * m) != 0) throw ValidationError("witnessNs: N_{f+1} must be a positive multiple of 2m");
  if (e < k || e >= k * (m + 1)) throw ValidationError("witnessNs: requires k <= e < k(m+1)");
  const auto v = vQ(e, k);
  const int f = fFunc(e, m * k);
  std::vector<long> out(static_cast<std::size_t>(k), 0);
  out[static_cast<std::size_t>(f)] = nf1;
  const auto& lead = extendedBeta[static_cast<std::size_t>(J[static_cast<std::size_t>(f)] - 1)];
  const BigRat leadEnergy = blockEnergy(lead, m);
  // E_{f+1}^{N/(2m)} * alpha_{f+1, v_{f+1}-1}
  const BigRat target = rpow(leadEnergy, nf1 / (2 * m)) * blockAlpha(lead, m, v[static_cast<std::size_t>(f)] - 1);
  for (int q = f + 2; q <= k; ++q) {
    const auto& row = extendedBeta[static_cast<std::size_t>(J[static_cast<std::size_t>(q - 1)] - 1)];
    const int vq = v[static_cast<std::size_t>(q - 1)];
    int L = 0;
    BigRat best = -1;
    for (int l = 0; l <= m - 1; ++l) {
      BigRat w = blockAlpha(row, m, l + vq) / blockAlpha(row, m, l);
      if (w > best) {
        best = w;
        L = l;
      }
    }
    const BigRat energy = blockEnergy(row, m);
    if (energy <= 1) throw ValidationError("witnessNs: E_i must exceed 1");
    // Largest t with energy^t <= target, from a floating start.
    double guess = std::floor(approxLog(target) / approxLog(energy));
    long t = std::isfinite(guess) ? std::max(0L, static_cast<long>(guess)) : 0L;
    while (t > 0 && rpow(energy, t) > target) --t;
    while (rpow(energy, t + 1) <= target) ++t;
    out[static_cast<std::size_t>(q - 1)] = 2L * m * t + L;
  }
  return out;
}

}  // namespace dioph
