// Closed-form exponent formulas, Roy's constraints and hypothesis checks.
#pragma once

#include "dioph/interval.hpp"
#include "dioph/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dioph {

class ExponentValue {
 public:
  ExponentValue() = default;
  ExponentValue(BigRat v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static ExponentValue infinity() {
    ExponentValue x;
    x.infinite_ = true;
    return x;
  }

  bool isInfinite() const { return infinite_; }
  const BigRat& value() const;
  std::string toString() const { return infinite_ ? "inf" : dioph::toString(value_); }

  friend bool operator==(const ExponentValue& a, const ExponentValue& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const ExponentValue& a, const ExponentValue& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExponentValue& a, const ExponentValue& b) { return !(b < a); }

 private:
  BigRat value_ = 1;
  bool infinite_ = false;
};

// (e, j) -> mu_n(A|e)_j.
struct ExponentTable {
  int n = 0;
  int d = 0;
  std::map<std::pair<int, int>, ExponentValue> entries;
};

int gFunc(int d, int e, int n);
int fFunc(int e, int mk);

// v_q for q = 1..k from e = k v + u: v + 1 when q <= u, else v.
std::vector<int> vQ(int e, int k);

// Largest product of v consecutive entries lying inside `row` (1 when v = 0).
BigRat Kmax(const std::vector<BigRat>& row, int v);

// max over i in [0, T-1] of gamma_{i+1} ... gamma_{i+e}, gamma T-periodic.
ExponentValue muLineFormula(const std::vector<BigRat>& gammaPeriod, int e);

// beta: d rows with at least m entries (only the first m are used).
// Value of 1 / sum_{q = 1+f}^{k} 1 / K_{q+d-k, v_q}.
ExponentValue muBlockFormula(int d, int m, const std::vector<std::vector<BigRat>>& beta, int e, int k);

struct BlockFormulaAudit {
  ExponentValue primary;                // rows q + d - k
  std::optional<ExponentValue> shifted; // rows q + d - k + 1, when all rows exist
  ExponentValue subsetMax;              // max over all k-subsets J of the per-subset value
  bool primaryMatches = false;
  bool shiftedMatches = false;
};
// Evaluates both row conventions against the brute-force maximum over J.
BlockFormulaAudit auditBlockFormula(int d, int m, const std::vector<std::vector<BigRat>>& beta, int e, int k);

struct RoyResult {
  bool ok = true;
  std::string violated;  // empty when ok
};
// mu holds mu_1 .. mu_{n-1}.
RoyResult royCheck(int n, const std::vector<ExponentValue>& mu);

// Keys are sorted 1-based subsets J of {1..d}; values are the exponent of A_J
// at the index matching size k + g.
using SubsetTable = std::map<std::vector<int>, ExponentValue>;

struct CombineResult {
  ExponentValue direct;
  ExponentValue recursive;
  bool agree = false;
};
CombineResult directSumCombine(const SubsetTable& table, int d, int k, int g);

// C_1 = (3 + sqrt 5)/2 and C_d = 5 n^2 C_{d-1}^{2n}.
Interval cdInterval(int d, int n, mpfr_prec_t bits);
// Exact rational upper bound: 2619/1000 for C_1, then the same recursion.
BigRat cdUpperBound(int d, int n);
// x >= C_1, decided exactly: 2x - 3 >= 0 and (2x - 3)^2 >= 5.
bool atLeastC1(const BigRat& x);
// x > C_d (strict; C_d is irrational so this equals x >= C_d). Exact for d = 1,
// interval refinement otherwise.
bool exceedsCd(const BigRat& x, int d, int n);

struct GammaFromBeta {
  std::vector<BigRat> gamma;
  bool inO = false;
  std::vector<std::string> failures;
};
// threshold: nullopt uses C_d; a value replaces C_d (relaxed variant).
GammaFromBeta gammaFromBeta(const std::vector<BigRat>& beta, int d, int n,
                            const std::optional<BigRat>& threshold = std::nullopt);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string lhs;
  std::string rhs;
};

struct BetaReport {
  std::vector<HypothesisCheck> checks;  // block hypotheses and the beta_{i,m+1} extension
  bool hypothesesPass = false;
  HypothesisCheck minKKi;               // the sufficient inequality, checked directly
  std::vector<std::vector<BigRat>> extendedBeta;  // d rows of m+1 entries
};

// Rows may carry m or m+1 entries; a missing beta_{i,m+1} defaults to the row minimum.
std::vector<std::vector<BigRat>> extendBetaRows(int m, const std::vector<std::vector<BigRat>>& beta);

BetaReport validateBetaHypotheses(int d, int m, const std::vector<std::vector<BigRat>>& beta, const BigRat& c2);

// E_i = beta_{i,1} ... beta_{i,m} beta_{i,m+1}^m.
BigRat blockEnergy(const std::vector<BigRat>& extendedRow, int m);

// Synchronized indices N_1..N_k for C^J_N. extendedBeta has m+1 entries per
// row, J is 1-based and sorted, nf1 = N_{f+1} is a positive multiple of 2m.
std::vector<long> witnessNs(const std::vector<std::vector<BigRat>>& extendedBeta, int m,
                            const std::vector<int>& J, int e, int k, long nf1);

}  // namespace dioph
