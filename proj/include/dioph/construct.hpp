// Prescribed-exponent constructions: growth schedules, digit families, the
// d = 1 line, the recursive d > 1 family and the orthogonal block family.
#pragma once

#include "dioph/angles.hpp"
#include "dioph/exactlin.hpp"
#include "dioph/exponents.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dioph {

enum class Mode { Strict, Relaxed };

Mode parseMode(const std::string& text);
std::string toString(Mode mode);

// Refuse schedules whose floors exceed this many digits of base theta.
inline constexpr long kDefaultFloorCap = 1000000;

// alpha_0 = 1, alpha_{k+1} = gamma_{k+1} alpha_k with gamma periodic.
// Memoized; safe for concurrent readers.
class GrowthSchedule {
 public:
  GrowthSchedule(std::vector<BigRat> gammaPeriod, BigInt theta, long floorCap = kDefaultFloorCap);

  const std::vector<BigRat>& gammaPeriod() const { return gamma_; }
  const BigInt& theta() const { return theta_; }
  long floorCap() const { return cap_; }
  // gamma_k for k >= 1.
  const BigRat& gamma(long k) const;
  BigRat alpha(long k) const;
  long floorAlpha(long k) const;

 private:
  void extendTo(long k) const;

  std::vector<BigRat> gamma_;
  BigInt theta_;
  long cap_;
  mutable std::mutex mutex_;
  mutable std::vector<BigRat> alphas_;
  mutable std::vector<long> floors_;
};

// (alpha_k, floor alpha_k) for k = 0..K.
std::vector<std::pair<BigRat, BigInt>> alphaSequence(const std::vector<BigRat>& gammaPeriod, long K);

// u^j_k in {1, 2} on lane j = k mod laneCount, 0 elsewhere. Digits come from
// a seeded hash unless fixed by an explicit prefix.
class DigitFamily {
 public:
  DigitFamily(int laneCount, std::uint64_t seed, std::vector<int> prefix = {});

  int laneCount() const { return lanes_; }
  std::uint64_t seed() const { return seed_; }
  int lane(long k) const { return static_cast<int>(k % lanes_); }
  // The single nonzero digit at step k.
  int digit(long k) const;
  int value(int j, long k) const { return lane(k) == j ? digit(k) : 0; }
  std::vector<int> transcript(long K) const;

 private:
  int lanes_;
  std::uint64_t seed_;
  std::vector<int> prefix_;
};

DigitFamily digitFamily(int laneCount, std::uint64_t seed);

// Y = (1, 0^zeroGap, sigma_0, ..., sigma_{L-1}) in R^n with n = 1 + zeroGap + L
// and sigma_j = sum_k u^j_k theta^-floor(alpha_k). The d = 1 line has zeroGap 0.
class LineConstruction {
 public:
  LineConstruction(int n, int zeroGap, std::shared_ptr<const GrowthSchedule> schedule, DigitFamily digits);

  int n() const { return n_; }
  int zeroGap() const { return gap_; }
  int lanes() const { return digits_.laneCount(); }
  const GrowthSchedule& schedule() const { return *schedule_; }
  const DigitFamily& digits() const { return digits_; }

  BigRat sigmaTrunc(int j, long N) const;
  // X_N = theta^floor(alpha_N) (1, 0^gap, sigma_{0,N}, ...).
  IntVector xVector(long N) const;
  // w_N = X_N - theta^(floor alpha_N - floor alpha_{N-1}) X_{N-1}, N >= 1.
  IntVector wVector(long N) const;
  // w_N divided by its only nonzero entry.
  IntVector vVector(long N) const;
  // Span(X_N, ..., X_{N+e-1}) through the basis X_N, v_{N+1}, ..., v_{N+e-1}.
  RationalSubspace bApprox(long N, int e) const;
  // The same subspace through generic saturation of X_N, ..., X_{N+e-1}.
  RationalSubspace bApproxBySaturation(long N, int e) const;
  // Y_M = X_M / theta^floor(alpha_M).
  RatVector yTruncation(long M) const;
  // 2 theta^2 / (theta - 1) * theta^-floor(alpha_{M+1}).
  BigRat tailBound(long M) const;
  TruncatedTarget truncatedTarget(long M) const;
  ExponentValue predictedExponent(int e) const;

 private:
  int n_;
  int gap_;
  std::shared_ptr<const GrowthSchedule> schedule_;
  DigitFamily digits_;
};

struct LineBuild {
  LineConstruction line;
  Mode mode;
  std::vector<std::string> flags;  // relaxed-mode notes
};

// Strict: every gamma >= C_1. Relaxed: every gamma > 2, flagged.
LineBuild buildLine(int n, const std::vector<BigRat>& gamma, const BigInt& theta, std::uint64_t seed,
                    Mode mode = Mode::Strict, long floorCap = kDefaultFloorCap);

struct BlockParams {
  int d = 1;
  int m = 1;
  std::vector<std::vector<BigRat>> beta;  // d rows of m or m+1 entries
  BigInt theta = 5;
  std::uint64_t seed = 0;
  Mode mode = Mode::Strict;
  std::optional<BigRat> c2;  // defaults to 1 + 1/(2dm)
  long floorCap = kDefaultFloorCap;
};

class BlockConstruction {
 public:
  int d() const { return d_; }
  int m() const { return m_; }
  int n() const { return (m_ + 1) * d_; }
  Mode mode() const { return mode_; }
  const BigRat& c2() const { return c2_; }
  const std::vector<std::vector<BigRat>>& extendedBeta() const { return beta_; }
  const std::vector<LineConstruction>& blocks() const { return blocks_; }
  const BetaReport& hypotheses() const { return report_; }

  // X_{N,i} embedded in R^n; i is 1-based.
  IntVector xVector(int i, long N) const;
  // Direct sum over q of B^{J_q}_{N_q, v_q}; full coordinate blocks when v_q = m + 1.
  RationalSubspace cApprox(const std::vector<int>& J, const std::vector<long>& Nvec, int e) const;
  TruncatedTarget truncatedTarget(long M) const;
  ExponentValue predictedExponent(int e, int k) const;

  friend BlockConstruction buildBlocks(const BlockParams& params);

 private:
  int d_ = 0;
  int m_ = 0;
  Mode mode_ = Mode::Strict;
  BigRat c2_;
  std::vector<std::vector<BigRat>> beta_;
  std::vector<LineConstruction> blocks_;
  BetaReport report_;
};

// Strict mode throws ValidationError when a hypothesis fails.
BlockConstruction buildBlocks(const BlockParams& params);

struct RecursiveParams {
  int n = 3;
  int d = 1;
  std::vector<BigRat> gamma;  // n - d entries
  BigInt theta = 5;
  std::uint64_t seed = 0;
  Mode mode = Mode::Strict;
  std::optional<BigRat> proxy;  // relaxed mode: stands in for every C_j
  long truncation = 4;          // level M
  long floorCap = kDefaultFloorCap;
};

class RecursiveConstruction {
 public:
  int n() const { return n_; }
  int d() const { return d_; }
  Mode mode() const { return mode_; }
  long level() const { return level_; }
  // levels()[i] builds Y_{i+1}: zero gap d - i - 1, n - d + i lanes.
  const std::vector<LineConstruction>& levels() const { return levels_; }
  // Constant used in place of C_{d-i} for Y_{i+1}, i >= 1, and for padding.
  const std::vector<BigRat>& constants() const { return constants_; }
  const std::vector<BigRat>& gamma() const { return gamma_; }

  TruncatedTarget truncatedTarget() const { return truncatedTarget(level_); }
  TruncatedTarget truncatedTarget(long M) const;
  // max over i in [0, n-d-e] of gamma_{i+1} ... gamma_{i+e}, e in [1, n-d].
  ExponentValue predictedExponent(int e) const;

  friend RecursiveConstruction buildRecursive(const RecursiveParams& params);

 private:
  int n_ = 0;
  int d_ = 0;
  Mode mode_ = Mode::Strict;
  long level_ = 0;
  std::vector<BigRat> gamma_;
  std::vector<BigRat> constants_;
  std::vector<LineConstruction> levels_;
};

RecursiveConstruction buildRecursive(const RecursiveParams& params);

// gamma_1..gamma_{n-d} followed by `pad` up to period 2(n - d).
std::vector<BigRat> paddedSchedule(const std::vector<BigRat>& gamma, const BigRat& pad);

}  // namespace dioph
