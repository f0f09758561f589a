// Angles between subspaces: exact squared sines where the algebra allows,
// certified rational brackets otherwise.
#pragma once

#include "dioph/exactlin.hpp"
#include "dioph/interval.hpp"

#include <vector>

namespace dioph {

struct PrecisionConfig {
  int workingBits = 256;
  int maxRefinements = 8;
};

// Bracket [sqLo, sqHi] for a squared sine; exact entries have sqLo == sqHi.
struct AngleEntry {
  BigRat sqLo;
  BigRat sqHi;
  bool exact = false;

  Interval sine(mpfr_prec_t bits = 256) const;
};

struct AngleReport {
  std::vector<AngleEntry> omegas;  // non-decreasing, t = min(d, e) entries
  int d = 0;
  int e = 0;
};

// sin^2 of the angle between two nonzero vectors, exactly.
template <class DA, class DB>
BigRat angleOfVectors(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  RatVector a = x.template cast<BigRat>(), b = y.template cast<BigRat>();
  if (a.size() != b.size()) throw ValidationError("angleOfVectors: dimension mismatch");
  const BigRat na = a.squaredNorm(), nb = b.squaredNorm();
  if (na == 0 || nb == 0) throw ValidationError("angleOfVectors: zero vector");
  const BigRat dot = a.dot(b);
  // Lagrange: |a ^ b|^2 = |a|^2 |b|^2 - (a.b)^2.
  return BigRat(1) - dot * dot / (na * nb);
}

// sin^2 of the first angle between Span(y) and b: |y - proj_b y|^2 / |y|^2.
BigRat firstAngleLineToSubspace(const RatVector& y, const RationalSubspace& b);

// Columns of a and b span the two subspaces; both must have full column rank.
AngleReport principalSines(const RatMatrix& a, const RatMatrix& b, const PrecisionConfig& cfg = {});
AngleReport principalSines(const RationalSubspace& a, const RationalSubspace& b,
                           const PrecisionConfig& cfg = {});

// Drops the g(d, e, n) leading angles, which must be zero.
std::vector<AngleEntry> psiFromOmegas(const AngleReport& report, int d, int e, int n);

// Exact truncation A_M of a target subspace A spanned by Y_1..Y_d. Every
// coordinate of Y_i differs from the stored one by at most
// perCoordinateTailBound, and only tailCoordinates[i] of them differ at all.
struct TruncatedTarget {
  int n = 0;
  int d = 0;
  RatMatrix generators;  // n x d
  int level = 0;
  BigRat perCoordinateTailBound;
  std::vector<int> tailCoordinates;
};

struct TargetAngle {
  Interval psi;           // encloses psi_j(A, B) when rigorous
  AngleEntry truncated;   // psi_j(A_M, B)^2
  Interval delta;         // perturbation radius
  bool rigorous = true;   // false when d > 1 (constant n is not proven)
};

// psi_j(A, B) = psi_j(A_M, B) +- delta. Throws PrecisionExhausted when delta
// exceeds maxRelativeSpread * psi_j(A_M, B) and that value is nonzero.
TargetAngle angleIntervalToTruncatedTarget(const TruncatedTarget& target, const RationalSubspace& b, int j,
                                           const PrecisionConfig& cfg = {},
                                           const BigRat& maxRelativeSpread = BigRat(1, 2));

struct ProjectionWitness {
  int j = 0;  // 1-based block index
  BigRat ratioLo;
  BigRat ratioHi;
  bool exact = false;
};

// Best j in J for min over X in F of |p^_j X|^2 / |X|^2, where p^_j removes
// block j. f holds generators of F as columns; J is 1-based.
ProjectionWitness projectionLowerBoundWitness(const RatMatrix& f, const std::vector<int>& J,
                                              const std::vector<int>& blockSizes,
                                              const PrecisionConfig& cfg = {});

}  // namespace dioph
