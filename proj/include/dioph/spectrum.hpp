// Chi index sets, Omega polynomial maps and Jacobian rank certificates for
// families U of (e, k) pairs.
#pragma once

#include "dioph/scalar.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dioph {

// (q, l): row q in [1, d], position l in [1, m].
using VarIndex = std::pair<int, int>;
// d rows of m positive rationals.
using BetaMatrix = std::vector<std::vector<BigRat>>;

struct Monomial {
  BigRat coefficient = 1;
  std::vector<VarIndex> vars;  // sorted, square-free
};
using OmegaPolynomial = std::vector<Monomial>;

std::set<VarIndex> chi(int e, int k, int d, int m);

// sum_{q = 1+f}^{k} beta_{q+d-k,1} ... beta_{q+d-k,v_q}.
OmegaPolynomial omegaPolynomial(int e, int k, int d, int m);
BigRat evaluate(const OmegaPolynomial& p, const BetaMatrix& beta);
OmegaPolynomial differentiate(const OmegaPolynomial& p, const VarIndex& var);
std::set<VarIndex> support(const OmegaPolynomial& p);

struct SpectrumTarget {
  int n = 0;
  int d = 0;
  int m = 0;
  std::vector<std::pair<int, int>> U;  // (e, k)
};

// Checks d | n, (e, k) in V_{d,n}, e < k(m+1) and #U <= dm. Duplicates pass.
SpectrumTarget makeTarget(int n, int d, std::vector<std::pair<int, int>> U);

enum class FamilyKind { MinAngle, LastAngleD, Custom };
FamilyKind parseFamily(const std::string& text);

// MinAngle: {(e, min(d,e)) : e in [1, n-d]}. LastAngleD: [d, n-1] x {d}.
SpectrumTarget uFamily(FamilyKind kind, int n, int d, std::vector<std::pair<int, int>> custom = {});

RatVector omegaEval(const SpectrumTarget& t, const BetaMatrix& beta);
// Rows follow U, columns (q, l) in lexicographic order.
RatMatrix omegaJacobian(const SpectrumTarget& t, const BetaMatrix& beta);
RatMatrix omegaJacobianSymbolic(const SpectrumTarget& t, const BetaMatrix& beta);

struct TriangularWitness {
  bool found = false;
  std::vector<int> order;          // indices into U, earliest first
  std::vector<VarIndex> fresh;     // fresh[j] lies in chi(U[order[j]]) only among the first j+1
  std::string diagnostic;
};

// An order with a fresh chi index at every step, found by repeatedly moving
// to the back an element owning an index no other remaining element uses.
TriangularWitness triangularOrdering(const SpectrumTarget& t);

enum class CertificateLevel { Triangular, GenericRank, Unknown };
std::string toString(CertificateLevel level);

struct RankCertificate {
  CertificateLevel level = CertificateLevel::Unknown;
  TriangularWitness triangular;
  int trials = 0;
  int fullRankTrials = 0;
  BetaMatrix witnessBeta;  // first beta with full rank, empty if none
  std::string diagnostic;
};

// Beta entries are distinct primes drawn with the seed.
BetaMatrix distinctPrimeBeta(int d, int m, std::uint64_t seed);

RankCertificate rankCertify(const SpectrumTarget& t, int trials, std::uint64_t seed);

}  // namespace dioph
