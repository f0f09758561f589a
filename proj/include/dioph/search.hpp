// Brute-force best-approximation oracle: enumerate rational subspaces of
// bounded height, measure their angle to a target and estimate exponents.
#pragma once

#include "dioph/angles.hpp"
#include "dioph/construct.hpp"
#include "dioph/exactlin.hpp"
#include "dioph/interval.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dioph {

// Every rational line of R^n with H^2 <= heightSqMax, once each, spanned by a
// primitive vector whose first nonzero entry is positive. Lexicographic order.
std::vector<RationalSubspace> enumerateLines(int n, const BigInt& heightSqMax);

enum class Strategy { Auto, Dual, PrimitiveVectors, BoundedEntries, ConstructedFamily };

Strategy parseStrategy(const std::string& text);
std::string toString(Strategy s);
// The strategy table: e = 1 primitive vectors, e = n-1 dual, bounded entries otherwise.
Strategy defaultStrategy(int n, int e);

// Squared-norm limits for a reduced Z-basis of any e-dimensional B with
// H(B)^2 <= heightSqMax: first vector, every later one, and their product.
struct EntryBounds {
  BigInt firstSq;
  BigInt laterSq;
  BigInt productSq;
};
EntryBounds boundedEntryLimits(int e, const BigInt& heightSqMax);

struct SubspaceEnumeration {
  std::vector<RationalSubspace> subspaces;  // sorted by pluckerLess
  Strategy strategy = Strategy::Auto;
  bool complete = true;  // false when the candidate cap forced sampling
};

// Duplicate-free enumeration of e-dimensional rational subspaces with
// H^2 <= heightSqMax. Above maxCandidates the bounded-entry search samples
// seeded random tuples instead and reports complete = false.
SubspaceEnumeration enumerateSubspaces(int n, int e, const BigInt& heightSqMax, Strategy strategy = Strategy::Auto,
                                       long maxCandidates = 20000000, std::uint64_t seed = 0);

struct ApproximationRecord {
  RationalSubspace subspace;
  BigInt heightSq;
  std::optional<long> label;  // N when the record comes from a constructed family
  Interval psi;               // psi_j(A, B)
  Interval score;             // -log psi / log H
  bool rigorous = true;
};

using ScanTarget = std::variant<TruncatedTarget, RationalSubspace>;

struct LabeledSubspace {
  long label;
  RationalSubspace subspace;
};

struct ScanConfig {
  int n = 0;
  int e = 1;
  int j = 1;
  BigInt heightSqMax = 1;
  ScanTarget target;
  Strategy strategy = Strategy::Auto;
  int workers = 1;
  std::uint64_t seed = 0;
  // Keep every record whose score may reach this floor. For a line target and
  // e = 1 the scan then only visits the thin cone that can meet it.
  std::optional<BigRat> scoreFloor;
  std::vector<LabeledSubspace> family;  // ConstructedFamily candidates
  PrecisionConfig precision;
  long maxCandidates = 20000000;
};

struct ScanResult {
  std::vector<ApproximationRecord> records;  // score desc, heightSq asc, Plücker lex
  Strategy strategy = Strategy::Auto;
  bool complete = true;
  bool conePrefilter = false;  // candidates restricted to those that can meet scoreFloor
  long candidates = 0;
  long exactContacts = 0;      // psi = 0 detected exactly and excluded
  std::vector<std::string> flagged;  // candidates whose angle could not be resolved
};

ScanResult bestApproxScan(const ScanConfig& cfg);

// B_{N,e} for N in [nLo, nHi], labeled by N.
std::vector<LabeledSubspace> lineFamily(const LineConstruction& line, int e, long nLo, long nHi);

enum class EstimateMode { FrontierMax, FamilySlope };
EstimateMode parseEstimateMode(const std::string& text);

// FrontierMax: hull of the largest score interval. FamilySlope: least-squares
// slope of (log H, -log psi) over labeled records, fitted separately on each
// residue class of the label modulo `period`, maximum over the classes.
Interval exponentEstimate(const std::vector<ApproximationRecord>& records, EstimateMode mode, int period = 1);

// Largest H^2 among records with score possibly >= floor whose subspace is
// not in `family`; 1 when there is none.
BigInt empiricalHeightSqThreshold(const std::vector<ApproximationRecord>& records,
                                const std::vector<LabeledSubspace>& family, const BigRat& floor);

// Builds a record from an exact psi bracket (used by tests and the estimator).
ApproximationRecord makeRecord(const RationalSubspace& b, const Interval& psi, std::optional<long> label = {});

}  // namespace dioph
