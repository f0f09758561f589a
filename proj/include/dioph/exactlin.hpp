// Exact exterior algebra, lattice saturation and heights of rational subspaces.
#pragma once

#include "dioph/scalar.hpp"

#include <optional>
#include <vector>

namespace dioph {

// k-subsets of {0..n-1} in colex order (compare largest element first).
std::vector<std::vector<int>> colexSubsets(int n, int k);
// Position of a sorted k-subset in colex order.
std::size_t colexRank(const std::vector<int>& subset);

// Grade-k element of the exterior algebra of Q^n, coordinates in colex order.
template <class Scalar>
class MultiVector {
 public:
  MultiVector() = default;
  MultiVector(int n, int k, std::vector<Scalar> coords)
      : n_(n), k_(k), coords_(std::move(coords)) {}

  int ambient() const { return n_; }
  int grade() const { return k_; }
  const std::vector<Scalar>& coords() const { return coords_; }
  std::vector<Scalar>& coords() { return coords_; }
  const Scalar& at(const std::vector<int>& sortedSubset) const { return coords_[colexRank(sortedSubset)]; }

  Scalar normSq() const {
    Scalar s = 0;
    for (const auto& c : coords_) s += c * c;
    return s;
  }
  bool isZero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }
  friend bool operator==(const MultiVector& a, const MultiVector& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.coords_ == b.coords_;
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Scalar> coords_;
};

// Fraction-free (Bareiss) determinant; exact for BigInt and BigRat.
template <class Scalar>
Scalar determinant(Matrix<Scalar> a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant: matrix not square");
  if (n == 0) return Scalar(1);
  Scalar sign = 1, prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Scalar(0);
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Exterior product of the columns of `vectors` (n x k, 1 <= k <= n). The
// coordinates are the k x k minors on row subsets taken in colex order.
template <class Derived>
MultiVector<typename Derived::Scalar> wedge(const Eigen::MatrixBase<Derived>& vectors) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(vectors.rows());
  const int k = static_cast<int>(vectors.cols());
  if (k < 1) throw std::invalid_argument("wedge: empty input");
  if (k > n) throw std::invalid_argument("wedge: more vectors than the ambient dimension");
  auto subsets = colexSubsets(n, k);
  std::vector<Scalar> coords;
  coords.reserve(subsets.size());
  Matrix<Scalar> minor(k, k);
  for (const auto& s : subsets) {
    for (int r = 0; r < k; ++r) minor.row(r) = vectors.row(s[static_cast<std::size_t>(r)]);
    coords.push_back(determinant<Scalar>(minor));
  }
  return MultiVector<Scalar>(n, k, std::move(coords));
}

// Rational subspace of R^n stored through a Z-basis of B ∩ Z^n (as columns).
class RationalSubspace {
 public:
  RationalSubspace() = default;

  static RationalSubspace zero(int n);
  static RationalSubspace full(int n);
  // Trusts that the columns already form a Z-basis of the lattice they span
  // in Q^n; heightSq is the squared norm of their wedge.
  static RationalSubspace fromSaturatedBasis(IntMatrix basis);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const IntMatrix& basis() const { return basis_; }
  IntVector basisVector(int i) const { return basis_.col(i); }
  // Primitive, sign-normalized (first nonzero coordinate positive).
  const MultiVector<BigInt>& plucker() const { return plucker_; }
  const BigInt& heightSq() const { return heightSq_; }

  friend bool operator==(const RationalSubspace& a, const RationalSubspace& b) {
    return a.n_ == b.n_ && a.plucker_ == b.plucker_;
  }

 private:
  int n_ = 0;
  IntMatrix basis_;
  MultiVector<BigInt> plucker_;
  BigInt heightSq_ = 1;
};

// Lexicographic order on Plücker coordinates (dimension first).
bool pluckerLess(const RationalSubspace& a, const RationalSubspace& b);

// Divides by the content and makes the first nonzero coordinate positive.
MultiVector<BigInt> primitivePlucker(const MultiVector<BigInt>& w);

// Row-style Hermite normal form by unimodular row operations. Pivots are
// searched only among the first `pivotCols` columns (all when negative).
// Returns the rank found in those columns.
int hermiteRows(IntMatrix& a, int pivotCols = -1);

// Z-basis (columns) of {y in Z^n : m y = 0} for an r x n integer matrix m.
IntMatrix integerKernel(const IntMatrix& m);

template <class Scalar>
int rank(Matrix<Scalar> a) {
  int r = 0;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(r).swap(a.row(p));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      const Scalar pivot = a(r, c), f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) = a(i, j) * pivot - f * a(r, j);
    }
    ++r;
  }
  return r;
}

// Exact solution of a x = b when one exists (least index free variables = 0).
std::optional<RatVector> solveExact(const RatMatrix& a, const RatVector& b);

// Inverse of a square nonsingular rational matrix (Gauss-Jordan).
RatMatrix inverseExact(const RatMatrix& a);

// Saturation of the lattice generated by the columns of `spanning`.
RationalSubspace saturate(const IntMatrix& spanning);
RationalSubspace saturate(const std::vector<IntVector>& spanning);

inline const BigInt& heightSq(const RationalSubspace& b) { return b.heightSq(); }

RationalSubspace orthComplement(const RationalSubspace& b);

struct ProjectionSplit {
  RationalSubspace kerPart;  // ker(p) ∩ B
  RationalSubspace image;    // p(B)
  bool factorizationHolds = false;
  bool kernelInside = false;  // ker(p) ⊆ B
};

// p is the orthogonal projection onto Span{e_i : i in keep} (0-based indices).
ProjectionSplit coordProject(const RationalSubspace& b, const std::vector<int>& keep);

enum class Membership { InB, Inconclusive };

struct MembershipResult {
  Membership verdict;
  BigInt wedgeNormSq;
};

MembershipResult membershipByWedge(const IntVector& y, const RationalSubspace& b);

// Direct sum of subspaces sitting on disjoint coordinate sets.
RationalSubspace directSum(const std::vector<RationalSubspace>& parts, int n);

}  // namespace dioph
