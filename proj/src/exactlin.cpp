#include "dioph/exactlin.hpp"

#include <algorithm>

namespace dioph {

std::vector<std::vector<int>> colexSubsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(c);
    int i = 0;
    while (i < k && (i + 1 < k ? c[static_cast<std::size_t>(i)] + 1 == c[static_cast<std::size_t>(i + 1)]
                               : c[static_cast<std::size_t>(i)] + 1 == n))
      ++i;
    if (i >= k) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) c[static_cast<std::size_t>(j)] = j;
  }
  return out;
}

namespace {
std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}
}  // namespace

std::size_t colexRank(const std::vector<int>& subset) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) r += binomial(subset[i], static_cast<int>(i) + 1);
  return r;
}

MultiVector<BigInt> primitivePlucker(const MultiVector<BigInt>& w) {
  BigInt g = content(w.coords());
  if (g == 0) throw std::invalid_argument("primitivePlucker: zero multivector");
  std::vector<BigInt> c = w.coords();
  for (auto& x : c) {
    if (x != 0) {
      if (x < 0) g = -g;
      break;
    }
  }
  for (auto& x : c) x /= g;
  return MultiVector<BigInt>(w.ambient(), w.grade(), std::move(c));
}

RationalSubspace RationalSubspace::zero(int n) {
  RationalSubspace s;
  s.n_ = n;
  s.basis_ = IntMatrix(n, 0);
  s.plucker_ = MultiVector<BigInt>(n, 0, {BigInt(1)});
  s.heightSq_ = 1;
  return s;
}

RationalSubspace RationalSubspace::full(int n) {
  RationalSubspace s;
  s.n_ = n;
  s.basis_ = IntMatrix::Identity(n, n);
  s.plucker_ = MultiVector<BigInt>(n, n, {BigInt(1)});
  s.heightSq_ = 1;
  return s;
}

RationalSubspace RationalSubspace::fromSaturatedBasis(IntMatrix basis) {
  const int n = static_cast<int>(basis.rows());
  if (basis.cols() == 0) return zero(n);
  auto w = wedge(basis);
  if (w.isZero()) throw ValidationError("fromSaturatedBasis: dependent basis vectors");
  RationalSubspace s;
  s.n_ = n;
  s.heightSq_ = w.normSq();
  s.plucker_ = primitivePlucker(w);
  s.basis_ = std::move(basis);
  return s;
}

bool pluckerLess(const RationalSubspace& a, const RationalSubspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const auto& x = a.plucker().coords();
  const auto& y = b.plucker().coords();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

int hermiteRows(IntMatrix& a, int pivotCols) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  const Eigen::Index limit = pivotCols < 0 ? cols : std::min<Eigen::Index>(pivotCols, cols);
  Eigen::Index r = 0;
  BigInt g, s, t, x, y, u, v;
  for (Eigen::Index c = 0; c < limit && r < rows; ++c) {
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      if (a(r, c) == 0) {
        a.row(r).swap(a.row(i));
        continue;
      }
      extendedGcd(a(r, c), a(i, c), g, s, t);
      x = a(r, c) / g;
      y = a(i, c) / g;
      for (Eigen::Index j = c; j < cols; ++j) {
        u = a(r, j);
        v = a(i, j);
        a(r, j) = s * u + t * v;
        a(i, j) = x * v - y * u;
      }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (Eigen::Index j = c; j < cols; ++j) a(r, j) = -a(r, j);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (a(i, c) == 0) continue;
      BigInt q = floorDiv(a(i, c), a(r, c));
      if (q == 0) continue;
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  return static_cast<int>(r);
}

namespace {
// Columns of the result are the rows of `rows` after Hermite reduction.
IntMatrix canonicalColumns(IntMatrix rows) {
  int rk = hermiteRows(rows);
  return rows.topRows(rk).transpose();
}
}  // namespace

IntMatrix integerKernel(const IntMatrix& m) {
  const Eigen::Index r = m.rows(), n = m.cols();
  IntMatrix aug(n, r + n);
  aug.leftCols(r) = m.transpose();
  aug.rightCols(n) = IntMatrix::Identity(n, n);
  int rk = hermiteRows(aug, static_cast<int>(r));
  IntMatrix kernelRows = aug.bottomRightCorner(n - rk, n);
  return canonicalColumns(std::move(kernelRows));
}

std::optional<RatVector> solveExact(const RatMatrix& a, const RatVector& b) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  RatMatrix m(rows, cols + 1);
  m.leftCols(cols) = a;
  m.col(cols) = b;
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.row(r).swap(m.row(p));
    BigRat inv = BigRat(1) / m(r, c);
    for (Eigen::Index j = c; j <= cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      BigRat f = m(i, c);
      for (Eigen::Index j = c; j <= cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (Eigen::Index i = r; i < rows; ++i)
    if (m(i, cols) != 0) return std::nullopt;
  RatVector x = RatVector::Zero(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m(static_cast<Eigen::Index>(i), cols);
  return x;
}

RatMatrix inverseExact(const RatMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverseExact: matrix not square");
  RatMatrix m(n, 2 * n);
  m.leftCols(n) = a;
  m.rightCols(n) = RatMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw std::invalid_argument("inverseExact: singular matrix");
    m.row(c).swap(m.row(p));
    BigRat inv = BigRat(1) / m(c, c);
    for (Eigen::Index j = c; j < 2 * n; ++j) m(c, j) *= inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      BigRat f = m(i, c);
      for (Eigen::Index j = c; j < 2 * n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return m.rightCols(n);
}

RationalSubspace saturate(const IntMatrix& spanning) {
  const int n = static_cast<int>(spanning.rows());
  bool allZero = true;
  for (Eigen::Index i = 0; i < spanning.size() && allZero; ++i) allZero = spanning(i) == 0;
  if (allZero) throw ValidationError("saturate: zero span");
  IntMatrix perp = integerKernel(spanning.transpose());
  if (perp.cols() == 0) return RationalSubspace::full(n);
  IntMatrix basis = integerKernel(perp.transpose());
  return RationalSubspace::fromSaturatedBasis(std::move(basis));
}

RationalSubspace saturate(const std::vector<IntVector>& spanning) {
  if (spanning.empty()) throw ValidationError("saturate: empty input");
  return saturate(columns(spanning));
}

RationalSubspace orthComplement(const RationalSubspace& b) {
  if (b.dim() == 0 || b.dim() == b.ambient())
    throw ValidationError("orthComplement: dimension must be in [1, n-1]");
  return RationalSubspace::fromSaturatedBasis(integerKernel(b.basis().transpose()));
}

ProjectionSplit coordProject(const RationalSubspace& b, const std::vector<int>& keep) {
  const int n = b.ambient();
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int i : keep) {
    if (i < 0 || i >= n) throw ValidationError("coordProject: index out of range");
    kept[static_cast<std::size_t>(i)] = true;
  }
  ProjectionSplit out;
  if (b.dim() == 0) {
    out.kerPart = out.image = RationalSubspace::zero(n);
    out.factorizationHolds = true;
    out.kernelInside = std::all_of(kept.begin(), kept.end(), [](bool x) { return x; });
    return out;
  }
  IntMatrix projected = b.basis();
  for (int i = 0; i < n; ++i)
    if (!kept[static_cast<std::size_t>(i)]) projected.row(i).setZero();
  bool imageZero = true;
  for (Eigen::Index i = 0; i < projected.size() && imageZero; ++i) imageZero = projected(i) == 0;
  out.image = imageZero ? RationalSubspace::zero(n) : saturate(projected);

  IntMatrix keptRows(static_cast<Eigen::Index>(keep.size()), b.dim());
  for (std::size_t r = 0; r < keep.size(); ++r) keptRows.row(static_cast<Eigen::Index>(r)) = b.basis().row(keep[r]);
  IntMatrix coeffs = integerKernel(keptRows);
  out.kerPart = coeffs.cols() == 0 ? RationalSubspace::zero(n) : saturate(IntMatrix(b.basis() * coeffs));

  out.factorizationHolds = b.heightSq() == out.kerPart.heightSq() * out.image.heightSq();
  out.kernelInside = true;
  for (int j = 0; j < n && out.kernelInside; ++j) {
    if (kept[static_cast<std::size_t>(j)]) continue;
    IntVector e = IntVector::Zero(n);
    e[j] = 1;
    out.kernelInside = membershipByWedge(e, b).verdict == Membership::InB;
  }
  return out;
}

MembershipResult membershipByWedge(const IntVector& y, const RationalSubspace& b) {
  if (y.size() != b.ambient()) throw ValidationError("membershipByWedge: dimension mismatch");
  bool zero = true;
  for (Eigen::Index i = 0; i < y.size() && zero; ++i) zero = y[i] == 0;
  if (zero) throw ValidationError("membershipByWedge: Y = 0");
  if (b.dim() == b.ambient()) return {Membership::InB, BigInt(0)};
  IntMatrix m(b.ambient(), b.dim() + 1);
  m.col(0) = y;
  m.rightCols(b.dim()) = b.basis();
  BigInt normSq = wedge(m).normSq();
  return {normSq == 0 ? Membership::InB : Membership::Inconclusive, normSq};
}

RationalSubspace directSum(const std::vector<RationalSubspace>& parts, int n) {
  int total = 0;
  for (const auto& p : parts) {
    if (p.ambient() != n) throw ValidationError("directSum: ambient mismatch");
    total += p.dim();
  }
  if (total == 0) return RationalSubspace::zero(n);
  IntMatrix basis(n, total);
  int col = 0;
  for (const auto& p : parts) {
    basis.middleCols(col, p.dim()) = p.basis();
    col += p.dim();
  }
  return RationalSubspace::fromSaturatedBasis(std::move(basis));
}

}  // namespace dioph
