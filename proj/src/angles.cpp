#include "dioph/angles.hpp"

#include "dioph/exponents.hpp"
#include "dioph/polynomial.hpp"

#include <algorithm>

namespace dioph {

Interval AngleEntry::sine(mpfr_prec_t bits) const {
  return sqrt(Interval::fromBounds(sqLo, sqHi, bits));
}

BigRat firstAngleLineToSubspace(const RatVector& y, const RationalSubspace& b) {
  if (y.size() != b.ambient()) throw ValidationError("firstAngleLineToSubspace: dimension mismatch");
  const BigRat ny = y.squaredNorm();
  if (ny == 0) throw ValidationError("firstAngleLineToSubspace: zero vector");
  if (b.dim() == 0) return 1;
  RatMatrix basis = toRational(b.basis());
  RatMatrix gram = basis.transpose() * basis;
  RatVector c = basis.transpose() * y;
  // |proj_b y|^2 = c^T gram^-1 c.
  auto coeffs = solveExact(gram, c);
  return BigRat(1) - c.dot(*coeffs) / ny;
}

namespace {

BigRat relativeTarget(int bits) {
  return BigRat(BigInt(1), ipow(BigInt(2), static_cast<unsigned long>(std::max(bits, 64) / 2)));
}

// Squared sines are the eigenvalues of I - M, with M the cos^2 operator on
// the side of smaller dimension.
std::vector<AngleEntry> sinesFromCosOperator(const RatMatrix& m, int bits) {
  const Eigen::Index t = m.rows();
  RatMatrix s = RatMatrix::Identity(t, t) - m;
  auto roots = realRoots(characteristicPolynomial(s), BigRat(0), BigRat(1), relativeTarget(bits));
  if (roots.size() != static_cast<std::size_t>(t))
    throw std::logic_error("principalSines: eigenvalues escaped [0, 1]");
  std::vector<AngleEntry> out;
  for (const auto& r : roots) out.push_back({r.lo, r.hi, r.exact});
  return out;
}

}  // namespace

AngleReport principalSines(const RatMatrix& a, const RatMatrix& b, const PrecisionConfig& cfg) {
  if (a.rows() != b.rows()) throw ValidationError("principalSines: dimension mismatch");
  if (a.cols() < 1 || b.cols() < 1) throw ValidationError("principalSines: empty generator set");
  if (rank(a) != a.cols() || rank(b) != b.cols())
    throw ValidationError("principalSines: rank-deficient generators");
  if (cfg.workingBits < 64) throw ValidationError("principalSines: workingBits below 64");
  AngleReport report;
  report.d = static_cast<int>(a.cols());
  report.e = static_cast<int>(b.cols());
  RatMatrix ga = inverseExact(a.transpose() * a);
  RatMatrix gb = inverseExact(b.transpose() * b);
  RatMatrix c = a.transpose() * b;
  RatMatrix m = a.cols() <= b.cols() ? RatMatrix(ga * c * gb * c.transpose())
                                     : RatMatrix(gb * c.transpose() * ga * c);
  report.omegas = sinesFromCosOperator(m, cfg.workingBits);
  return report;
}

AngleReport principalSines(const RationalSubspace& a, const RationalSubspace& b, const PrecisionConfig& cfg) {
  return principalSines(toRational(a.basis()), toRational(b.basis()), cfg);
}

std::vector<AngleEntry> psiFromOmegas(const AngleReport& report, int d, int e, int n) {
  const int g = gFunc(d, e, n);
  if (static_cast<int>(report.omegas.size()) < g)
    throw ValidationError("psiFromOmegas: fewer angles than g(d, e, n)");
  for (int i = 0; i < g; ++i)
    if (report.omegas[static_cast<std::size_t>(i)].sqLo != 0)
      throw std::logic_error("psiFromOmegas: a forced angle is not zero");
  return {report.omegas.begin() + g, report.omegas.end()};
}

TargetAngle angleIntervalToTruncatedTarget(const TruncatedTarget& target, const RationalSubspace& b, int j,
                                           const PrecisionConfig& cfg, const BigRat& maxRelativeSpread) {
  const int n = target.n, d = target.d, e = b.dim();
  if (target.generators.rows() != n || target.generators.cols() != d)
    throw ValidationError("truncated target: generator shape mismatch");
  if (static_cast<int>(target.tailCoordinates.size()) != d)
    throw ValidationError("truncated target: one tail count per generator expected");
  if (b.ambient() != n) throw ValidationError("truncated target: dimension mismatch");
  const int g = gFunc(d, e, n);
  if (j < 1 || j + g > std::min(d, e)) throw ValidationError("psi index out of range");
  const mpfr_prec_t bits = cfg.workingBits;

  TargetAngle out;
  if (d == 1) {
    BigRat s = firstAngleLineToSubspace(target.generators.col(0), b);
    out.truncated = {s, s, true};
  } else {
    out.truncated = principalSines(target.generators, toRational(b.basis()), cfg)
                        .omegas[static_cast<std::size_t>(j + g - 1)];
  }

  // omega(Y, Y_M) <= |Y - Y_M| / |Y_M| <= sqrt(#tail) * tail / |Y_M|.
  Interval delta = Interval::fromInteger(0, bits);
  const Interval tail = Interval::fromRational(target.perCoordinateTailBound, bits);
  for (int i = 0; i < d; ++i) {
    Interval norm = sqrt(Interval::fromRational(target.generators.col(i).squaredNorm(), bits));
    Interval count = sqrt(Interval::fromInteger(target.tailCoordinates[static_cast<std::size_t>(i)], bits));
    delta = delta + count * tail / norm;
  }
  if (d > 1) {
    delta = delta * Interval::fromInteger(n, bits);
    out.rigorous = false;
  }
  out.delta = delta;

  Interval psiM = out.truncated.sine(bits);
  if (out.truncated.sqHi != 0) {
    Interval limit = psiM * Interval::fromRational(maxRelativeSpread, bits);
    if (!certainlyLess(out.delta, limit))
      throw PrecisionExhausted("truncation level " + std::to_string(target.level) +
                               " too low for the requested angle resolution");
  }
  out.psi = Interval(bits);
  mpfr_sub(out.psi.lo().get(), psiM.lo().get(), out.delta.hi().get(), MPFR_RNDD);
  if (mpfr_sgn(out.psi.lo().get()) < 0) mpfr_set_zero(out.psi.lo().get(), 1);
  mpfr_add(out.psi.hi().get(), psiM.hi().get(), out.delta.hi().get(), MPFR_RNDU);
  if (mpfr_cmp_ui(out.psi.hi().get(), 1) > 0) mpfr_set_ui(out.psi.hi().get(), 1, MPFR_RNDU);
  return out;
}

ProjectionWitness projectionLowerBoundWitness(const RatMatrix& f, const std::vector<int>& J,
                                              const std::vector<int>& blockSizes, const PrecisionConfig& cfg) {
  int n = 0;
  std::vector<int> offsets;
  for (int s : blockSizes) {
    if (s < 1) throw ValidationError("block sizes must be positive");
    offsets.push_back(n);
    n += s;
  }
  if (f.rows() != n) throw ValidationError("projection witness: dimension mismatch");
  const int dimF = rank(f);
  if (dimF >= static_cast<int>(J.size())) throw ValidationError("projection witness needs dim F < #J");
  if (dimF == 0) throw ValidationError("projection witness: F is zero");

  // Independent columns of f.
  RatMatrix basis(n, 0);
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    RatMatrix trial(n, basis.cols() + 1);
    trial << basis, f.col(c);
    if (rank(trial) == trial.cols()) basis = trial;
  }
  RatMatrix gramInv = inverseExact(basis.transpose() * basis);

  ProjectionWitness best;
  bool have = false;
  for (int j : J) {
    if (j < 1 || j > static_cast<int>(blockSizes.size())) throw ValidationError("block index out of range");
    RatMatrix projected = basis;
    const int off = offsets[static_cast<std::size_t>(j - 1)];
    projected.middleRows(off, blockSizes[static_cast<std::size_t>(j - 1)]).setZero();
    // Rayleigh quotient |p X|^2 / |X|^2 on F: eigenvalues of gram^-1 (P B)^T (P B).
    RatMatrix op = gramInv * (projected.transpose() * projected);
    auto roots = realRoots(characteristicPolynomial(op), BigRat(0), BigRat(1), relativeTarget(cfg.workingBits));
    const RootBracket& low = roots.front();
    if (!have || low.lo > best.ratioLo) {
      best = {j, low.lo, low.hi, low.exact};
      have = true;
    }
  }
  return best;
}

}  // namespace dioph
