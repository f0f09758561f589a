#include "dioph/construct.hpp"

#include <algorithm>

namespace dioph {

Mode parseMode(const std::string& text) {
  if (text == "strict") return Mode::Strict;
  if (text == "relaxed") return Mode::Relaxed;
  throw ValidationError("mode must be strict or relaxed, got '" + text + "'");
}

std::string toString(Mode mode) { return mode == Mode::Strict ? "strict" : "relaxed"; }

GrowthSchedule::GrowthSchedule(std::vector<BigRat> gammaPeriod, BigInt theta, long floorCap)
    : gamma_(std::move(gammaPeriod)), theta_(std::move(theta)), cap_(floorCap) {
  if (gamma_.empty()) throw ValidationError("growth schedule needs at least one gamma");
  for (const auto& g : gamma_)
    if (g <= 1) throw ValidationError("every gamma must exceed 1, got " + toString(g));
  if (theta_ < 5 || !isProbablePrime(theta_)) throw ValidationError("theta must be a prime >= 5");
  alphas_.push_back(1);
  floors_.push_back(1);
}

const BigRat& GrowthSchedule::gamma(long k) const {
  if (k < 1) throw std::invalid_argument("gamma index starts at 1");
  return gamma_[static_cast<std::size_t>((k - 1) % static_cast<long>(gamma_.size()))];
}

void GrowthSchedule::extendTo(long k) const {
  while (static_cast<long>(alphas_.size()) <= k) {
    const long next = static_cast<long>(alphas_.size());
    BigRat a = alphas_.back() * gamma(next);
    BigInt f = floorOf(a);
    if (f > cap_)
      throw ValidationError("floor(alpha_" + std::to_string(next) + ") = " + toString(f) + " exceeds the cap " +
                            std::to_string(cap_));
    alphas_.push_back(std::move(a));
    floors_.push_back(f.convert_to<long>());
  }
}

BigRat GrowthSchedule::alpha(long k) const {
  std::lock_guard<std::mutex> lock(mutex_);
  extendTo(k);
  return alphas_[static_cast<std::size_t>(k)];
}

long GrowthSchedule::floorAlpha(long k) const {
  std::lock_guard<std::mutex> lock(mutex_);
  extendTo(k);
  return floors_[static_cast<std::size_t>(k)];
}

std::vector<std::pair<BigRat, BigInt>> alphaSequence(const std::vector<BigRat>& gammaPeriod, long K) {
  if (gammaPeriod.empty()) throw ValidationError("alphaSequence: empty gamma");
  for (const auto& g : gammaPeriod)
    if (g <= 1) throw ValidationError("alphaSequence: every gamma must exceed 1");
  std::vector<std::pair<BigRat, BigInt>> out;
  BigRat a = 1;
  out.emplace_back(a, floorOf(a));
  for (long k = 1; k <= K; ++k) {
    a *= gammaPeriod[static_cast<std::size_t>((k - 1) % static_cast<long>(gammaPeriod.size()))];
    out.emplace_back(a, floorOf(a));
  }
  return out;
}

DigitFamily::DigitFamily(int laneCount, std::uint64_t seed, std::vector<int> prefix)
    : lanes_(laneCount), seed_(seed), prefix_(std::move(prefix)) {
  if (lanes_ < 1) throw ValidationError("digit family needs at least one lane");
  for (int u : prefix_)
    if (u != 1 && u != 2) throw ValidationError("digits must be 1 or 2");
}

int DigitFamily::digit(long k) const {
  if (k < static_cast<long>(prefix_.size())) return prefix_[static_cast<std::size_t>(k)];
  return 1 + static_cast<int>(splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(k))) >> 63);
}

std::vector<int> DigitFamily::transcript(long K) const {
  std::vector<int> out;
  for (long k = 0; k <= K; ++k) out.push_back(digit(k));
  return out;
}

DigitFamily digitFamily(int laneCount, std::uint64_t seed) { return DigitFamily(laneCount, seed); }

LineConstruction::LineConstruction(int n, int zeroGap, std::shared_ptr<const GrowthSchedule> schedule,
                                   DigitFamily digits)
    : n_(n), gap_(zeroGap), schedule_(std::move(schedule)), digits_(std::move(digits)) {
  if (gap_ < 0 || n_ != 1 + gap_ + digits_.laneCount())
    throw ValidationError("line construction: n must equal 1 + zero gap + lanes");
}

BigRat LineConstruction::sigmaTrunc(int j, long N) const {
  BigRat s = 0;
  for (long k = j; k <= N; k += lanes())
    s += BigRat(BigInt(digits_.digit(k)), ipow(schedule_->theta(), static_cast<unsigned long>(schedule_->floorAlpha(k))));
  return s;
}

IntVector LineConstruction::xVector(long N) const {
  if (N < 0) throw ValidationError("xVector: N must be >= 0");
  const long fN = schedule_->floorAlpha(N);
  IntVector x = IntVector::Zero(n_);
  x[0] = ipow(schedule_->theta(), static_cast<unsigned long>(fN));
  for (long k = 0; k <= N; ++k) {
    const long shift = fN - schedule_->floorAlpha(k);
    x[1 + gap_ + digits_.lane(k)] += BigInt(digits_.digit(k)) * ipow(schedule_->theta(), static_cast<unsigned long>(shift));
  }
  return x;
}

IntVector LineConstruction::wVector(long N) const {
  if (N < 1) throw ValidationError("wVector: N must be >= 1");
  IntVector w = IntVector::Zero(n_);
  w[1 + gap_ + digits_.lane(N)] = digits_.digit(N);
  return w;
}

IntVector LineConstruction::vVector(long N) const {
  if (N < 1) throw ValidationError("vVector: N must be >= 1");
  IntVector v = IntVector::Zero(n_);
  v[1 + gap_ + digits_.lane(N)] = 1;
  return v;
}

RationalSubspace LineConstruction::bApprox(long N, int e) const {
  if (e < 1 || e > lanes()) throw ValidationError("bApprox: e must lie in [1, lanes]");
  IntMatrix basis(n_, e);
  basis.col(0) = xVector(N);
  for (int i = 1; i < e; ++i) basis.col(i) = vVector(N + i);
  return RationalSubspace::fromSaturatedBasis(std::move(basis));
}

RationalSubspace LineConstruction::bApproxBySaturation(long N, int e) const {
  if (e < 1 || e > lanes()) throw ValidationError("bApprox: e must lie in [1, lanes]");
  IntMatrix span(n_, e);
  for (int i = 0; i < e; ++i) span.col(i) = xVector(N + i);
  return saturate(span);
}

RatVector LineConstruction::yTruncation(long M) const {
  RatVector y = toRational(xVector(M));
  const BigRat scale(ipow(schedule_->theta(), static_cast<unsigned long>(schedule_->floorAlpha(M))));
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] /= scale;
  return y;
}

BigRat LineConstruction::tailBound(long M) const {
  const BigInt& t = schedule_->theta();
  return BigRat(BigInt(2) * t * t, (t - 1) * ipow(t, static_cast<unsigned long>(schedule_->floorAlpha(M + 1))));
}

TruncatedTarget LineConstruction::truncatedTarget(long M) const {
  TruncatedTarget t;
  t.n = n_;
  t.d = 1;
  t.generators = yTruncation(M);
  t.level = static_cast<int>(M);
  t.perCoordinateTailBound = tailBound(M);
  t.tailCoordinates = {lanes()};
  return t;
}

ExponentValue LineConstruction::predictedExponent(int e) const {
  return muLineFormula(schedule_->gammaPeriod(), e);
}

LineBuild buildLine(int n, const std::vector<BigRat>& gamma, const BigInt& theta, std::uint64_t seed, Mode mode,
                    long floorCap) {
  if (n < 2) throw ValidationError("buildLine: n must be >= 2");
  if (gamma.empty()) throw ValidationError("buildLine: empty gamma");
  std::vector<std::string> flags;
  for (const auto& g : gamma) {
    if (mode == Mode::Strict && !atLeastC1(g))
      throw ValidationError("gamma = " + toString(g) + " is below C_1 = (3 + sqrt 5)/2 (strict mode)");
    if (mode == Mode::Relaxed && g <= 2)
      throw ValidationError("gamma = " + toString(g) + " must exceed 2 (relaxed mode)");
    if (mode == Mode::Relaxed && !atLeastC1(g)) flags.push_back("gamma " + toString(g) + " below C_1");
  }
  auto schedule = std::make_shared<const GrowthSchedule>(gamma, theta, floorCap);
  return {LineConstruction(n, 0, schedule, DigitFamily(n - 1, seed)), mode, std::move(flags)};
}

namespace {

std::vector<BigRat> blockGamma(const std::vector<BigRat>& extendedRow, int m) {
  std::vector<BigRat> g(extendedRow.begin(), extendedRow.begin() + m);
  for (int i = 0; i < m; ++i) g.push_back(extendedRow[static_cast<std::size_t>(m)]);
  return g;
}

IntMatrix embed(const IntMatrix& local, int offset, int n) {
  IntMatrix out = IntMatrix::Zero(n, local.cols());
  out.middleRows(offset, local.rows()) = local;
  return out;
}

}  // namespace

BlockConstruction buildBlocks(const BlockParams& p) {
  if (p.d < 1 || p.m < 1) throw ValidationError("buildBlocks: d and m must be >= 1");
  if (static_cast<int>(p.beta.size()) != p.d) throw ValidationError("buildBlocks: beta needs d rows");
  BlockConstruction bc;
  bc.d_ = p.d;
  bc.m_ = p.m;
  bc.mode_ = p.mode;
  bc.c2_ = p.c2 ? *p.c2 : BigRat(1) + BigRat(BigInt(1), BigInt(2 * p.d * p.m));
  bc.report_ = validateBetaHypotheses(p.d, p.m, p.beta, bc.c2_);
  if (p.mode == Mode::Strict) {
    std::string failed;
    for (const auto& c : bc.report_.checks)
      if (!c.passed) failed += "\n  " + c.name + ": " + c.lhs + " vs " + c.rhs;
    if (!failed.empty()) throw ValidationError("beta hypotheses fail (strict mode):" + failed);
  }
  bc.beta_ = bc.report_.extendedBeta;
  for (int i = 0; i < p.d; ++i) {
    auto schedule = std::make_shared<const GrowthSchedule>(blockGamma(bc.beta_[static_cast<std::size_t>(i)], p.m),
                                                           p.theta, p.floorCap);
    bc.blocks_.emplace_back(p.m + 1, 0, schedule,
                            DigitFamily(p.m, splitmix64(p.seed + static_cast<std::uint64_t>(i))));
  }
  return bc;
}

IntVector BlockConstruction::xVector(int i, long N) const {
  if (i < 1 || i > d_) throw ValidationError("block index out of range");
  IntVector out = IntVector::Zero(n());
  out.segment((i - 1) * (m_ + 1), m_ + 1) = blocks_[static_cast<std::size_t>(i - 1)].xVector(N);
  return out;
}

RationalSubspace BlockConstruction::cApprox(const std::vector<int>& J, const std::vector<long>& Nvec, int e) const {
  const int k = static_cast<int>(J.size());
  if (k < 1 || static_cast<int>(Nvec.size()) != k) throw ValidationError("cApprox: J and N sizes differ");
  if (e < k || e >= k * (m_ + 1)) throw ValidationError("cApprox: requires k <= e < k(m+1)");
  for (int q = 0; q < k; ++q) {
    if (J[static_cast<std::size_t>(q)] < 1 || J[static_cast<std::size_t>(q)] > d_)
      throw ValidationError("cApprox: block index out of range");
    if (q > 0 && J[static_cast<std::size_t>(q)] <= J[static_cast<std::size_t>(q - 1)])
      throw ValidationError("cApprox: J must be strictly increasing");
  }
  const auto v = vQ(e, k);
  std::vector<RationalSubspace> parts;
  for (int q = 0; q < k; ++q) {
    const int j = J[static_cast<std::size_t>(q)];
    const int offset = (j - 1) * (m_ + 1);
    const int vq = v[static_cast<std::size_t>(q)];
    IntMatrix local;
    if (vq == m_ + 1)
      local = IntMatrix::Identity(m_ + 1, m_ + 1);
    else
      local = blocks_[static_cast<std::size_t>(j - 1)].bApprox(Nvec[static_cast<std::size_t>(q)], vq).basis();
    parts.push_back(RationalSubspace::fromSaturatedBasis(embed(local, offset, n())));
  }
  return directSum(parts, n());
}

TruncatedTarget BlockConstruction::truncatedTarget(long M) const {
  TruncatedTarget t;
  t.n = n();
  t.d = d_;
  t.generators = RatMatrix::Zero(n(), d_);
  t.level = static_cast<int>(M);
  t.perCoordinateTailBound = 0;
  for (int i = 0; i < d_; ++i) {
    const auto& line = blocks_[static_cast<std::size_t>(i)];
    t.generators.col(i).segment(i * (m_ + 1), m_ + 1) = line.yTruncation(M);
    t.perCoordinateTailBound = std::max(t.perCoordinateTailBound, line.tailBound(M));
    t.tailCoordinates.push_back(m_);
  }
  return t;
}

ExponentValue BlockConstruction::predictedExponent(int e, int k) const {
  return muBlockFormula(d_, m_, beta_, e, k);
}

std::vector<BigRat> paddedSchedule(const std::vector<BigRat>& gamma, const BigRat& pad) {
  std::vector<BigRat> out = gamma;
  out.resize(2 * gamma.size(), pad);
  return out;
}

RecursiveConstruction buildRecursive(const RecursiveParams& p) {
  const int n = p.n, d = p.d;
  if (d < 1 || d > n - 1) throw ValidationError("buildRecursive: d must lie in [1, n-1]");
  if (static_cast<int>(p.gamma.size()) != n - d) throw ValidationError("buildRecursive: gamma needs n-d entries");
  if (p.truncation < 0) throw ValidationError("buildRecursive: truncation level must be >= 0");
  RecursiveConstruction rc;
  rc.n_ = n;
  rc.d_ = d;
  rc.mode_ = p.mode;
  rc.level_ = p.truncation;
  rc.gamma_ = p.gamma;

  // constantFor(l) stands in for C_l.
  auto constantFor = [&](int l) -> BigRat {
    if (p.mode == Mode::Relaxed) {
      if (!p.proxy) throw ValidationError("relaxed recursive construction needs a proxy constant");
      return *p.proxy;
    }
    return cdUpperBound(l, n);
  };
  if (p.mode == Mode::Relaxed && p.proxy && *p.proxy <= 1) throw ValidationError("proxy must exceed 1");
  for (const auto& g : p.gamma) {
    if (p.mode == Mode::Strict && !exceedsCd(g, d, n))
      throw ValidationError("gamma = " + toString(g) + " is below C_" + std::to_string(d) + " (strict mode)");
    if (g <= 1) throw ValidationError("every gamma must exceed 1");
  }

  // Y_1: the user schedule padded with C_d; Y_i (i >= 2) use the constant C_{d-i+1}.
  for (int i = 1; i <= d; ++i) {
    const int l = d - i + 1;
    const int lanes = n - l;
    std::vector<BigRat> schedule;
    if (i == 1) {
      schedule = d == 1 ? p.gamma : paddedSchedule(p.gamma, constantFor(d));
    } else {
      BigRat c = constantFor(l);
      rc.constants_.push_back(c);
      schedule = {c};
    }
    auto gs = std::make_shared<const GrowthSchedule>(schedule, p.theta, p.floorCap);
    std::uint64_t seed = i == 1 ? p.seed : splitmix64(p.seed + static_cast<std::uint64_t>(i));
    rc.levels_.emplace_back(n, l - 1, gs, DigitFamily(lanes, seed));
  }
  if (d > 1) rc.constants_.insert(rc.constants_.begin(), constantFor(d));
  // Materialize once so cap violations surface here.
  for (const auto& line : rc.levels_) line.schedule().floorAlpha(p.truncation + 1);
  return rc;
}

TruncatedTarget RecursiveConstruction::truncatedTarget(long M) const {
  TruncatedTarget t;
  t.n = n_;
  t.d = d_;
  t.generators = RatMatrix(n_, d_);
  t.level = static_cast<int>(M);
  t.perCoordinateTailBound = 0;
  for (int i = 0; i < d_; ++i) {
    const auto& line = levels_[static_cast<std::size_t>(i)];
    t.generators.col(i) = line.yTruncation(M);
    t.perCoordinateTailBound = std::max(t.perCoordinateTailBound, line.tailBound(M));
    t.tailCoordinates.push_back(line.lanes());
  }
  return t;
}

ExponentValue RecursiveConstruction::predictedExponent(int e) const {
  if (e < 1 || e > n_ - d_) throw ValidationError("predictedExponent: e must lie in [1, n-d]");
  return Kmax(gamma_, e);
}

}  // namespace dioph
