#include "dioph/search.hpp"

#include "dioph/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace dioph {

namespace {

using Coords = std::vector<long long>;

// Above this the exhaustive enumerators refuse to run.
const BigInt kExhaustiveLimit("1000000000000");

long long toLongLong(const BigInt& x) { return x.convert_to<long long>(); }

BigInt isqrtFloor(const BigInt& x) { return boost::multiprecision::sqrt(x); }

// Integer vectors with |v|^2 <= rsq in lexicographic order, optionally only
// those whose first nonzero entry is positive and whose entries are coprime.
std::vector<Coords> ballVectors(int n, long long rsq, bool normalized, bool primitive) {
  std::vector<Coords> out;
  const long long r = static_cast<long long>(std::sqrt(static_cast<long double>(rsq)));
  Coords v(static_cast<std::size_t>(n), 0);
  auto recurse = [&](auto&& self, int i, long long budget, bool leadingZero) -> void {
    if (i == n) {
      if (leadingZero) return;  // zero vector
      if (primitive) {
        long long g = 0;
        for (long long c : v) g = std::gcd(g, c);
        if (g != 1) return;
      }
      out.push_back(v);
      return;
    }
    long long lim = r;
    while (lim * lim > budget) --lim;
    const long long start = (normalized && leadingZero) ? 0 : -lim;
    for (long long c = start; c <= lim; ++c) {
      v[static_cast<std::size_t>(i)] = c;
      self(self, i + 1, budget - c * c, leadingZero && c == 0);
    }
    v[static_cast<std::size_t>(i)] = 0;
  };
  recurse(recurse, 0, rsq, true);
  return out;
}

IntVector toIntVector(const Coords& c) {
  IntVector v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i];
  return v;
}

RationalSubspace lineThrough(const Coords& c) {
  IntMatrix m(static_cast<Eigen::Index>(c.size()), 1);
  m.col(0) = toIntVector(c);
  return RationalSubspace::fromSaturatedBasis(m);
}

void checkExhaustiveBound(const BigInt& heightSqMax) {
  if (heightSqMax < 1) throw ValidationError("heightSqMax must be >= 1");
  if (heightSqMax > kExhaustiveLimit) throw ValidationError("heightSqMax above the exhaustive limit 10^12");
}

// Hermite constant bound: gamma_1 = 1, gamma_e <= 1 + e/4.
BigRat hermiteBound(int e) { return e == 1 ? BigRat(1) : BigRat(4 + e, 4); }

// Primitive, sign-normalized wedge of the chosen vectors; empty when dependent.
template <class Scalar>
std::vector<BigInt> normalizedWedge(const std::vector<const Coords*>& vs, int n) {
  Matrix<Scalar> m(n, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t c = 0; c < vs.size(); ++c)
    for (int r = 0; r < n; ++r) m(r, static_cast<Eigen::Index>(c)) = (*vs[c])[static_cast<std::size_t>(r)];
  auto w = wedge(m);
  std::vector<BigInt> coords;
  coords.reserve(w.coords().size());
  for (const auto& x : w.coords()) coords.push_back(BigInt(x));
  BigInt g = content(coords);
  if (g == 0) return {};
  bool flip = false;
  for (const auto& x : coords)
    if (x != 0) {
      flip = x < 0;
      break;
    }
  for (auto& x : coords) x = flip ? BigInt(-x / g) : BigInt(x / g);
  return coords;
}

std::vector<RationalSubspace> boundedEntrySearch(int n, int e, const BigInt& heightSqMax, long maxCandidates,
                                                 std::uint64_t seed, bool& complete) {
  const EntryBounds lim = boundedEntryLimits(e, heightSqMax);
  const auto firsts = ballVectors(n, toLongLong(lim.firstSq), true, true);
  complete = true;
  std::vector<RationalSubspace> out;
  if (e == 1) {
    for (const auto& c : firsts) {
      auto line = lineThrough(c);
      if (line.heightSq() <= heightSqMax) out.push_back(std::move(line));
    }
    return out;
  }
  // Minors fit in long long when laterSq^e * C(n, e) stays below 2^62.
  const double wedgeEstimate = std::pow(static_cast<double>(toLongLong(lim.laterSq)), e) *
                               std::tgamma(n + 1.0) / (std::tgamma(e + 1.0) * std::tgamma(n - e + 1.0));
  const bool small = wedgeEstimate < 4e18;

  std::set<std::vector<BigInt>> seen;
  auto consider = [&](const std::vector<const Coords*>& vs) {
    auto key = small ? normalizedWedge<long long>(vs, n) : normalizedWedge<BigInt>(vs, n);
    if (key.empty()) return;
    BigInt h = 0;
    for (const auto& x : key) h += x * x;
    if (h > heightSqMax || !seen.insert(key).second) return;
    std::vector<IntVector> cols;
    for (const auto* v : vs) cols.push_back(toIntVector(*v));
    out.push_back(saturate(cols));
  };

  // Later vectors sorted by norm so the product bound cuts whole suffixes.
  auto laters = ballVectors(n, toLongLong(lim.laterSq), true, true);
  auto normSq = [](const Coords& c) {
    long long s = 0;
    for (auto x : c) s += x * x;
    return s;
  };
  std::stable_sort(laters.begin(), laters.end(), [&](const Coords& a, const Coords& b) { return normSq(a) < normSq(b); });
  std::vector<long long> norms;
  for (const auto& c : laters) norms.push_back(normSq(c));
  const BigInt productSq = lim.productSq;

  // Visits every b1 < b2 < ... (indices into laters) with prod |b_i|^2 <= productSq.
  // With count-only set, stops as soon as the visit count passes the cap.
  long visited = 0;
  std::vector<const Coords*> vs(static_cast<std::size_t>(e));
  auto walk = [&](auto& self, int depth, std::size_t from, const BigInt& prod, bool countOnly) -> bool {
    if (depth == e) {
      ++visited;
      if (countOnly) return visited <= maxCandidates;
      consider(vs);
      return true;
    }
    for (std::size_t i = from; i < laters.size(); ++i) {
      const BigInt next = prod * norms[i];
      if (next > productSq) break;
      vs[static_cast<std::size_t>(depth)] = &laters[i];
      if (!self(self, depth + 1, i + 1, next, countOnly)) return false;
    }
    return true;
  };
  auto run = [&](bool countOnly) -> bool {
    for (const auto& b1 : firsts) {
      long long s = normSq(b1);
      vs[0] = &b1;
      if (!walk(walk, 1, 0, BigInt(s), countOnly)) return false;
    }
    return true;
  };

  if (!run(true)) {
    complete = false;
    const long long r = static_cast<long long>(std::sqrt(static_cast<long double>(toLongLong(lim.laterSq))));
    std::uint64_t state = seed;
    auto next = [&](long long lo, long long hi) {
      state = splitmix64(state);
      return lo + static_cast<long long>(state % static_cast<std::uint64_t>(hi - lo + 1));
    };
    std::vector<Coords> tuple(static_cast<std::size_t>(e));
    for (long t = 0; t < maxCandidates; ++t) {
      tuple[0] = firsts[static_cast<std::size_t>(next(0, static_cast<long long>(firsts.size()) - 1))];
      for (int i = 1; i < e; ++i) {
        Coords c(static_cast<std::size_t>(n));
        long long s = 0;
        do {
          s = 0;
          for (auto& x : c) {
            x = next(-r, r);
            s += x * x;
          }
        } while (s > toLongLong(lim.laterSq) || s == 0);
        tuple[static_cast<std::size_t>(i)] = c;
      }
      std::vector<const Coords*> ptrs;
      for (const auto& c : tuple) ptrs.push_back(&c);
      consider(ptrs);
    }
  } else {
    run(false);
  }
  return out;
}

mpfr_prec_t bitsOf(const ScanConfig& cfg) { return static_cast<mpfr_prec_t>(cfg.precision.workingBits); }

Interval scoreOf(const BigInt& heightSq, const Interval& psi) {
  const mpfr_prec_t bits = psi.precision();
  Interval score(bits);
  if (heightSq == 1) {
    mpfr_set_inf(score.lo().get(), 1);
    mpfr_set_inf(score.hi().get(), 1);
    return score;
  }
  Interval logH = log(Interval::fromInteger(heightSq, bits)) * Interval::fromRational(BigRat(1, 2), bits);
  if (psi.isPositive()) return -log(psi) / logH;
  Interval top(bits);
  mpfr_set(top.lo().get(), psi.hi().get(), MPFR_RNDD);
  mpfr_set(top.hi().get(), psi.hi().get(), MPFR_RNDU);
  score.lo() = (-log(top) / logH).lo();
  mpfr_set_inf(score.hi().get(), 1);
  return score;
}

bool mayReach(const Interval& score, const BigRat& floor) {
  return mpfr_cmp_q(score.hi().get(), floor.backend().data()) >= 0;
}

// Output order: score desc, then heightSq asc, then Plücker lex.
bool outputLess(const ApproximationRecord& a, const ApproximationRecord& b) {
  int c = mpfr_cmp(a.score.lo().get(), b.score.lo().get());
  if (c != 0) return c > 0;
  c = mpfr_cmp(a.score.hi().get(), b.score.hi().get());
  if (c != 0) return c > 0;
  if (a.heightSq != b.heightSq) return a.heightSq < b.heightSq;
  return pluckerLess(a.subspace, b.subspace);
}

struct Candidate {
  RationalSubspace subspace;
  std::optional<long> label;
};

enum class Outcome { Record, Contact, Flagged };

struct Evaluation {
  Outcome outcome = Outcome::Flagged;
  std::optional<ApproximationRecord> record;
  std::string reason;
};

Evaluation evaluate(const ScanConfig& cfg, const Candidate& cand) {
  Evaluation ev;
  const auto& b = cand.subspace;
  const mpfr_prec_t bits = bitsOf(cfg);
  try {
    if (const auto* a = std::get_if<RationalSubspace>(&cfg.target)) {
      const int g = gFunc(a->dim(), b.dim(), cfg.n);
      auto report = principalSines(*a, b, cfg.precision);
      const AngleEntry& entry = report.omegas[static_cast<std::size_t>(cfg.j + g - 1)];
      if (entry.sqHi == 0) {
        ev.outcome = Outcome::Contact;
        return ev;
      }
      ev.record = makeRecord(b, entry.sine(bits), cand.label);
    } else {
      const auto& t = std::get<TruncatedTarget>(cfg.target);
      auto ta = angleIntervalToTruncatedTarget(t, b, cfg.j, cfg.precision);
      if (ta.truncated.sqHi == 0) {
        ev.reason = "truncated target meets B; raise the truncation level";
        return ev;
      }
      ev.record = makeRecord(b, ta.psi, cand.label);
      ev.record->rigorous = ta.rigorous;
    }
    ev.outcome = Outcome::Record;
  } catch (const PrecisionExhausted& ex) {
    ev.reason = ex.what();
  }
  return ev;
}

std::string describe(const RationalSubspace& b) {
  std::string s = "[";
  const auto& c = b.plucker().coords();
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + toString(c[i]);
  return s + "]";
}

// Lines that can reach score >= floor against a line target with nonzero
// first coordinate. With v = (q, p) and y normalized so y_0 = 1, the minor on
// {0, i} gives |q y_i - p_i| <= psi_M |v| |y| <= |y| (max(q,1)^(1-floor) + delta Hmax).
std::optional<std::vector<Candidate>> coneCandidates(const ScanConfig& cfg) {
  if (!cfg.scoreFloor || cfg.e != 1 || *cfg.scoreFloor < 1) return std::nullopt;
  RatVector y;
  BigRat deltaSq = 0;
  const mpfr_prec_t bits = bitsOf(cfg);
  Interval delta = Interval::fromInteger(0, bits);
  if (const auto* a = std::get_if<RationalSubspace>(&cfg.target)) {
    if (a->dim() != 1) return std::nullopt;
    y = toRational(IntVector(a->basis().col(0)));
  } else {
    const auto& t = std::get<TruncatedTarget>(cfg.target);
    if (t.d != 1) return std::nullopt;
    y = t.generators.col(0);
    Interval norm = sqrt(Interval::fromRational(y.squaredNorm(), bits));
    delta = sqrt(Interval::fromInteger(t.tailCoordinates.at(0), bits)) *
            Interval::fromRational(t.perCoordinateTailBound, bits) / norm;
  }
  if (y.size() != cfg.n || y[0] == 0) return std::nullopt;
  const BigRat y0 = y[0];
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] /= y0;

  const BigInt hmax = isqrtFloor(cfg.heightSqMax);
  const Interval normY = sqrt(Interval::fromRational(y.squaredNorm(), bits));
  const Interval slack = delta * Interval::fromInteger(hmax + 1, bits);
  const Interval expo = Interval::fromRational(BigRat(1) - *cfg.scoreFloor, bits);

  std::vector<Candidate> out;
  const int n = cfg.n;
  for (BigInt q = 0; q <= hmax; ++q) {
    const BigInt base = q == 0 ? BigInt(1) : q;
    Interval radius = normY * (exp(expo * log(Interval::fromInteger(base, bits))) + slack);
    const BigRat r = exactValue(radius.hi());
    std::vector<BigInt> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    bool empty = false;
    for (int i = 1; i < n; ++i) {
      const BigRat centre = BigRat(q) * y[i];
      lo[static_cast<std::size_t>(i)] = ceilOf(centre - r);
      hi[static_cast<std::size_t>(i)] = floorOf(centre + r);
      if (lo[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)]) empty = true;
    }
    if (empty) continue;
    IntVector v(n);
    v[0] = q;
    for (int i = 1; i < n; ++i) v[i] = lo[static_cast<std::size_t>(i)];
    while (true) {
      bool keep = true;
      BigInt first = 0;
      for (int i = 0; i < n && first == 0; ++i) first = v[i];
      if (first <= 0) keep = false;
      if (keep && content(v) != 1) keep = false;
      if (keep && v.squaredNorm() > cfg.heightSqMax) keep = false;
      if (keep) {
        IntMatrix m(n, 1);
        m.col(0) = v;
        out.push_back({RationalSubspace::fromSaturatedBasis(m), std::nullopt});
      }
      int i = n - 1;
      while (i >= 1 && v[i] == hi[static_cast<std::size_t>(i)]) {
        v[i] = lo[static_cast<std::size_t>(i)];
        --i;
      }
      if (i < 1) break;
      v[i] += 1;
    }
  }
  return out;
}

std::vector<ApproximationRecord> kWayMerge(std::vector<std::vector<ApproximationRecord>> parts) {
  std::vector<ApproximationRecord> out;
  std::vector<std::size_t> head(parts.size(), 0);
  while (true) {
    int best = -1;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      if (head[p] == parts[p].size()) continue;
      if (best < 0 || outputLess(parts[p][head[p]], parts[static_cast<std::size_t>(best)][head[static_cast<std::size_t>(best)]]))
        best = static_cast<int>(p);
    }
    if (best < 0) break;
    auto& h = head[static_cast<std::size_t>(best)];
    out.push_back(std::move(parts[static_cast<std::size_t>(best)][h++]));
  }
  return out;
}

}  // namespace

std::vector<RationalSubspace> enumerateLines(int n, const BigInt& heightSqMax) {
  if (n < 2) throw ValidationError("enumerateLines: n must be >= 2");
  checkExhaustiveBound(heightSqMax);
  std::vector<RationalSubspace> out;
  for (const auto& c : ballVectors(n, toLongLong(heightSqMax), true, true)) out.push_back(lineThrough(c));
  return out;
}

Strategy parseStrategy(const std::string& text) {
  if (text == "auto") return Strategy::Auto;
  if (text == "dual") return Strategy::Dual;
  if (text == "primitiveVectors" || text == "primitive-vectors") return Strategy::PrimitiveVectors;
  if (text == "boundedEntries" || text == "bounded-entries") return Strategy::BoundedEntries;
  if (text == "constructedFamily" || text == "constructed-family") return Strategy::ConstructedFamily;
  throw ValidationError("unknown strategy '" + text + "'");
}

std::string toString(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Dual: return "dual";
    case Strategy::PrimitiveVectors: return "primitiveVectors";
    case Strategy::BoundedEntries: return "boundedEntries";
    case Strategy::ConstructedFamily: return "constructedFamily";
  }
  return "auto";
}

Strategy defaultStrategy(int n, int e) {
  if (e == 1) return Strategy::PrimitiveVectors;
  if (e == n - 1) return Strategy::Dual;
  return Strategy::BoundedEntries;
}

EntryBounds boundedEntryLimits(int e, const BigInt& heightSqMax) {
  if (e < 1) throw ValidationError("boundedEntryLimits: e must be >= 1");
  const BigRat gamma = hermiteBound(e);
  // lambda_1^2 <= gamma_e (H^2)^(1/e) <= gamma_e * r with r^e >= H^2.
  BigInt r = 1;
  while (ipow(r, static_cast<unsigned long>(e)) < heightSqMax) ++r;
  EntryBounds b;
  b.firstSq = floorOf(gamma * BigRat(r));
  // A reduced basis has |b_i|^2 <= (i+3)/4 lambda_i^2 and lambda_e^2 <= gamma_e^e H^2.
  b.laterSq = floorOf(BigRat(e + 3, 4) * rpow(gamma, e) * BigRat(heightSqMax));
  // prod |b_i|^2 <= prod_i (i+3)/4 * prod lambda_i^2 <= prod_i (i+3)/4 * gamma_e^e H^2 (Minkowski).
  BigRat factor = 1;
  for (int i = 1; i <= e; ++i) factor *= BigRat(i + 3, 4);
  b.productSq = floorOf(factor * rpow(gamma, e) * BigRat(heightSqMax));
  return b;
}

SubspaceEnumeration enumerateSubspaces(int n, int e, const BigInt& heightSqMax, Strategy strategy, long maxCandidates,
                                       std::uint64_t seed) {
  if (n < 2) throw ValidationError("enumerateSubspaces: n must be >= 2");
  if (e < 1 || e > n - 1) throw ValidationError("enumerateSubspaces: e must lie in [1, n-1]");
  checkExhaustiveBound(heightSqMax);
  SubspaceEnumeration out;
  out.strategy = strategy == Strategy::Auto ? defaultStrategy(n, e) : strategy;
  switch (out.strategy) {
    case Strategy::PrimitiveVectors:
      if (e != 1) throw ValidationError("primitiveVectors strategy needs e = 1");
      out.subspaces = enumerateLines(n, heightSqMax);
      break;
    case Strategy::Dual:
      if (e != n - 1) throw ValidationError("dual strategy needs e = n - 1");
      for (const auto& line : enumerateLines(n, heightSqMax)) out.subspaces.push_back(orthComplement(line));
      break;
    case Strategy::BoundedEntries:
      out.subspaces = boundedEntrySearch(n, e, heightSqMax, maxCandidates, seed, out.complete);
      break;
    default:
      throw ValidationError("strategy " + toString(out.strategy) + " does not enumerate");
  }
  std::sort(out.subspaces.begin(), out.subspaces.end(), pluckerLess);
  return out;
}

ApproximationRecord makeRecord(const RationalSubspace& b, const Interval& psi, std::optional<long> label) {
  ApproximationRecord r;
  r.subspace = b;
  r.heightSq = b.heightSq();
  r.label = label;
  r.psi = psi;
  r.score = scoreOf(r.heightSq, psi);
  return r;
}

std::vector<LabeledSubspace> lineFamily(const LineConstruction& line, int e, long nLo, long nHi) {
  if (nLo < 0 || nHi < nLo) throw ValidationError("lineFamily: bad N range");
  std::vector<LabeledSubspace> out;
  for (long N = nLo; N <= nHi; ++N) out.push_back({N, line.bApprox(N, e)});
  return out;
}

ScanResult bestApproxScan(const ScanConfig& cfg) {
  if (cfg.n < 2 || cfg.e < 1 || cfg.e > cfg.n - 1) throw ValidationError("scan: need 1 <= e <= n-1");
  if (cfg.j < 1) throw ValidationError("scan: j must be >= 1");
  if (cfg.workers < 1) throw ValidationError("scan: workers must be >= 1");
  if (const auto* a = std::get_if<RationalSubspace>(&cfg.target)) {
    if (a->ambient() != cfg.n) throw ValidationError("scan: target dimension mismatch");
    if (cfg.j + gFunc(a->dim(), cfg.e, cfg.n) > std::min(a->dim(), cfg.e)) throw ValidationError("scan: j out of range");
  } else {
    const auto& t = std::get<TruncatedTarget>(cfg.target);
    if (t.n != cfg.n) throw ValidationError("scan: target dimension mismatch");
    if (cfg.j + gFunc(t.d, cfg.e, cfg.n) > std::min(t.d, cfg.e)) throw ValidationError("scan: j out of range");
  }

  ScanResult result;
  result.strategy = cfg.strategy == Strategy::Auto ? defaultStrategy(cfg.n, cfg.e) : cfg.strategy;
  std::vector<Candidate> candidates;
  if (result.strategy == Strategy::ConstructedFamily) {
    if (cfg.family.empty()) throw ValidationError("constructedFamily strategy needs a family");
    for (const auto& f : cfg.family) {
      if (f.subspace.dim() != cfg.e || f.subspace.ambient() != cfg.n)
        throw ValidationError("family member has the wrong shape");
      candidates.push_back({f.subspace, f.label});
    }
  } else {
    std::optional<std::vector<Candidate>> cone;
    if (result.strategy == Strategy::PrimitiveVectors) cone = coneCandidates(cfg);
    if (cone) {
      result.conePrefilter = true;
      candidates = std::move(*cone);
    } else {
      auto en = enumerateSubspaces(cfg.n, cfg.e, cfg.heightSqMax, result.strategy, cfg.maxCandidates, cfg.seed);
      result.complete = en.complete;
      for (auto& b : en.subspaces) candidates.push_back({std::move(b), std::nullopt});
    }
  }
  result.candidates = static_cast<long>(candidates.size());

  // Contiguous candidate ranges per worker; each slot is written by one thread.
  std::vector<Evaluation> evals(candidates.size());
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers),
                                                    std::max<std::size_t>(1, candidates.size()));
  const std::size_t chunk = (candidates.size() + workers - 1) / workers;
  auto run = [&](std::size_t w) {
    const std::size_t lo = w * chunk, hi = std::min(candidates.size(), lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) evals[i] = evaluate(cfg, candidates[i]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  std::vector<ApproximationRecord> all;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    switch (evals[i].outcome) {
      case Outcome::Record: all.push_back(std::move(*evals[i].record)); break;
      case Outcome::Contact: ++result.exactContacts; break;
      case Outcome::Flagged:
        result.flagged.push_back(describe(candidates[i].subspace) + ": " + evals[i].reason);
        break;
    }
  }

  std::vector<char> keep(all.size(), 0);
  if (result.strategy == Strategy::ConstructedFamily) {
    std::fill(keep.begin(), keep.end(), 1);
  } else {
    if (cfg.scoreFloor)
      for (std::size_t i = 0; i < all.size(); ++i) keep[i] = mayReach(all[i].score, *cfg.scoreFloor);
    if (!result.conePrefilter) {
      // Pareto frontier in (H, psi): drop records certainly dominated by a
      // record of no larger height.
      std::vector<std::size_t> byHeight(all.size());
      std::iota(byHeight.begin(), byHeight.end(), 0);
      std::stable_sort(byHeight.begin(), byHeight.end(), [&](std::size_t a, std::size_t b) {
        if (all[a].heightSq != all[b].heightSq) return all[a].heightSq < all[b].heightSq;
        return pluckerLess(all[a].subspace, all[b].subspace);
      });
      Real best(bitsOf(cfg));
      mpfr_set_inf(best.get(), 1);
      for (std::size_t i : byHeight) {
        if (mpfr_less_p(best.get(), all[i].psi.lo().get()) == 0) keep[i] = 1;
        mpfr_min(best.get(), best.get(), all[i].psi.hi().get(), MPFR_RNDU);
      }
    }
  }

  // Per-worker sorted runs, merged in a fixed order.
  std::vector<std::vector<ApproximationRecord>> runs(workers);
  std::size_t seen = 0;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (evals[i].outcome != Outcome::Record) continue;
    if (keep[seen]) runs[i / chunk].push_back(std::move(all[seen]));
    ++seen;
  }
  for (auto& r : runs) std::sort(r.begin(), r.end(), outputLess);
  result.records = kWayMerge(std::move(runs));
  return result;
}

EstimateMode parseEstimateMode(const std::string& text) {
  if (text == "frontierMax" || text == "frontier-max") return EstimateMode::FrontierMax;
  if (text == "familySlope" || text == "family-slope") return EstimateMode::FamilySlope;
  throw ValidationError("unknown estimate mode '" + text + "'");
}

Interval exponentEstimate(const std::vector<ApproximationRecord>& records, EstimateMode mode, int period) {
  if (records.size() < 2) throw ValidationError("exponentEstimate needs at least 2 records");
  if (period < 1) throw ValidationError("exponentEstimate: period must be >= 1");
  const mpfr_prec_t bits = records.front().psi.precision();
  if (mode == EstimateMode::FrontierMax) {
    std::optional<Interval> best;
    for (const auto& r : records) {
      if (r.heightSq == 1) continue;
      best = best ? max(*best, r.score) : r.score;
    }
    if (!best) throw ValidationError("exponentEstimate: degenerate, every record has H = 1");
    return *best;
  }

  std::map<long, std::vector<const ApproximationRecord*>> classes;
  for (const auto& r : records) {
    if (!r.psi.isPositive()) throw ValidationError("familySlope: a psi interval touches 0");
    const long label = r.label.value_or(0);
    classes[((label % period) + period) % period].push_back(&r);
  }
  std::optional<Interval> best;
  for (const auto& [cls, pts] : classes) {
    if (pts.size() < 2) continue;
    const Interval half = Interval::fromRational(BigRat(1, 2), bits);
    std::vector<Interval> xs, ys;
    Interval sx = Interval::fromInteger(0, bits), sy = sx;
    for (const auto* r : pts) {
      xs.push_back(log(Interval::fromInteger(r->heightSq, bits)) * half);
      ys.push_back(-log(r->psi));
      sx = sx + xs.back();
      sy = sy + ys.back();
    }
    const Interval count = Interval::fromInteger(static_cast<long>(pts.size()), bits);
    const Interval mx = sx / count, my = sy / count;
    Interval num = Interval::fromInteger(0, bits), den = num;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      num = num + (xs[i] - mx) * (ys[i] - my);
      den = den + (xs[i] - mx) * (xs[i] - mx);
    }
    if (den.containsZero()) continue;
    Interval slope = num / den;
    best = best ? max(*best, slope) : slope;
  }
  if (!best) throw ValidationError("exponentEstimate: degenerate, no residue class has two distinct heights");
  return *best;
}

BigInt empiricalHeightSqThreshold(const std::vector<ApproximationRecord>& records,
                                  const std::vector<LabeledSubspace>& family, const BigRat& floor) {
  BigInt h0 = 1;
  for (const auto& r : records) {
    if (!mayReach(r.score, floor)) continue;
    bool member = std::any_of(family.begin(), family.end(),
                              [&](const LabeledSubspace& f) { return f.subspace == r.subspace; });
    if (!member) h0 = std::max(h0, r.heightSq);
  }
  return h0;
}

}  // namespace dioph
