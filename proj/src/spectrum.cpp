#include "dioph/spectrum.hpp"

#include "dioph/exactlin.hpp"
#include "dioph/exponents.hpp"

#include <algorithm>
#include <map>

namespace dioph {

std::set<VarIndex> chi(int e, int k, int d, int m) {
  const int n = d * (m + 1);
  if (k < 1 + gFunc(d, e, n) || k > std::min(d, e)) throw ValidationError("chi: (e, k) outside V_{d,n}");
  if (e >= k * (m + 1)) throw ValidationError("chi: requires e < k(m+1)");
  const int v = e / k, u = e % k, f = fFunc(e, m * k);
  std::set<VarIndex> out;
  for (int q = 1 + f + d - k; q <= u + d - k; ++q)
    for (int l = 1; l <= std::min(v + 1, m); ++l) out.insert({q, l});
  for (int q = u + 1 + d - k; q <= d; ++q)
    for (int l = 1; l <= std::min(v, m); ++l) out.insert({q, l});
  return out;
}

OmegaPolynomial omegaPolynomial(int e, int k, int d, int m) {
  const int n = d * (m + 1);
  if (k < 1 + gFunc(d, e, n) || k > std::min(d, e)) throw ValidationError("omega: (e, k) outside V_{d,n}");
  if (e >= k * (m + 1)) throw ValidationError("omega: requires e < k(m+1)");
  const auto v = vQ(e, k);
  const int f = fFunc(e, m * k);
  OmegaPolynomial p;
  for (int q = 1 + f; q <= k; ++q) {
    Monomial mono;
    for (int l = 1; l <= v[static_cast<std::size_t>(q - 1)]; ++l) mono.vars.push_back({q + d - k, l});
    p.push_back(std::move(mono));
  }
  return p;
}

BigRat evaluate(const OmegaPolynomial& p, const BetaMatrix& beta) {
  BigRat total = 0;
  for (const auto& mono : p) {
    BigRat term = mono.coefficient;
    for (const auto& [q, l] : mono.vars)
      term *= beta[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(l - 1)];
    total += term;
  }
  return total;
}

OmegaPolynomial differentiate(const OmegaPolynomial& p, const VarIndex& var) {
  OmegaPolynomial out;
  for (const auto& mono : p) {
    auto it = std::find(mono.vars.begin(), mono.vars.end(), var);
    if (it == mono.vars.end()) continue;
    Monomial d = mono;
    d.vars.erase(d.vars.begin() + (it - mono.vars.begin()));
    out.push_back(std::move(d));
  }
  return out;
}

std::set<VarIndex> support(const OmegaPolynomial& p) {
  std::set<VarIndex> out;
  for (const auto& mono : p)
    if (mono.coefficient != 0) out.insert(mono.vars.begin(), mono.vars.end());
  return out;
}

SpectrumTarget makeTarget(int n, int d, std::vector<std::pair<int, int>> U) {
  if (d < 1 || d >= n || n % d != 0) throw ValidationError("spectrum target needs d | n and 1 <= d < n");
  SpectrumTarget t{n, d, n / d - 1, std::move(U)};
  if (t.m < 1) throw ValidationError("spectrum target needs m >= 1");
  if (static_cast<int>(t.U.size()) > t.d * t.m) throw ValidationError("#U exceeds dm");
  for (const auto& [e, k] : t.U) {
    if (e < 1 || e > n - 1) throw ValidationError("e out of range in U");
    if (k < 1 + gFunc(d, e, n) || k > std::min(d, e))
      throw ValidationError("(" + std::to_string(e) + "," + std::to_string(k) + ") is not in V_{d,n}");
    if (e >= k * (t.m + 1))
      throw ValidationError("(" + std::to_string(e) + "," + std::to_string(k) + ") violates e < k(m+1)");
  }
  return t;
}

FamilyKind parseFamily(const std::string& text) {
  if (text == "min-angle") return FamilyKind::MinAngle;
  if (text == "last-angle-d") return FamilyKind::LastAngleD;
  if (text == "custom") return FamilyKind::Custom;
  throw ValidationError("unknown family '" + text + "'");
}

SpectrumTarget uFamily(FamilyKind kind, int n, int d, std::vector<std::pair<int, int>> custom) {
  if (d < 1 || d >= n || n % d != 0) throw ValidationError("family needs d | n and 1 <= d < n");
  std::vector<std::pair<int, int>> U;
  switch (kind) {
    case FamilyKind::MinAngle:
      for (int e = 1; e <= n - d; ++e) U.push_back({e, std::min(d, e)});
      break;
    case FamilyKind::LastAngleD:
      for (int e = d; e <= n - 1; ++e) U.push_back({e, d});
      break;
    case FamilyKind::Custom:
      U = std::move(custom);
      break;
  }
  return makeTarget(n, d, std::move(U));
}

namespace {

void checkBeta(const SpectrumTarget& t, const BetaMatrix& beta) {
  if (static_cast<int>(beta.size()) != t.d) throw ValidationError("beta needs d rows");
  for (const auto& row : beta) {
    if (static_cast<int>(row.size()) != t.m) throw ValidationError("beta rows need m entries");
    for (const auto& b : row)
      if (b <= 0) throw ValidationError("beta entries must be positive");
  }
}

Eigen::Index column(const SpectrumTarget& t, const VarIndex& v) { return (v.first - 1) * t.m + (v.second - 1); }

}  // namespace

RatVector omegaEval(const SpectrumTarget& t, const BetaMatrix& beta) {
  checkBeta(t, beta);
  RatVector out(static_cast<Eigen::Index>(t.U.size()));
  for (std::size_t i = 0; i < t.U.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = evaluate(omegaPolynomial(t.U[i].first, t.U[i].second, t.d, t.m), beta);
  return out;
}

RatMatrix omegaJacobian(const SpectrumTarget& t, const BetaMatrix& beta) {
  checkBeta(t, beta);
  RatMatrix jac = RatMatrix::Zero(static_cast<Eigen::Index>(t.U.size()), t.d * t.m);
  for (std::size_t i = 0; i < t.U.size(); ++i) {
    const auto [e, k] = t.U[i];
    const auto v = vQ(e, k);
    for (const auto& [q, l] : chi(e, k, t.d, t.m)) {
      // prod over p != l, p <= v_{q+k-d}, of beta_{q,p}.
      BigRat partial = 1;
      for (int p = 1; p <= v[static_cast<std::size_t>(q + k - t.d - 1)]; ++p)
        if (p != l) partial *= beta[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(p - 1)];
      jac(static_cast<Eigen::Index>(i), column(t, {q, l})) = partial;
    }
  }
  return jac;
}

RatMatrix omegaJacobianSymbolic(const SpectrumTarget& t, const BetaMatrix& beta) {
  checkBeta(t, beta);
  RatMatrix jac = RatMatrix::Zero(static_cast<Eigen::Index>(t.U.size()), t.d * t.m);
  for (std::size_t i = 0; i < t.U.size(); ++i) {
    auto p = omegaPolynomial(t.U[i].first, t.U[i].second, t.d, t.m);
    for (int q = 1; q <= t.d; ++q)
      for (int l = 1; l <= t.m; ++l)
        jac(static_cast<Eigen::Index>(i), column(t, {q, l})) = evaluate(differentiate(p, {q, l}), beta);
  }
  return jac;
}

TriangularWitness triangularOrdering(const SpectrumTarget& t) {
  TriangularWitness w;
  std::vector<std::set<VarIndex>> sets;
  for (const auto& [e, k] : t.U) sets.push_back(chi(e, k, t.d, t.m));
  std::vector<int> remaining(t.U.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);
  std::vector<int> reversed;
  std::vector<VarIndex> reversedFresh;
  while (!remaining.empty()) {
    bool moved = false;
    // Latest candidate first keeps the order close to the input order.
    for (auto it = remaining.rbegin(); it != remaining.rend() && !moved; ++it) {
      std::set<VarIndex> others;
      for (int r : remaining)
        if (r != *it) others.insert(sets[static_cast<std::size_t>(r)].begin(), sets[static_cast<std::size_t>(r)].end());
      for (const auto& var : sets[static_cast<std::size_t>(*it)]) {
        if (others.count(var) == 0) {
          reversed.push_back(*it);
          reversedFresh.push_back(var);
          remaining.erase(std::next(it).base());
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      w.diagnostic = "no remaining pair owns a private chi index; stuck with " + std::to_string(remaining.size()) +
                     " pairs left";
      return w;
    }
  }
  w.found = true;
  w.order.assign(reversed.rbegin(), reversed.rend());
  w.fresh.assign(reversedFresh.rbegin(), reversedFresh.rend());
  return w;
}

std::string toString(CertificateLevel level) {
  switch (level) {
    case CertificateLevel::Triangular: return "triangular";
    case CertificateLevel::GenericRank: return "genericRank";
    case CertificateLevel::Unknown: return "unknown";
  }
  return "unknown";
}

BetaMatrix distinctPrimeBeta(int d, int m, std::uint64_t seed) {
  static const std::vector<int> primes = [] {
    std::vector<int> out;
    std::vector<bool> composite(2000, false);
    for (int p = 2; p < 2000; ++p) {
      if (composite[static_cast<std::size_t>(p)]) continue;
      out.push_back(p);
      for (int q = p * p; q < 2000; q += p) composite[static_cast<std::size_t>(q)] = true;
    }
    return out;
  }();
  const std::size_t need = static_cast<std::size_t>(d * m);
  if (need > primes.size()) throw ValidationError("too many beta entries for the prime pool");
  std::vector<int> pool = primes;
  std::uint64_t state = seed;
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < need; ++i) {
    state = splitmix64(state);
    std::size_t j = i + static_cast<std::size_t>(state % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  BetaMatrix beta(static_cast<std::size_t>(d));
  for (int q = 0; q < d; ++q)
    for (int l = 0; l < m; ++l) beta[static_cast<std::size_t>(q)].push_back(BigRat(pool[static_cast<std::size_t>(q * m + l)]));
  return beta;
}

RankCertificate rankCertify(const SpectrumTarget& t, int trials, std::uint64_t seed) {
  RankCertificate cert;
  cert.triangular = triangularOrdering(t);
  cert.trials = trials;
  const int target = static_cast<int>(t.U.size());
  for (int i = 0; i < trials; ++i) {
    BetaMatrix beta = distinctPrimeBeta(t.d, t.m, splitmix64(seed + static_cast<std::uint64_t>(i)));
    if (rank(omegaJacobian(t, beta)) == target) {
      if (cert.fullRankTrials == 0) cert.witnessBeta = beta;
      ++cert.fullRankTrials;
    }
  }
  if (cert.fullRankTrials > 0)
    cert.level = cert.triangular.found ? CertificateLevel::Triangular : CertificateLevel::GenericRank;
  if (cert.fullRankTrials == 0)
    cert.diagnostic = "Jacobian rank below #U = " + std::to_string(target) + " at every trial";
  if (!cert.triangular.found) {
    if (!cert.diagnostic.empty()) cert.diagnostic += "; ";
    cert.diagnostic += cert.triangular.diagnostic;
  }
  return cert;
}

}  // namespace dioph
