#include "dioph/polynomial.hpp"

#include <algorithm>

namespace dioph {

Polynomial::Polynomial(std::vector<BigRat> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRat Polynomial::operator()(const BigRat& x) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<BigRat> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * BigRat(static_cast<long>(i)));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (isZero()) return *this;
  std::vector<BigRat> c = coeffs_;
  BigRat lc = c.back();
  for (auto& x : c) x /= lc;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<BigRat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return Polynomial(std::move(c));
}

void divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient, Polynomial& remainder) {
  if (b.isZero()) throw std::domain_error("polynomial division by zero");
  std::vector<BigRat> r = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  std::vector<BigRat> q(std::max(0, a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    BigRat t = r[static_cast<std::size_t>(i)] / bc.back();
    if (t == 0) continue;
    q[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= t * bc[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(std::max(0, db)));
  quotient = Polynomial(std::move(q));
  remainder = Polynomial(std::move(r));
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.isZero()) {
    Polynomial q, r;
    divide(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Polynomial characteristicPolynomial(const RatMatrix& m) {
  const Eigen::Index t = m.rows();
  if (m.cols() != t) throw std::invalid_argument("characteristicPolynomial: matrix not square");
  // c[t] = 1, M_k = m M_{k-1} + c_{t-k+1} I, c_{t-k} = -tr(m M_k) / k.
  std::vector<BigRat> c(static_cast<std::size_t>(t) + 1);
  c[static_cast<std::size_t>(t)] = 1;
  RatMatrix mk = RatMatrix::Zero(t, t);
  for (Eigen::Index k = 1; k <= t; ++k) {
    RatMatrix next = m * mk;
    for (Eigen::Index i = 0; i < t; ++i) next(i, i) += c[static_cast<std::size_t>(t - k + 1)];
    mk = std::move(next);
    RatMatrix prod = m * mk;
    BigRat tr = 0;
    for (Eigen::Index i = 0; i < t; ++i) tr += prod(i, i);
    c[static_cast<std::size_t>(t - k)] = -tr / BigRat(static_cast<long>(k));
  }
  return Polynomial(std::move(c));
}

std::vector<SquareFreeFactor> squareFreeDecomposition(const Polynomial& p) {
  std::vector<SquareFreeFactor> out;
  if (p.degree() < 1) return out;
  Polynomial f = p.monic();
  Polynomial fp = f.derivative();
  Polynomial a0 = gcd(f, fp);
  Polynomial b, c, r;
  divide(f, a0, b, r);
  divide(fp, a0, c, r);
  Polynomial d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    Polynomial a = gcd(b, d);
    Polynomial nb, nc;
    divide(b, a, nb, r);
    divide(d, a, nc, r);
    if (a.degree() >= 1) out.push_back({a, i});
    b = std::move(nb);
    d = nc - b.derivative();
  }
  return out;
}

BigRat simplestRational(const BigRat& a, const BigRat& b) {
  if (a > b) return simplestRational(b, a);
  if (a <= 0 && b >= 0) return 0;
  if (b < 0) return -simplestRational(-b, -a);
  BigInt fl = floorOf(a);
  if (BigRat(fl) == a) return a;
  if (BigRat(fl + 1) <= b) return BigRat(fl + 1);
  BigRat inner = simplestRational(BigRat(1) / (b - BigRat(fl)), BigRat(1) / (a - BigRat(fl)));
  return BigRat(fl) + BigRat(1) / inner;
}

namespace {

// Square-free polynomial with integer coefficients, evaluated by sign only.
using IntPoly = std::vector<BigInt>;

IntPoly primitiveInteger(const Polynomial& p) {
  BigInt l = 1;
  for (const auto& c : p.coefficients()) l = lcm(l, denom(c));
  IntPoly out;
  for (const auto& c : p.coefficients()) out.push_back(numer(c) * (l / denom(c)));
  BigInt g = content(out);
  if (g > 1)
    for (auto& c : out) c /= g;
  return out;
}

int signAt(const IntPoly& p, const BigRat& x) {
  if (p.empty()) return 0;
  const BigInt num = numer(x);
  const BigInt den = denom(x);
  BigInt acc = p.back();
  BigInt dpow = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    dpow *= den;
    acc = acc * num + p[i] * dpow;
  }
  return acc.sign();
}

class SturmChain {
 public:
  explicit SturmChain(const Polynomial& squareFree) {
    Polynomial a = squareFree, b = squareFree.derivative();
    chain_.push_back(primitiveInteger(a));
    while (!b.isZero()) {
      chain_.push_back(primitiveInteger(b));
      Polynomial q, r;
      divide(a, b, q, r);
      a = std::move(b);
      b = Polynomial() - r;
    }
  }

  int variations(const BigRat& x) const {
    int count = 0, last = 0;
    for (const auto& p : chain_) {
      int s = signAt(p, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  // Number of distinct roots in (a, b].
  int count(const BigRat& a, const BigRat& b) const { return variations(a) - variations(b); }
  int signOf(const BigRat& x) const { return signAt(chain_.front(), x); }

 private:
  std::vector<IntPoly> chain_;
};

class Isolator {
 public:
  Isolator(const SturmChain& s, const BigRat& relWidth, std::vector<RootBracket>& out)
      : sturm_(s), rel_(relWidth), out_(out) {}

  // Handles every root in (a, b], where `n` is their number.
  void isolate(const BigRat& a, const BigRat& b, int n) {
    if (n == 0) return;
    if (n == 1) {
      refine(a, b);
      return;
    }
    BigRat split;
    BigRat top = b;
    if (a == 0) {
      top = gallopTop(b, n);
      split = top / 2;
    } else {
      split = (a + b) / 2;
    }
    int lower = sturm_.count(a, split);
    isolate(a, split, lower);
    isolate(split, top, n - lower);
  }

 private:
  // For (0, b] holding all n roots, returns the smallest b / 2^k still holding
  // all of them, so that (0, result/2] holds fewer.
  BigRat gallopTop(const BigRat& b, int n) {
    auto holdsAll = [&](unsigned long k) {
      return sturm_.count(0, b / BigRat(ipow(BigInt(2), k))) == n;
    };
    if (!holdsAll(1)) return b;
    unsigned long good = 1, step = 1, bad = 0;
    for (;;) {
      unsigned long probe = good + step;
      if (holdsAll(probe)) {
        good = probe;
        step *= 2;
      } else {
        bad = probe;
        break;
      }
    }
    while (bad - good > 1) {
      unsigned long mid = good + (bad - good) / 2;
      if (holdsAll(mid)) good = mid;
      else bad = mid;
    }
    return b / BigRat(ipow(BigInt(2), good));
  }

  void refine(BigRat a, BigRat b) {
    if (sturm_.signOf(b) == 0) {
      out_.push_back({b, b, true, 1});
      return;
    }
    if (a == 0) b = gallopTop(b, 1);
    if (a == 0 && sturm_.count(0, b / 2) == 0) a = b / 2;
    while (b - a > rel_ * a) {
      BigRat mid = (a + b) / 2;
      if (sturm_.signOf(mid) == 0) {
        out_.push_back({mid, mid, true, 1});
        return;
      }
      if (sturm_.count(a, mid) == 1) b = mid;
      else a = mid;
    }
    BigRat guess = simplestRational(a, b);
    if (sturm_.signOf(guess) == 0) {
      out_.push_back({guess, guess, true, 1});
      return;
    }
    out_.push_back({a, b, false, 1});
  }

  const SturmChain& sturm_;
  BigRat rel_;
  std::vector<RootBracket>& out_;
};

}  // namespace

std::vector<RootBracket> realRoots(const Polynomial& p, const BigRat& lo, const BigRat& hi,
                                   const BigRat& relWidth) {
  if (p.isZero()) throw std::invalid_argument("realRoots: zero polynomial");
  if (lo < 0) throw std::invalid_argument("realRoots: expects a non-negative search interval");
  std::vector<RootBracket> all;
  for (const auto& [factor, mult] : squareFreeDecomposition(p)) {
    SturmChain chain(factor);
    std::vector<RootBracket> found;
    if (chain.signOf(lo) == 0) found.push_back({lo, lo, true, 1});
    Isolator iso(chain, relWidth, found);
    iso.isolate(lo, hi, chain.count(lo, hi));
    for (auto& r : found) {
      r.multiplicity = mult;
      for (int i = 0; i < mult; ++i) all.push_back(r);
    }
  }
  std::sort(all.begin(), all.end(), [](const RootBracket& x, const RootBracket& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  return all;
}

}  // namespace dioph
