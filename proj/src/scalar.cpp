#include "dioph/scalar.hpp"

#include <gmp.h>

#include <cctype>

namespace dioph {

BigInt floorDiv(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("floorDiv: division by zero");
  BigInt q, r;
  mpz_fdiv_qr(q.backend().data(), r.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

BigInt floorOf(const BigRat& q) { return floorDiv(numer(q), denom(q)); }

BigInt ceilOf(const BigRat& q) { return -floorDiv(-numer(q), denom(q)); }

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.backend().data(), base.backend().data(), exponent);
  return r;
}

BigRat rpow(const BigRat& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("rpow: zero to a negative power");
    return rpow(BigRat(1) / base, -exponent);
  }
  auto e = static_cast<unsigned long>(exponent);
  return BigRat(ipow(numer(base), e), ipow(denom(base), e));
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.backend().data(), a.backend().data(), b.backend().data());
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.backend().data(), a.backend().data(), b.backend().data());
  return r;
}

void extendedGcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(), a.backend().data(),
             b.backend().data());
}

BigInt content(const IntVector& v) {
  BigInt g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    g = gcd(g, v[i]);
    if (g == 1) break;
  }
  return g;
}

BigInt content(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) {
    g = gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool allDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

BigInt parseInteger(std::string_view text) {
  auto s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!allDigits(s)) throw ValidationError("not an integer: '" + std::string(text) + "'");
  BigInt r{std::string(s)};
  return negative ? BigInt(-r) : r;
}

BigRat parseRational(std::string_view text) {
  auto s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt p = parseInteger(s.substr(0, slash));
    BigInt q = parseInteger(s.substr(slash + 1));
    if (q == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return BigRat(p, q);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((!whole.empty() && !allDigits(whole)) || !allDigits(frac))
      throw ValidationError("not a number: '" + std::string(text) + "'");
    BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
    BigInt f{std::string(frac)};
    BigInt scale = ipow(BigInt(10), frac.size());
    BigRat r(w * scale + f, scale);
    return negative ? BigRat(-r) : r;
  }
  return BigRat(parseInteger(s));
}

std::string toString(const BigInt& x) { return x.str(); }

std::string toString(const BigRat& q) {
  if (denom(q) == 1) return numer(q).str();
  return numer(q).str() + "/" + denom(q).str();
}

std::vector<IntVector> parseIntRows(std::string_view text) {
  std::vector<IntVector> rows;
  for (auto row : split(text, ';')) {
    if (trim(row).empty()) continue;
    auto entries = split(row, ',');
    IntVector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v[static_cast<Eigen::Index>(i)] = parseInteger(entries[i]);
    rows.push_back(std::move(v));
  }
  if (rows.empty()) throw ValidationError("empty vector list");
  return rows;
}

std::vector<RatVector> parseRatRows(std::string_view text) {
  std::vector<RatVector> rows;
  for (auto row : split(text, ';')) {
    if (trim(row).empty()) continue;
    auto entries = split(row, ',');
    RatVector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v[static_cast<Eigen::Index>(i)] = parseRational(entries[i]);
    rows.push_back(std::move(v));
  }
  if (rows.empty()) throw ValidationError("empty vector list");
  return rows;
}

namespace {
template <class Vec>
Matrix<typename Vec::Scalar> stackColumns(const std::vector<Vec>& vs) {
  if (vs.empty()) return {};
  const auto n = vs.front().size();
  Matrix<typename Vec::Scalar> m(n, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (vs[j].size() != n) throw ValidationError("vectors of different dimensions");
    m.col(static_cast<Eigen::Index>(j)) = vs[j];
  }
  return m;
}
}  // namespace

IntMatrix columns(const std::vector<IntVector>& vs) { return stackColumns(vs); }
RatMatrix columns(const std::vector<RatVector>& vs) { return stackColumns(vs); }

RatMatrix toRational(const IntMatrix& m) { return m.cast<BigRat>(); }
RatVector toRational(const IntVector& v) { return v.cast<BigRat>(); }

IntVector clearDenominators(const RatVector& v) {
  BigInt l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, denom(v[i]));
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = numer(v[i]) * (l / denom(v[i]));
  return out;
}

bool isProbablePrime(const BigInt& p) {
  return mpz_probab_prime_p(p.backend().data(), 40) > 0;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace dioph
