#include "dioph/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dioph {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept : Real(other.precision()) { mpfr_swap(value_, other.value_); }

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::toDecimal(mpfr_rnd_t rnd, int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), value_, rnd);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exponent) - 1);
  return out;
}

Interval::Interval(mpfr_prec_t bits) : lo_(bits), hi_(bits) {}

Interval Interval::fromRational(const BigRat& q, mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_set_q(r.lo_.get(), q.backend().data(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.backend().data(), MPFR_RNDU);
  return r;
}

Interval Interval::fromInteger(const BigInt& z, mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_set_z(r.lo_.get(), z.backend().data(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), z.backend().data(), MPFR_RNDU);
  return r;
}

Interval Interval::fromBounds(const BigRat& lo, const BigRat& hi, mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_set_q(r.lo_.get(), lo.backend().data(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), hi.backend().data(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

bool Interval::contains(const BigRat& q) const {
  return mpfr_cmp_q(lo_.get(), q.backend().data()) <= 0 && mpfr_cmp_q(hi_.get(), q.backend().data()) >= 0;
}

bool Interval::containsZero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

Real Interval::width() const {
  Real w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

double Interval::relativeWidth() const {
  if (containsZero()) return std::numeric_limits<double>::infinity();
  Real w = width();
  Real a(precision());
  mpfr_abs(a.get(), lo_.get(), MPFR_RNDD);
  if (mpfr_cmp_abs(hi_.get(), lo_.get()) < 0) mpfr_abs(a.get(), hi_.get(), MPFR_RNDD);
  mpfr_div(w.get(), w.get(), a.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

double Interval::midDouble() const {
  Real m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.toDouble();
}

static mpfr_prec_t precOf(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(precOf(a, b));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(precOf(a, b));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.precision());
  mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = precOf(a, b);
  Interval r(p);
  Real t(p);
  mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  mpfr_set_inf(r.lo_.get(), 1);
  mpfr_set_inf(r.hi_.get(), -1);
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.containsZero()) throw std::domain_error("interval division by an interval containing 0");
  const mpfr_prec_t p = precOf(a, b);
  Interval r(p);
  Real t(p);
  mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  mpfr_set_inf(r.lo_.get(), 1);
  mpfr_set_inf(r.hi_.get(), -1);
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
    }
  }
  return r;
}

Interval sqrt(const Interval& x) {
  if (x.isNegative()) throw std::domain_error("sqrt of a negative interval");
  Interval r(x.precision());
  if (mpfr_sgn(x.lo().get()) <= 0)
    mpfr_set_zero(r.lo().get(), 1);
  else
    mpfr_sqrt(r.lo().get(), x.lo().get(), MPFR_RNDD);
  mpfr_sqrt(r.hi().get(), x.hi().get(), MPFR_RNDU);
  return r;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo().get()) <= 0) throw std::domain_error("log of an interval touching 0");
  Interval r(x.precision());
  mpfr_log(r.lo().get(), x.lo().get(), MPFR_RNDD);
  mpfr_log(r.hi().get(), x.hi().get(), MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.precision());
  mpfr_exp(r.lo().get(), x.lo().get(), MPFR_RNDD);
  mpfr_exp(r.hi().get(), x.hi().get(), MPFR_RNDU);
  return r;
}

Interval clamp(const Interval& x, double a, double b) {
  Interval r = x;
  if (mpfr_cmp_d(r.lo().get(), a) < 0) mpfr_set_d(r.lo().get(), a, MPFR_RNDD);
  if (mpfr_cmp_d(r.hi().get(), b) > 0) mpfr_set_d(r.hi().get(), b, MPFR_RNDU);
  if (mpfr_cmp_d(r.lo().get(), b) > 0) mpfr_set_d(r.lo().get(), b, MPFR_RNDD);
  if (mpfr_cmp_d(r.hi().get(), a) < 0) mpfr_set_d(r.hi().get(), a, MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(precOf(a, b));
  mpfr_max(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_max(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

Interval min(const Interval& a, const Interval& b) {
  Interval r(precOf(a, b));
  mpfr_min(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_min(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

bool certainlyLess(const Interval& a, const Interval& b) {
  return mpfr_less_p(a.hi().get(), b.lo().get()) != 0;
}

double approxLog(const BigRat& q) {
  if (q <= 0) throw std::domain_error("approxLog: non-positive argument");
  Real x(64);
  mpfr_set_q(x.get(), q.backend().data(), MPFR_RNDN);
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  return x.toDouble();
}

BigRat exactValue(const Real& x) {
  if (!mpfr_number_p(x.get())) throw std::domain_error("exactValue: non-finite value");
  BigRat q;
  mpfr_get_q(q.backend().data(), x.get());
  return q;
}

}  // namespace dioph
