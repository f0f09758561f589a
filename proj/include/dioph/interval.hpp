// Outward-rounded real intervals on top of MPFR.
#pragma once

#include "dioph/scalar.hpp"

#include <mpfr.h>

#include <string>

namespace dioph {

// Owning wrapper around one mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 256);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  // Decimal scientific notation, rounded in the given direction.
  std::string toDecimal(mpfr_rnd_t rnd, int digits = 20) const;
  double toDouble() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

// Closed interval [lo, hi] with every operation rounded outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t bits = 256);

  static Interval fromRational(const BigRat& q, mpfr_prec_t bits);
  static Interval fromInteger(const BigInt& z, mpfr_prec_t bits);
  static Interval fromBounds(const BigRat& lo, const BigRat& hi, mpfr_prec_t bits);
  // Smallest interval containing both.
  static Interval hull(const Interval& a, const Interval& b);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  Real& lo() { return lo_; }
  Real& hi() { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  bool contains(const BigRat& q) const;
  bool containsZero() const;
  bool isPositive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool isNegative() const { return mpfr_sgn(hi_.get()) < 0; }
  // Width hi - lo rounded up.
  Real width() const;
  // Width divided by |lo| (or +inf when the interval touches zero).
  double relativeWidth() const;

  // Endpoints as decimal strings, rounded outward.
  std::string loString(int digits = 20) const { return lo_.toDecimal(MPFR_RNDD, digits); }
  std::string hiString(int digits = 20) const { return hi_.toDecimal(MPFR_RNDU, digits); }
  double midDouble() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

 private:
  Real lo_;
  Real hi_;
};

Interval sqrt(const Interval& x);
Interval log(const Interval& x);
Interval exp(const Interval& x);
// Clamps both endpoints into [a, b].
Interval clamp(const Interval& x, double a, double b);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);

// a < b for every point of a and b.
bool certainlyLess(const Interval& a, const Interval& b);

// Natural logarithm of a positive rational, to double accuracy (no overflow).
double approxLog(const BigRat& q);

// Exact rational value of a finite binary float.
BigRat exactValue(const Real& x);

}  // namespace dioph
