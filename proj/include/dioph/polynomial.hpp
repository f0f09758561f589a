// Univariate polynomials over Q and certified real-root isolation.
#pragma once

#include "dioph/scalar.hpp"

#include <vector>

namespace dioph {

class Polynomial {
 public:
  Polynomial() = default;
  // Coefficients in ascending degree order; trailing zeros are dropped.
  explicit Polynomial(std::vector<BigRat> ascending);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool isZero() const { return coeffs_.empty(); }
  const std::vector<BigRat>& coefficients() const { return coeffs_; }
  const BigRat& leading() const { return coeffs_.back(); }

  BigRat operator()(const BigRat& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<BigRat> coeffs_;
};

// Quotient and remainder of a by b (b nonzero).
void divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient, Polynomial& remainder);
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// det(x I - m) via the Faddeev-LeVerrier recurrence, exact over Q.
Polynomial characteristicPolynomial(const RatMatrix& m);

struct SquareFreeFactor {
  Polynomial factor;
  int multiplicity;
};
// Yun's algorithm: p = lc * prod factor_i^multiplicity_i, factors square-free and coprime.
std::vector<SquareFreeFactor> squareFreeDecomposition(const Polynomial& p);

struct RootBracket {
  BigRat lo;
  BigRat hi;
  bool exact = false;  // lo == hi is the root itself
  int multiplicity = 1;
};

// All real roots in [lo, hi], ascending and listed once per multiplicity.
// Each bracket is refined until (hi - lo) <= relWidth * lo, or until it is
// exact; roots at 0 are always detected exactly.
std::vector<RootBracket> realRoots(const Polynomial& p, const BigRat& lo, const BigRat& hi,
                                   const BigRat& relWidth);

// Simplest rational (smallest denominator) in the closed interval [a, b], a <= b.
BigRat simplestRational(const BigRat& a, const BigRat& b);

}  // namespace dioph
