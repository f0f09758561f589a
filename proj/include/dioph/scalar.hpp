// Exact scalars and dense Eigen aliases used across the library.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using BigRat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                             boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;
using RatMatrix = Matrix<BigRat>;
using RatVector = Vector<BigRat>;

// Input that violates a documented precondition or hypothesis.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certified comparison or root bracket could not be resolved within the
// configured precision budget.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt numer(const BigRat& q) { return boost::multiprecision::numerator(q); }
inline BigInt denom(const BigRat& q) { return boost::multiprecision::denominator(q); }

BigInt floorDiv(const BigInt& a, const BigInt& b);
BigInt floorOf(const BigRat& q);
BigInt ceilOf(const BigRat& q);
BigInt ipow(const BigInt& base, unsigned long exponent);
BigRat rpow(const BigRat& base, long exponent);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

// g = s*a + t*b with g = gcd(a, b) >= 0.
void extendedGcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t);

// gcd of all entries (0 for the zero vector).
BigInt content(const IntVector& v);
BigInt content(const std::vector<BigInt>& v);

// Parses "p", "-p", "p/q" or a finite decimal such as "1.25" exactly.
BigRat parseRational(std::string_view text);
BigInt parseInteger(std::string_view text);

std::string toString(const BigInt& x);
// "p/q", or "p" when the denominator is 1.
std::string toString(const BigRat& q);

// Rows separated by ';', entries by ','. Each row becomes one vector.
std::vector<IntVector> parseIntRows(std::string_view text);
std::vector<RatVector> parseRatRows(std::string_view text);

// Stacks vectors as the columns of a matrix.
IntMatrix columns(const std::vector<IntVector>& vs);
RatMatrix columns(const std::vector<RatVector>& vs);

RatMatrix toRational(const IntMatrix& m);
RatVector toRational(const IntVector& v);

// Multiplies a rational vector by the lcm of its denominators.
IntVector clearDenominators(const RatVector& v);

bool isProbablePrime(const BigInt& p);

// Mixes a 64-bit state; used for every seeded choice in the library.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dioph
