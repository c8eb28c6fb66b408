#pragma once

// Exact arithmetic: GMP-backed big rationals, dense integer polynomials in the
// symbol d, reduced rational functions of d and their expansion at d = infinity.

#include <gmpxx.h>

#include <climits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hw {

using BigInt = mpz_class;
using BigRational = mpq_class;

std::string to_string(const BigInt& v);
std::string to_string(const BigRational& v);
/// n/d in lowest terms.
inline BigRational ratio(const BigInt& n, const BigInt& d) {
  BigRational r(n, d);
  r.canonicalize();
  return r;
}
/// Accepts "p", "-p", "p/q" (q != 0). Throws ParseError.
BigRational parse_rational(const std::string& text);

/// Dense integer polynomial in d, ascending powers, no trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(long c);  // NOLINT(google-explicit-constructor)

  static IntPoly monomial(const BigInt& c, int power);
  /// Product of (d - r) over the given roots.
  static IntPoly from_roots(const std::vector<long>& roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(int power) const;
  const BigInt& leading() const { return coeffs_.back(); }
  /// Lowest power with a nonzero coefficient; -1 for the zero polynomial.
  int valuation() const;
  /// gcd of the coefficients, non-negative.
  BigInt content() const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& c);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Exact coefficient-wise division by an integer that divides the content.
  IntPoly divexact(const BigInt& c) const;
  IntPoly shifted(int k) const;  // multiply by d^k, k >= 0
  IntPoly reflected() const;     // p(-d)

  BigInt evaluate(const BigInt& d) const;
  BigRational evaluate(const BigRational& d) const;
  double evaluate(double d) const;

  std::string to_string(const char* var = "d") const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Greatest common divisor up to sign and content: primitive, positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
/// a / b where b divides a in Z[x] and the quotient is integral.
IntPoly divexact(const IntPoly& a, const IntPoly& b);

/// num/den in lowest terms: no common polynomial factor, the combined content of
/// num and den is 1, den has positive leading coefficient. Equality is structural.
class RationalFunctionD {
 public:
  RationalFunctionD() : den_(1) {}
  RationalFunctionD(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunctionD(const BigRational& c);          // NOLINT(google-explicit-constructor)
  RationalFunctionD(IntPoly num, IntPoly den);

  /// d^k for any integer k.
  static RationalFunctionD d_power(int k);

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// deg(num) - deg(den); INT_MIN for the zero function.
  int degree() const;
  /// Order at d = infinity of f(d) * d^k is degree() + k; true when f(-d) = f(d).
  bool is_even() const;
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  RationalFunctionD operator-() const;
  RationalFunctionD& operator+=(const RationalFunctionD& o);
  RationalFunctionD& operator-=(const RationalFunctionD& o);
  RationalFunctionD& operator*=(const RationalFunctionD& o);
  RationalFunctionD& operator/=(const RationalFunctionD& o);
  friend RationalFunctionD operator+(RationalFunctionD a, const RationalFunctionD& b) { return a += b; }
  friend RationalFunctionD operator-(RationalFunctionD a, const RationalFunctionD& b) { return a -= b; }
  friend RationalFunctionD operator*(RationalFunctionD a, const RationalFunctionD& b) { return a *= b; }
  friend RationalFunctionD operator/(RationalFunctionD a, const RationalFunctionD& b) { return a /= b; }
  friend bool operator==(const RationalFunctionD& a, const RationalFunctionD& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Exact value at an integer point. Throws PoleError when the denominator vanishes.
  BigRational evaluate(const BigInt& d) const;
  double evaluate(double d) const;

  /// "d^-2", "2*d^-2 - d^-4", or "(3*d^2 - 4)/(d^4 - d^2)".
  std::string to_string() const;
  nlohmann::json to_json() const;
  static RationalFunctionD from_json(const nlohmann::json& j);

 private:
  void canonicalize();
  IntPoly num_;
  IntPoly den_;
};

/// Truncated expansion sum_k coefficient(k) d^-k, k = leading_exponent .. truncation_order.
struct LaurentSeries {
  int leading_exponent = 0;
  std::vector<BigRational> coefficients;
  int truncation_order = 0;

  /// Coefficient of d^-k; zero outside the stored range.
  BigRational coefficient(int k) const;
  /// Sum of the stored terms at a numeric point.
  double evaluate(double d) const;
};

/// Expansion of f at d = infinity through d^-order. f must have degree <= 0.
LaurentSeries laurent_expand(const RationalFunctionD& f, int order);

}  // namespace hw
