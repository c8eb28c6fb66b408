#pragma once

// Sparse commutative polynomials over an exact coefficient ring. Used with
// moment symbols x_k, y_k (IZ cumulants, free cumulants) and with normalized
// trace symbols of constant-matrix words (Haar word moments).

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hw/exact.hpp"

namespace hw {

inline bool coeff_is_zero(const BigRational& c) { return c == 0; }
inline bool coeff_is_zero(const RationalFunctionD& c) { return c.is_zero(); }
inline std::string coeff_to_string(const BigRational& c) { return to_string(c); }
inline std::string coeff_to_string(const RationalFunctionD& c) { return c.to_string(); }

/// Monomial in two families of moment symbols: x = sorted indices k of x_k, same for y.
struct XYMonomial {
  std::vector<int> x;
  std::vector<int> y;

  int factor_count() const { return static_cast<int>(x.size() + y.size()); }
  /// Ordered by number of factors, then lexicographically by (x, y).
  friend bool operator<(const XYMonomial& a, const XYMonomial& b) {
    if (a.factor_count() != b.factor_count()) return a.factor_count() < b.factor_count();
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
  friend bool operator==(const XYMonomial& a, const XYMonomial& b) { return a.x == b.x && a.y == b.y; }
  friend XYMonomial operator*(const XYMonomial& a, const XYMonomial& b);
  XYMonomial swapped() const { return {y, x}; }
  std::string to_string() const;  // "x2^2*y4", "1" for the empty monomial
};

/// Monomial in named symbols, kept as a sorted multiset.
struct SymbolMonomial {
  std::vector<std::string> factors;

  friend bool operator<(const SymbolMonomial& a, const SymbolMonomial& b) {
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
    return a.factors < b.factors;
  }
  friend bool operator==(const SymbolMonomial& a, const SymbolMonomial& b) { return a.factors == b.factors; }
  friend SymbolMonomial operator*(const SymbolMonomial& a, const SymbolMonomial& b);
  std::string to_string() const;  // "tr(A)*tr(AB)", "1" for the empty monomial
};

template <class Mono, class Coeff>
class Polynomial {
 public:
  using Terms = std::map<Mono, Coeff>;

  Polynomial() = default;
  Polynomial(long c) : Polynomial(Coeff(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(const Coeff& c) {                    // NOLINT(google-explicit-constructor)
    if (!coeff_is_zero(c)) terms_.emplace(Mono{}, c);
  }
  static Polynomial monomial(Mono m, Coeff c = Coeff(1L)) {
    Polynomial p;
    if (!coeff_is_zero(c)) p.terms_.emplace(std::move(m), std::move(c));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0L) : it->second;
  }
  Coeff constant_term() const { return coefficient(Mono{}); }

  void add_term(const Mono& m, const Coeff& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const Coeff& c) {
    if (coeff_is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend Polynomial operator*(Polynomial a, const Coeff& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Apply f to every coefficient, dropping the terms that become zero.
  template <class F>
  auto map_coefficients(F f) const {
    using Out = decltype(f(std::declval<const Coeff&>()));
    Polynomial<Mono, Out> r;
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  /// Replace every monomial by a polynomial (ring homomorphism on the symbols).
  template <class F>
  Polynomial substitute(F image_of_monomial) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r += image_of_monomial(m) * c;
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      std::string cs = coeff_to_string(c);
      const std::string ms = m.to_string();
      // A leading minus is pulled out unless it belongs to the first of several terms.
      int depth = 0;
      bool compound = false;
      for (char ch : cs) {
        depth += ch == '(' ? 1 : ch == ')' ? -1 : 0;
        compound = compound || (ch == ' ' && depth == 0);
      }
      const bool neg = cs[0] == '-' && !compound;
      if (neg) cs.erase(0, 1);
      if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
      std::string t = ms == "1" ? cs : cs == "1" ? ms : cs + "*" + ms;
      if (s.empty()) s = neg ? "-" + t : t;
      else s += (neg ? " - " : " + ") + t;
    }
    return s;
  }

 private:
  Terms terms_;
};

/// Polynomial in x_k, y_k with rational coefficients.
using MomentPolynomial = Polynomial<XYMonomial, BigRational>;
/// Polynomial in x_k, y_k whose coefficients are rational functions of d.
using MomentRatfunPolynomial = Polynomial<XYMonomial, RationalFunctionD>;
/// Polynomial in normalized trace symbols with rational-function coefficients.
using TracePolynomial = Polynomial<SymbolMonomial, RationalFunctionD>;

MomentPolynomial x_symbol(int k);
MomentPolynomial y_symbol(int k);
/// Multiset given as indices, e.g. x_product({2,2}) = x_2^2.
XYMonomial xy_monomial(std::vector<int> x, std::vector<int> y);

/// Set x_1 = y_1 = 0.
MomentPolynomial centered(const MomentPolynomial& p);
/// Exchange the roles of x and y.
MomentPolynomial swap_xy(const MomentPolynomial& p);
/// {"terms":[{"coeff":"1","x":[2],"y":[2]}, ...]} in canonical term order.
nlohmann::json to_json(const MomentPolynomial& p);
MomentPolynomial moment_polynomial_from_json(const nlohmann::json& j);
/// Parses "x4*y4 + 3*x2^2*y2^2 - 2*x2^2*y4". Throws ParseError.
MomentPolynomial parse_moment_polynomial(const std::string& text);

}  // namespace hw
