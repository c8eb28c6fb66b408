#pragma once

// Expectations of polynomial functions of Haar unitaries: single monomial
// integrals, and normalized trace words in several independent unitaries and
// constant matrices, evaluated symbolically (trace symbols of the constants,
// rational functions of d) or exactly at a concrete dimension.

#include <map>
#include <string>
#include <vector>

#include "hw/exact.hpp"
#include "hw/permutation.hpp"
#include "hw/polynomial.hpp"

namespace hw {

/// Indices are 1-based. The integral of U_{i1 j1}...U_{iq jq} conj(U_{i'1 j'1})...conj(U_{i'q' j'q'}).
struct MonomialSpec {
  std::vector<int> i, j;
  std::vector<int> ip, jp;
  long d = 1;
};

/// Zero when q != q'. Requires d >= q (StableRangeError) and indices in 1..d.
BigRational monomial_integral(const MonomialSpec& spec);

struct Letter {
  enum class Kind { unitary, constant };
  Kind kind = Kind::constant;
  std::string name;
  int exponent = 1;       // unitaries: +1 for U, -1 for U*
  bool adjoint = false;   // constants: W*
  bool centered = false;  // constants: W~ = W - tr(W) I

  std::string to_string() const;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Letters and a trace pattern alpha on letter positions; each cycle of alpha is one
/// normalized trace, read cyclically.
class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters, Permutation alpha);

  /// "U1 V1 U1* V1*", "U^2 V^2 U*^2 V*^2", "W~ U W~ U*", "(U A U*) (U B U*)".
  /// Tokens matching [UV][0-9]* are unitaries, other identifiers are constants.
  static Word parse(const std::string& text);

  const std::vector<Letter>& letters() const { return letters_; }
  const Permutation& alpha() const { return alpha_; }
  /// Letters of each trace, every cycle starting at its smallest position.
  std::vector<std::vector<Letter>> traces() const;
  /// Every unitary occurs as often with exponent +1 as with -1.
  bool balanced() const;
  bool has_constants() const;
  /// Product of the traces of both words: letters concatenated, patterns side by side.
  friend Word operator*(const Word& a, const Word& b);

  std::string to_string() const;

 private:
  std::vector<Letter> letters_;
  Permutation alpha_;
};

/// Square matrix with exact rational entries.
struct RationalMatrix {
  long n = 0;
  std::vector<BigRational> a;  // row-major

  static RationalMatrix identity(long n);
  static RationalMatrix diagonal(const std::vector<BigRational>& diag);
  BigRational& operator()(long r, long c) { return a[static_cast<std::size_t>(r * n + c)]; }
  const BigRational& operator()(long r, long c) const { return a[static_cast<std::size_t>(r * n + c)]; }
  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y);
  RationalMatrix transpose() const;
  /// Normalized trace (1/n) Tr.
  BigRational trace() const;
};

using ConstantMatrices = std::map<std::string, RationalMatrix>;

/// prod over cycles of alpha of the normalized trace of the cyclic product.
/// Throws DegreeMismatchError on size mismatch.
BigRational bracket_eval(const std::vector<RationalMatrix>& matrices, const Permutation& alpha);

struct WordResult {
  bool vanishes = false;  // unbalanced exponents: zero by invariance
  TracePolynomial value;  // polynomial in trace symbols "tr(A B)" over rational functions of d
};

/// Symbolic evaluation: the constants stay abstract trace symbols.
WordResult word_expectation(const Word& w);
/// The word must have no constants; returns its expectation as a function of d.
RationalFunctionD word_expectation_ratfun(const Word& w);
/// Exact value at dimension d with concrete constants (all of size d). Below the
/// stable range the restricted Weingarten sum is used, so every d >= 1 is valid.
BigRational word_expectation_at(const Word& w, const ConstantMatrices& constants, long d);

/// E(w1 w2) - E(w1) E(w2), symbolically.
TracePolynomial exact_covariance(const Word& w1, const Word& w2);

/// Expectation of an alternating word of centered letters; the freeness relation at
/// this word holds when every coefficient has degree <= -1.
TracePolynomial freeness_defect(const Word& w);

/// Largest degree in d among the coefficients (INT_MIN for zero).
int max_degree(const TracePolynomial& p);
/// Substitute concrete matrices for the trace symbols of a symbolic result.
BigRational evaluate_trace_polynomial(const TracePolynomial& p, const ConstantMatrices& constants, long d);

}  // namespace hw
