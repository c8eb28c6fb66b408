#pragma once

// Cumulants of the Itzykson-Zuber integral. With A = X U Y U* and S = d^2 tr(A),
// C_q is the q-th classical cumulant of S, so that log E exp(zS) = sum_q C_q z^q / q!.
// Moments tr(X^k), tr(Y^k) are the symbols x_k, y_k.

#include <complex>
#include <vector>

#include "hw/exact.hpp"
#include "hw/permutation.hpp"
#include "hw/polynomial.hpp"

namespace hw {

/// <X>_sigma = prod over cycles of x_{length}; the y-family for Y.
XYMonomial x_moments(const Permutation& sigma);
XYMonomial y_moments(const Permutation& tau);

/// |tau| + |sigma| + |tau sigma^{-1}| == 2q - 2 C(Pi_tau v Pi_sigma).
bool genus_condition(const Permutation& sigma, const Permutation& tau);

/// E((tr A)^q) = sum d^{q-|sigma|-|tau|} <X>_sigma <Y>_tau Wg(tau sigma^{-1}), valid for d >= q.
/// Cost guard q <= 7.
MomentRatfunPolynomial iz_moment_exact(int q, int threads = 1);
/// The same at a concrete d >= 1 (restricted Weingarten sum below the stable range).
MomentPolynomial iz_moment_at(int q, long d, int threads = 1);

/// d^{-2} C_q as sum d^{3q-2-|sigma|-|tau|} <X>_sigma <Y>_tau C_{Pi_sigma v Pi_tau, 1_q}(tau sigma^{-1}).
/// Every coefficient has degree <= 0. Cost guard q <= 7.
MomentRatfunPolynomial iz_cumulant_exact(int q, int threads = 1);

/// Constant Laurent term of every coefficient. Throws DomainError if a coefficient grows with d.
MomentPolynomial limit_at_infinity(const MomentRatfunPolynomial& p);

enum class GammaSource { enumeration, closed_form };

/// lim d^{-2} C_q: the sum over genus-zero pairs weighted by gamma at order
/// l = |tau sigma^{-1}| + 2(C - 1). Enumeration needs q <= 6.
MomentPolynomial iz_cumulant_limit(int q, GammaSource source = GammaSource::enumeration, int threads = 1);

/// lim d^{-1} C_q when X is a rank-one projector (every tr X^k = 1/d); a polynomial in y.
MomentPolynomial rank_one_limit(int q, int threads = 1);

/// Normalized power sums tr(X^k) = (1/d) sum_i x_i^k for k = 1..order.
std::vector<BigRational> power_moments(const std::vector<BigRational>& spectrum, int order);
/// Substitute numbers for the symbols x_k, y_k (xs[k-1] = x_k).
BigRational evaluate_moments(const MomentPolynomial& p, const std::vector<BigRational>& xs,
                             const std::vector<BigRational>& ys);
/// Exact C_q for concrete spectra of size d (any d >= 1), from the moments of tr(A).
BigRational iz_cumulant_at(int q, const std::vector<BigRational>& x, const std::vector<BigRational>& y,
                           int threads = 1);

/// E exp(z d^2 tr A) from the Harish-Chandra determinant, normalized to 1 at z = 0.
/// Spectra must have equal length d and distinct entries.
std::complex<long double> hciz_determinant(const std::vector<long double>& x, const std::vector<long double>& y,
                                           std::complex<long double> z);

struct SeriesPoint {
  long double z = 0;
  long double residual = 0;  // |log hciz(z) - sum_{q <= order} C_q z^q / q!|
  long double scaled = 0;    // residual / z^{order+1}
};

struct SeriesReport {
  int order = 0;
  std::vector<BigRational> cumulants;  // C_1..C_order
  std::vector<SeriesPoint> points;
  long double max_residual = 0;
};

/// Compares the log of the determinant with the truncated cumulant series at the given real z.
SeriesReport iz_series_vs_determinant(const std::vector<BigRational>& x, const std::vector<BigRational>& y,
                                      const std::vector<long double>& zs, int order);

}  // namespace hw
