#pragma once

// The unitary Weingarten function: exact values, rational-function form in d,
// Laurent coefficients at d = infinity (by expansion or by counting
// factorizations), transitive factorization counts gamma, relative cumulants of
// Wg over the partition lattice, and the closed-form leading orders.

#include <string>
#include <vector>

#include "hw/exact.hpp"
#include "hw/permutation.hpp"
#include "hw/set_partition.hpp"

namespace hw {

/// Wg(d, sigma) for d >= q. Throws StableRangeError when d < q.
BigRational wg(const IntegerPartition& mu, long d);
BigRational wg(const Permutation& sigma, long d);

/// The same character sum restricted to lambda with at most d rows. Agrees with wg
/// for d >= q; for d < q it is the pseudo-inverse that still integrates monomials.
BigRational wg_any_dimension(const IntegerPartition& mu, long d);

/// Wg as a reduced rational function of d (memoized per cycle type).
RationalFunctionD wg_ratfun(const IntegerPartition& mu);
RationalFunctionD wg_ratfun(const Permutation& sigma);

enum class LaurentMethod { enumeration, expansion };

/// Coefficient of d^{-q-l} in the expansion of Wg(d, sigma) at d = infinity.
/// Enumeration is guarded by q <= 6 and l <= 8 (CostGuardError).
BigRational laurent_coefficient(const Permutation& sigma, int l, LaurentMethod method);

struct FactorizationCount {
  Permutation sigma;
  int l = 0;
  /// per_k[k] = number of k-tuples of non-identity permutations with
  /// sigma sigma_1 ... sigma_k = e and total norm l.
  std::vector<BigInt> per_k;
  /// sum_k (-1)^k per_k[k].
  BigInt signed_total;
};
FactorizationCount factorization_count(const Permutation& sigma, int l);

/// Signed count of factorizations sigma sigma_1 ... sigma_k = e into non-identity
/// factors of total norm l, such that the orbits of the factors together with the
/// blocks of pi connect {1..q}. Requires Pi_sigma <= pi; guarded by q <= 6, l <= 12.
BigInt gamma_transitive(const Permutation& sigma, const SetPartition& pi, int l);

/// C_{pi,1_q}(sigma, d) built from Wg of sigma restricted to the blocks of the
/// partitions above pi. Requires Pi_sigma <= pi.
RationalFunctionD relative_cumulant_wg(const SetPartition& pi, const Permutation& sigma);

/// Smallest l at which C_{pi,1_q}(sigma, d) can have a nonzero d^{-q-l} coefficient:
/// |sigma| + 2(C(pi) - 1).
int leading_order(const Permutation& sigma, const SetPartition& pi);

/// Closed-form value of gamma at the leading order, in the form
/// g_{sigma,pi} prod_i ((2i-1)!/(i-1)!^2)^{d_i} (-1)^{|sigma|} 2^{q-|sigma|},
/// with d_i the number of cycles of sigma of length i.
BigRational schaeffer_leading(const Permutation& sigma, const SetPartition& pi);

/// Persist / restore the memoized rational functions. The file carries a format
/// version; a mismatching or damaged file is ignored and false is returned.
bool save_wg_cache(const std::string& path);
bool load_wg_cache(const std::string& path);

}  // namespace hw
