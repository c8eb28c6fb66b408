#pragma once

#include <map>
#include <vector>

#include "hw/exact.hpp"
#include "hw/permutation.hpp"

namespace hw {

/// chi^lambda(mu) by recursive rim-hook removal (Murnaghan-Nakayama).
/// Throws DegreeMismatchError when |lambda| != |mu|.
long character(const IntegerPartition& lambda, const IntegerPartition& mu);

/// Degree of chi^lambda by the hook length formula.
BigInt hook_length_dimension(const IntegerPartition& lambda);

/// Full character table of S_q, rows and columns in reverse-lexicographic partition order.
class CharacterTable {
 public:
  explicit CharacterTable(int q);

  int degree() const { return q_; }
  const std::vector<IntegerPartition>& partitions() const { return parts_; }
  std::size_t index_of(const IntegerPartition& p) const;
  long operator()(std::size_t lambda, std::size_t mu) const { return table_[lambda][mu]; }
  long value(const IntegerPartition& lambda, const IntegerPartition& mu) const;
  /// Class sizes Z_mu in the same order as partitions().
  const std::vector<BigInt>& class_sizes() const { return sizes_; }

 private:
  int q_;
  std::vector<IntegerPartition> parts_;
  std::map<IntegerPartition, std::size_t> index_;
  std::vector<std::vector<long>> table_;
  std::vector<BigInt> sizes_;
};

/// Shared read-only table for S_q, built on first use.
const CharacterTable& character_table(int q);

/// s_{lambda,d}(1) = (1/q!) sum_tau d^{c(tau)} chi^lambda(tau) Z_tau, as a polynomial in d.
RationalFunctionD schur_dimension(const IntegerPartition& lambda);
/// The same polynomial from the hook-content product prod (d + content)/hook.
RationalFunctionD schur_dimension_hook_content(const IntegerPartition& lambda);
/// s_{lambda,d}(1) at an integer d (zero when d < length of lambda).
BigInt schur_dimension_at(const IntegerPartition& lambda, long d);

BigInt catalan(int n);

/// prod over cycles C of (-1)^{len(C)-1} catalan(len(C)-1).
BigInt moeb_perm(const Permutation& sigma);
BigInt moeb_cycle_type(const IntegerPartition& mu);

}  // namespace hw
