#pragma once

// Noncrossing partitions, geodesic permutations and Kreweras complements, and
// the free moment/cumulant transforms over any commutative ring.

#include <vector>

#include "hw/characters.hpp"
#include "hw/errors.hpp"
#include "hw/exact.hpp"
#include "hw/permutation.hpp"
#include "hw/set_partition.hpp"

namespace hw {

bool is_noncrossing(const SetPartition& p);

/// All noncrossing partitions of {0..q-1}, sorted. Cost guard q <= 12.
std::vector<SetPartition> enumerate_nc(int q);

/// r(V): every block as an increasing cycle. Throws PreconditionError on crossing input.
Permutation geodesic_permutation(const SetPartition& v);

/// K(pi) = orbits of Z^{-1} r(pi), Z = (1 2 ... q).
SetPartition kreweras(const SetPartition& pi);

/// Moebius function mu(pi, 1_q) of the noncrossing lattice, from the recursive
/// poset definition. Cost guard q <= 8.
std::vector<BigInt> nc_moebius_to_top(int q, const std::vector<SetPartition>& nc);

enum class CumulantRoute { poset_moebius, kreweras };

template <class R>
R nc_product(const SetPartition& p, const std::vector<R>& seq) {
  R acc(1L);
  for (Block b : p.blocks()) acc *= seq[static_cast<std::size_t>(popcount(b) - 1)];
  return acc;
}

/// k_q from moments[k-1] = m_k.
template <class R>
R free_cumulant(int q, const std::vector<R>& moments, CumulantRoute route = CumulantRoute::kreweras) {
  if (q < 1) throw PreconditionError("cumulant order must be positive");
  if (static_cast<int>(moments.size()) < q)
    throw PreconditionError("need " + std::to_string(q) + " moments, got " + std::to_string(moments.size()));
  const auto nc = enumerate_nc(q);
  R acc(0L);
  if (route == CumulantRoute::poset_moebius) {
    const auto mu = nc_moebius_to_top(q, nc);
    for (std::size_t k = 0; k < nc.size(); ++k)
      if (mu[k] != 0) acc += nc_product(nc[k], moments) * R(BigRational(mu[k]));
  } else {
    for (const auto& p : nc) acc += nc_product(p, moments) * R(BigRational(moeb_perm(geodesic_permutation(kreweras(p)))));
  }
  return acc;
}

/// m_1..m_Q from k_1..k_Q.
template <class R>
std::vector<R> moments_from_cumulants(const std::vector<R>& cumulants, int order) {
  if (static_cast<int>(cumulants.size()) < order) throw PreconditionError("not enough cumulants");
  std::vector<R> m;
  for (int n = 1; n <= order; ++n) {
    R acc(0L);
    for (const auto& p : enumerate_nc(n)) acc += nc_product(p, cumulants);
    m.push_back(acc);
  }
  return m;
}

/// (k_1, ..., k_Q): the coefficient of z^q in the R-transform is k_{q+1}.
template <class R>
std::vector<R> r_transform_coefficients(const std::vector<R>& moments, int order,
                                        CumulantRoute route = CumulantRoute::kreweras) {
  std::vector<R> k;
  for (int q = 1; q <= order; ++q) k.push_back(free_cumulant(q, moments, route));
  return k;
}

}  // namespace hw
