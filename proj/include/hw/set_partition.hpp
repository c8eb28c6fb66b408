#pragma once

// The lattice of set partitions of {0..q-1}: refinement order, join/meet, the
// interval Moebius function, and classical/relative cumulants over any
// commutative ring (big rationals, rational functions of d, moment polynomials).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hw/errors.hpp"
#include "hw/permutation.hpp"

namespace hw {

/// A subset of {0..q-1} as a bit mask.
using Block = std::uint32_t;

/// Stored as a restricted growth string: label[i] = index of the block holding i,
/// blocks numbered in order of their minimum element.
class SetPartition {
 public:
  SetPartition() = default;
  /// Any labelling; it is renumbered into restricted growth form.
  explicit SetPartition(const std::vector<int>& labels);
  static SetPartition from_blocks(int q, const std::vector<Block>& blocks);
  static SetPartition finest(int q);    // 0_q
  static SetPartition coarsest(int q);  // 1_q
  /// "1 3|2 4" (1-based points).
  static SetPartition parse(const std::string& text, int q);

  int size() const { return static_cast<int>(labels_.size()); }
  int block_count() const { return blocks_; }
  const std::vector<int>& labels() const { return labels_; }
  int block_of(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  /// Blocks ordered by minimum element.
  std::vector<Block> blocks() const;

  /// Refinement order: every block of *this lies inside a block of other.
  bool refines(const SetPartition& other) const;

  std::string to_string() const;  // "1 3|2 4"

  friend bool operator==(const SetPartition& a, const SetPartition& b) { return a.labels_ == b.labels_; }
  friend auto operator<=>(const SetPartition& a, const SetPartition& b) { return a.labels_ <=> b.labels_; }

 private:
  std::vector<int> labels_;
  int blocks_ = 0;
};

SetPartition join(const SetPartition& a, const SetPartition& b);
SetPartition meet(const SetPartition& a, const SetPartition& b);
/// Blocks are the orbits of sigma.
SetPartition orbit_partition(const Permutation& sigma);

/// All set partitions of {0..q-1} in lexicographic order of restricted growth strings.
std::vector<SetPartition> all_set_partitions(int q);
/// The interval [lower, upper] in the same order.
std::vector<SetPartition> interval(const SetPartition& lower, const SetPartition& upper);

/// Moebius function of the interval [lower, upper]: prod over blocks B of upper of
/// (-1)^{n_B - 1} (n_B - 1)!, n_B = number of blocks of lower inside B.
/// Throws PreconditionError when lower does not refine upper.
long moebius(const SetPartition& lower, const SetPartition& upper);

int popcount(Block b);
std::vector<int> block_elements(Block b);

/// Block moment function V -> E(prod_{j in V} A_j).
template <class R>
using MomentAssignment = std::function<R(Block)>;

/// E_Pi = product over blocks of the block moment.
template <class R>
R e_pi(const SetPartition& pi, const MomentAssignment<R>& m) {
  R acc(1L);
  for (Block b : pi.blocks()) acc *= m(b);
  return acc;
}

/// C_{lower,upper} = sum_{lower <= Pi <= upper} E_Pi Moeb(Pi, upper).
template <class R>
R relative_cumulant(const SetPartition& lower, const SetPartition& upper, const MomentAssignment<R>& m) {
  if (!lower.refines(upper)) throw PreconditionError("relative cumulant needs lower <= upper");
  R acc;
  for (const auto& pi : interval(lower, upper)) {
    long mu = moebius(pi, upper);
    if (mu == 0) continue;
    acc += e_pi(pi, m) * R(mu);
  }
  return acc;
}

/// C_Pi = sum_{Pi' <= Pi} E_Pi' Moeb(Pi', Pi).
template <class R>
R classical_cumulant(const SetPartition& pi, const MomentAssignment<R>& m) {
  return relative_cumulant(SetPartition::finest(pi.size()), pi, m);
}

}  // namespace hw
