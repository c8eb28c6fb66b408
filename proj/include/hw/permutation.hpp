#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hw/exact.hpp"

namespace hw {

/// Weakly decreasing sequence of positive integers. Indexes characters and conjugacy classes.
class IntegerPartition {
 public:
  IntegerPartition() = default;
  /// Parts are sorted into non-increasing order; non-positive parts are rejected.
  explicit IntegerPartition(std::vector<int> parts);

  /// "3,2,1", "(3,2,1)" or "3 2 1".
  static IntegerPartition parse(const std::string& text);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int operator[](std::size_t i) const { return parts_[i]; }
  /// m[i] = number of parts equal to i, for i = 0..weight.
  std::vector<int> multiplicities() const;
  /// Norm of any permutation with this cycle type: weight - length.
  int norm() const { return weight_ - length(); }
  IntegerPartition conjugate() const;

  std::string to_string() const;  // "(3,2,1)"

  friend bool operator==(const IntegerPartition& a, const IntegerPartition& b) { return a.parts_ == b.parts_; }
  friend auto operator<=>(const IntegerPartition& a, const IntegerPartition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All partitions of q in reverse-lexicographic order: (q), (q-1,1), ..., (1,...,1).
std::vector<IntegerPartition> partitions_of(int q);

/// Bijection of {0..q-1}. Text I/O is 1-based cycle notation.
/// Composition: (a * b)(i) = a(b(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int q);
  /// Cycles given with 1-based points; unlisted points are fixed.
  static Permutation from_cycles(int q, const std::vector<std::vector<int>>& cycles);
  /// "(1 3)(2 4)" with explicit degree q; "()" or "" is the identity.
  static Permutation parse(const std::string& text, int q);
  /// (1 2 ... q).
  static Permutation full_cycle(int q);
  /// Consecutive cycles (1..mu_1)(mu_1+1 ...)... realising the cycle type.
  static Permutation representative(const IntegerPartition& mu);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  /// 0-based cycles, each starting at its minimum, ordered by minimum. Fixed points included.
  std::vector<std::vector<int>> cycles() const;
  int cycle_count() const;
  int norm() const { return degree() - cycle_count(); }
  bool is_identity() const;
  /// Relabel points: result = g * this * g^-1.
  Permutation conjugated_by(const Permutation& g) const;

  std::string to_string() const;  // 1-based, fixed points omitted, identity "()"

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<int> images_;
};

/// Every permutation of S_q in lexicographic order of the image sequence.
std::vector<Permutation> all_permutations(int q);

IntegerPartition cycle_type(const Permutation& sigma);
/// q - c(sigma): minimal number of transpositions whose product is sigma.
int norm(const Permutation& sigma);
/// Size of the conjugacy class q! / prod_i i^{m_i} m_i!.
BigInt class_size(const IntegerPartition& mu);
BigInt factorial(int n);

/// Lexicographic rank of a permutation among all of S_q, and its inverse.
std::size_t permutation_rank(const std::vector<int>& images);
std::vector<int> permutation_unrank(std::size_t rank, int q);

}  // namespace hw

template <>
struct std::hash<hw::Permutation> {
  std::size_t operator()(const hw::Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int v : p.images()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};
