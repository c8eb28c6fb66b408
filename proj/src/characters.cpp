#include "hw/characters.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "hw/errors.hpp"

namespace hw {

namespace {

// First-column hook lengths of lambda, padded to `len` rows; strictly decreasing.
std::vector<int> beta_set(const std::vector<int>& lambda, int len) {
  std::vector<int> b(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    int part = i < static_cast<int>(lambda.size()) ? lambda[static_cast<std::size_t>(i)] : 0;
    b[static_cast<std::size_t>(i)] = part + len - 1 - i;
  }
  return b;
}

// Keyed on the remaining cycle lengths so one memo can serve a whole table row.
struct MnKey {
  std::vector<int> beta;
  std::vector<int> rest;
  auto operator<=>(const MnKey&) const = default;
};

long mn_rec(const std::vector<int>& beta, const std::vector<int>& mu, std::size_t pos, std::map<MnKey, long>& memo) {
  if (pos == mu.size()) return 1;
  MnKey key{beta, std::vector<int>(mu.begin() + static_cast<long>(pos), mu.end())};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = mu[pos];
  long total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    int b = beta[i], nb = b - r;
    if (nb < 0 || std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
    // Leg length = number of beta numbers strictly between nb and b.
    int between = static_cast<int>(std::count_if(beta.begin(), beta.end(), [&](int x) { return x > nb && x < b; }));
    std::vector<int> next = beta;
    next[i] = nb;
    std::sort(next.begin(), next.end(), std::greater<>());
    long v = mn_rec(next, mu, pos + 1, memo);
    total += (between % 2 ? -v : v);
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

long character(const IntegerPartition& lambda, const IntegerPartition& mu) {
  if (lambda.weight() != mu.weight())
    throw DegreeMismatchError("character: |lambda| = " + std::to_string(lambda.weight()) +
                              " but |mu| = " + std::to_string(mu.weight()));
  std::map<MnKey, long> memo;
  return mn_rec(beta_set(lambda.parts(), lambda.length()), mu.parts(), 0, memo);
}

BigInt hook_length_dimension(const IntegerPartition& lambda) {
  const auto conj = lambda.conjugate();
  BigInt hooks = 1;
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[static_cast<std::size_t>(i)]; ++j)
      hooks *= lambda[static_cast<std::size_t>(i)] - j + conj[static_cast<std::size_t>(j)] - i - 1;
  return factorial(lambda.weight()) / hooks;
}

CharacterTable::CharacterTable(int q) : q_(q), parts_(partitions_of(q)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) index_.emplace(parts_[i], i);
  table_.assign(parts_.size(), std::vector<long>(parts_.size()));
  for (std::size_t l = 0; l < parts_.size(); ++l) {
    std::map<MnKey, long> memo;
    auto beta = beta_set(parts_[l].parts(), parts_[l].length());
    for (std::size_t m = 0; m < parts_.size(); ++m) table_[l][m] = mn_rec(beta, parts_[m].parts(), 0, memo);
  }
  for (const auto& p : parts_) sizes_.push_back(class_size(p));
}

std::size_t CharacterTable::index_of(const IntegerPartition& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw DegreeMismatchError("partition " + p.to_string() + " is not a partition of " + std::to_string(q_));
  return it->second;
}

long CharacterTable::value(const IntegerPartition& lambda, const IntegerPartition& mu) const {
  return table_[index_of(lambda)][index_of(mu)];
}

const CharacterTable& character_table(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CharacterTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = tables[q];
  if (!slot) slot = std::make_unique<CharacterTable>(q);
  return *slot;
}

RationalFunctionD schur_dimension(const IntegerPartition& lambda) {
  const int q = lambda.weight();
  const auto& t = character_table(q);
  const std::size_t l = t.index_of(lambda);
  std::vector<BigInt> coeffs(static_cast<std::size_t>(q) + 1);
  for (std::size_t m = 0; m < t.partitions().size(); ++m)
    coeffs[static_cast<std::size_t>(t.partitions()[m].length())] += t.class_sizes()[m] * t(l, m);
  return {IntPoly(std::move(coeffs)), IntPoly::monomial(factorial(q), 0)};
}

RationalFunctionD schur_dimension_hook_content(const IntegerPartition& lambda) {
  const auto conj = lambda.conjugate();
  IntPoly num(1);
  BigInt hooks = 1;
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda[static_cast<std::size_t>(i)]; ++j) {
      num = num * IntPoly(std::vector<BigInt>{BigInt(j - i), BigInt(1)});
      hooks *= lambda[static_cast<std::size_t>(i)] - j + conj[static_cast<std::size_t>(j)] - i - 1;
    }
  }
  return {num, IntPoly::monomial(hooks, 0)};
}

BigInt schur_dimension_at(const IntegerPartition& lambda, long d) {
  const auto conj = lambda.conjugate();
  BigInt num = 1, hooks = 1;
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda[static_cast<std::size_t>(i)]; ++j) {
      num *= d + j - i;
      hooks *= lambda[static_cast<std::size_t>(i)] - j + conj[static_cast<std::size_t>(j)] - i - 1;
    }
  }
  return num / hooks;
}

BigInt catalan(int n) {
  if (n < 0) throw PreconditionError("catalan of a negative index");
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), 2UL * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
  return b / (n + 1);
}

BigInt moeb_cycle_type(const IntegerPartition& mu) {
  BigInt r = 1;
  for (int len : mu.parts()) {
    r *= catalan(len - 1);
    if ((len - 1) % 2) r = -r;
  }
  return r;
}

BigInt moeb_perm(const Permutation& sigma) { return moeb_cycle_type(cycle_type(sigma)); }

}  // namespace hw
