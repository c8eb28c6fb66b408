#include "hw/free_probability.hpp"

#include <algorithm>
#include <functional>

namespace hw {

bool is_noncrossing(const SetPartition& p) {
  const int q = p.size();
  for (int a = 0; a < q; ++a)
    for (int b = a + 1; b < q; ++b) {
      if (p.block_of(a) == p.block_of(b)) continue;
      for (int c = b + 1; c < q; ++c) {
        if (p.block_of(c) != p.block_of(a)) continue;
        for (int e = c + 1; e < q; ++e)
          if (p.block_of(e) == p.block_of(b)) return false;
      }
    }
  return true;
}

std::vector<SetPartition> enumerate_nc(int q) {
  if (q < 1) throw PreconditionError("q must be positive");
  if (q > 12) throw CostGuardError("noncrossing enumeration is limited to q <= 12");
  // Partitions of the interval [lo, hi) as label vectors, labels local to the call.
  std::function<std::vector<std::vector<int>>(int, int)> rec = [&](int lo, int hi) -> std::vector<std::vector<int>> {
    const int n = hi - lo;
    if (n == 0) return {{}};
    std::vector<std::vector<int>> out;
    // The block of lo is {lo} plus a subset of (lo, hi); the gaps are filled independently.
    for (Block mask = 0; mask < (Block{1} << (n - 1)); ++mask) {
      std::vector<int> members = {lo};
      for (int k = 0; k < n - 1; ++k)
        if (mask >> k & 1) members.push_back(lo + 1 + k);
      std::vector<std::vector<int>> partial = {std::vector<int>(static_cast<std::size_t>(n), -1)};
      for (int m : members) partial.front()[static_cast<std::size_t>(m - lo)] = 0;
      for (std::size_t g = 0; g < members.size(); ++g) {
        const int a = members[g] + 1, b = g + 1 < members.size() ? members[g + 1] : hi;
        if (a >= b) continue;
        const auto sub = rec(a, b);
        std::vector<std::vector<int>> next;
        for (const auto& base : partial) {
          const int offset = *std::max_element(base.begin(), base.end()) + 1;
          for (const auto& s : sub) {
            auto v = base;
            for (int i = a; i < b; ++i) v[static_cast<std::size_t>(i - lo)] = s[static_cast<std::size_t>(i - a)] + offset;
            next.push_back(std::move(v));
          }
        }
        partial = std::move(next);
      }
      out.insert(out.end(), partial.begin(), partial.end());
    }
    return out;
  };
  std::vector<SetPartition> result;
  for (const auto& labels : rec(0, q)) result.emplace_back(labels);
  std::sort(result.begin(), result.end());
  return result;
}

Permutation geodesic_permutation(const SetPartition& v) {
  if (!is_noncrossing(v)) throw PreconditionError("partition " + v.to_string() + " is crossing");
  std::vector<int> images(static_cast<std::size_t>(v.size()));
  for (Block b : v.blocks()) {
    const auto el = block_elements(b);
    for (std::size_t k = 0; k < el.size(); ++k)
      images[static_cast<std::size_t>(el[k])] = el[(k + 1) % el.size()];
  }
  return Permutation(images);
}

SetPartition kreweras(const SetPartition& pi) {
  const int q = pi.size();
  return orbit_partition(Permutation::full_cycle(q).inverse() * geodesic_permutation(pi));
}

std::vector<BigInt> nc_moebius_to_top(int q, const std::vector<SetPartition>& nc) {
  if (q > 8) throw CostGuardError("poset Moebius over NC(q) is limited to q <= 8");
  // Coarser partitions first.
  std::vector<std::size_t> order(nc.size());
  for (std::size_t k = 0; k < nc.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nc[a].block_count() < nc[b].block_count(); });
  std::vector<BigInt> mu(nc.size(), 0);
  for (std::size_t t = 0; t < order.size(); ++t) {
    const std::size_t k = order[t];
    if (nc[k].block_count() == 1) {
      mu[k] = 1;
      continue;
    }
    BigInt s = 0;
    for (std::size_t u = 0; u < t; ++u) {
      const std::size_t o = order[u];
      if (nc[o].block_count() < nc[k].block_count() && nc[k].refines(nc[o])) s -= mu[o];
    }
    mu[k] = s;
  }
  return mu;
}

}  // namespace hw
