#include "hw/set_partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hw {

int popcount(Block b) { return __builtin_popcount(b); }

std::vector<int> block_elements(Block b) {
  std::vector<int> v;
  for (int i = 0; b; ++i, b >>= 1)
    if (b & 1U) v.push_back(i);
  return v;
}

SetPartition::SetPartition(const std::vector<int>& labels) : labels_(labels.size()) {
  if (labels.size() > 32) throw PreconditionError("set partitions are limited to 32 points");
  std::vector<std::pair<int, int>> seen;  // original label -> new label
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], blocks_++);
      labels_[i] = blocks_ - 1;
    } else {
      labels_[i] = it->second;
    }
  }
}

SetPartition SetPartition::from_blocks(int q, const std::vector<Block>& blocks) {
  std::vector<int> labels(static_cast<std::size_t>(q), -1);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (int i : block_elements(blocks[k])) {
      if (i >= q || labels[static_cast<std::size_t>(i)] != -1) throw PreconditionError("blocks are not a partition");
      labels[static_cast<std::size_t>(i)] = static_cast<int>(k);
    }
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) throw PreconditionError("blocks do not cover the ground set");
  return SetPartition(labels);
}

SetPartition SetPartition::finest(int q) {
  std::vector<int> labels(static_cast<std::size_t>(q));
  std::iota(labels.begin(), labels.end(), 0);
  return SetPartition(labels);
}

SetPartition SetPartition::coarsest(int q) { return SetPartition(std::vector<int>(static_cast<std::size_t>(q), 0)); }

SetPartition SetPartition::parse(const std::string& text, int q) {
  std::vector<Block> blocks;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) {
    std::istringstream is(part);
    Block b = 0;
    std::string tok;
    while (is >> tok) {
      if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("invalid set partition: '" + text + "'");
      int v = std::stoi(tok);
      if (v < 1 || v > q) throw ParseError("point " + tok + " outside 1.." + std::to_string(q));
      if (b & (1U << (v - 1))) throw ParseError("point " + tok + " repeated");
      b |= 1U << (v - 1);
    }
    if (b == 0) throw ParseError("empty block in '" + text + "'");
    blocks.push_back(b);
  }
  try {
    return from_blocks(q, blocks);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string(e.what()) + ": '" + text + "'");
  }
}

std::vector<Block> SetPartition::blocks() const {
  std::vector<Block> b(static_cast<std::size_t>(blocks_), 0);
  for (std::size_t i = 0; i < labels_.size(); ++i) b[static_cast<std::size_t>(labels_[i])] |= 1U << i;
  return b;
}

bool SetPartition::refines(const SetPartition& other) const {
  if (size() != other.size()) throw DegreeMismatchError("set partitions of different ground sets");
  std::vector<int> image(static_cast<std::size_t>(blocks_), -1);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    int& slot = image[static_cast<std::size_t>(labels_[i])];
    if (slot == -1) slot = other.labels_[i];
    else if (slot != other.labels_[i]) return false;
  }
  return true;
}

std::string SetPartition::to_string() const {
  std::string s;
  auto bl = blocks();
  for (std::size_t k = 0; k < bl.size(); ++k) {
    if (k) s += "|";
    auto el = block_elements(bl[k]);
    for (std::size_t j = 0; j < el.size(); ++j) s += (j ? " " : "") + std::to_string(el[j] + 1);
  }
  return s;
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw DegreeMismatchError("join of set partitions of different ground sets");
  // Connected components of the union of the two block graphs.
  std::vector<int> parent(static_cast<std::size_t>(a.size()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const SetPartition* p : {&a, &b}) {
    std::vector<int> first(static_cast<std::size_t>(p->block_count()), -1);
    for (int i = 0; i < p->size(); ++i) {
      int& f = first[static_cast<std::size_t>(p->block_of(i))];
      if (f == -1) f = i;
      else parent[static_cast<std::size_t>(find(i))] = find(f);
    }
  }
  std::vector<int> labels(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) labels[static_cast<std::size_t>(i)] = find(i);
  return SetPartition(labels);
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw DegreeMismatchError("meet of set partitions of different ground sets");
  std::vector<int> labels(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) labels[static_cast<std::size_t>(i)] = a.block_of(i) * (b.block_count() + 1) + b.block_of(i);
  return SetPartition(labels);
}

SetPartition orbit_partition(const Permutation& sigma) {
  std::vector<int> labels(static_cast<std::size_t>(sigma.degree()));
  int k = 0;
  for (const auto& c : sigma.cycles()) {
    for (int x : c) labels[static_cast<std::size_t>(x)] = k;
    ++k;
  }
  return SetPartition(labels);
}

namespace {

void rgs_rec(std::vector<int>& cur, std::size_t pos, int max_label, std::vector<SetPartition>& out) {
  if (pos == cur.size()) {
    out.emplace_back(cur);
    return;
  }
  for (int l = 0; l <= max_label + 1; ++l) {
    cur[pos] = l;
    rgs_rec(cur, pos + 1, std::max(max_label, l), out);
  }
}

}  // namespace

std::vector<SetPartition> all_set_partitions(int q) {
  std::vector<SetPartition> out;
  if (q == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(q), 0);
  rgs_rec(cur, 1, 0, out);
  return out;
}

std::vector<SetPartition> interval(const SetPartition& lower, const SetPartition& upper) {
  if (!lower.refines(upper)) throw PreconditionError("interval needs lower <= upper");
  // Partition the blocks of `lower`, keeping merged blocks inside one block of `upper`.
  const auto lb = lower.blocks();
  std::vector<int> host(lb.size());
  for (std::size_t k = 0; k < lb.size(); ++k) host[k] = upper.block_of(block_elements(lb[k]).front());
  std::vector<SetPartition> out;
  for (const auto& coarse : all_set_partitions(static_cast<int>(lb.size()))) {
    bool ok = true;
    std::vector<int> label_host(lb.size(), -1);
    for (std::size_t k = 0; k < lb.size() && ok; ++k) {
      int& h = label_host[static_cast<std::size_t>(coarse.block_of(static_cast<int>(k)))];
      if (h == -1) h = host[k];
      else ok = h == host[k];
    }
    if (!ok) continue;
    std::vector<int> labels(static_cast<std::size_t>(lower.size()));
    for (int i = 0; i < lower.size(); ++i) labels[static_cast<std::size_t>(i)] = coarse.block_of(lower.block_of(i));
    out.emplace_back(labels);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long moebius(const SetPartition& lower, const SetPartition& upper) {
  if (!lower.refines(upper)) throw PreconditionError("Moebius function needs comparable partitions (lower <= upper)");
  std::vector<int> inside(static_cast<std::size_t>(upper.block_count()), 0);
  for (Block b : lower.blocks()) ++inside[static_cast<std::size_t>(upper.block_of(block_elements(b).front()))];
  long r = 1;
  for (int n : inside) {
    long f = 1;
    for (int i = 2; i < n; ++i) f *= i;
    r *= ((n - 1) % 2 ? -f : f);
  }
  return r;
}

}  // namespace hw
