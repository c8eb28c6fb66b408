#include "hw/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hw/errors.hpp"

namespace hw {

// ------------------------------------------------------- IntegerPartition

IntegerPartition::IntegerPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p <= 0) throw PreconditionError("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

IntegerPartition IntegerPartition::parse(const std::string& text) {
  std::string s;
  for (char c : text) s += (c == ',' || c == '(' || c == ')') ? ' ' : c;
  std::istringstream is(s);
  std::vector<int> parts;
  std::string tok;
  while (is >> tok) {
    if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("invalid partition: '" + text + "'");
    int v = std::stoi(tok);
    if (v <= 0) throw ParseError("partition parts must be positive: '" + text + "'");
    parts.push_back(v);
  }
  if (parts.empty()) throw ParseError("empty partition: '" + text + "'");
  return IntegerPartition(std::move(parts));
}

std::vector<int> IntegerPartition::multiplicities() const {
  std::vector<int> m(static_cast<std::size_t>(weight_) + 1, 0);
  for (int p : parts_) ++m[static_cast<std::size_t>(p)];
  return m;
}

IntegerPartition IntegerPartition::conjugate() const {
  std::vector<int> c;
  for (int j = 1; !parts_.empty() && j <= parts_.front(); ++j)
    c.push_back(static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [j](int p) { return p >= j; })));
  return IntegerPartition(std::move(c));
}

std::string IntegerPartition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + ")";
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<IntegerPartition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<IntegerPartition> partitions_of(int q) {
  std::vector<IntegerPartition> out;
  if (q < 0) return out;
  if (q == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur;
  partitions_rec(q, q, cur, out);
  return out;
}

// ------------------------------------------------------------ Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
      throw PreconditionError("image sequence is not a bijection");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int q) {
  std::vector<int> v(static_cast<std::size_t>(q));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::from_cycles(int q, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> v(static_cast<std::size_t>(q));
  std::iota(v.begin(), v.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(q), 0);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      int a = c[k], b = c[(k + 1) % c.size()];
      if (a < 1 || a > q) throw ParseError("cycle point " + std::to_string(a) + " outside 1.." + std::to_string(q));
      if (used[static_cast<std::size_t>(a - 1)]) throw ParseError("point " + std::to_string(a) + " repeated in cycles");
      used[static_cast<std::size_t>(a - 1)] = 1;
      v[static_cast<std::size_t>(a - 1)] = b - 1;
    }
  }
  return Permutation(std::move(v));
}

Permutation Permutation::parse(const std::string& text, int q) {
  if (q < 0) throw ParseError("negative degree");
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in permutation '" + text + "'");
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle in '" + text + "'");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == i) throw ParseError("unexpected character in permutation '" + text + "'");
      cyc.push_back(std::stoi(text.substr(i, j - i)));
      i = j;
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return from_cycles(q, cycles);
}

Permutation Permutation::full_cycle(int q) {
  std::vector<int> v(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) v[static_cast<std::size_t>(i)] = (i + 1) % q;
  return Permutation(std::move(v));
}

Permutation Permutation::representative(const IntegerPartition& mu) {
  std::vector<int> v(static_cast<std::size_t>(mu.weight()));
  int start = 0;
  for (int len : mu.parts()) {
    for (int k = 0; k < len; ++k) v[static_cast<std::size_t>(start + k)] = start + (k + 1) % len;
    start += len;
  }
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> v(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) v[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  Permutation p;
  p.images_ = std::move(v);
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DegreeMismatchError("composing permutations of different degrees");
  Permutation p;
  p.images_.resize(b.images_.size());
  for (std::size_t i = 0; i < b.images_.size(); ++i) p.images_[i] = a.images_[static_cast<std::size_t>(b.images_[i])];
  return p;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int s = 0; s < degree(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> c;
    for (int x = s; !seen[static_cast<std::size_t>(x)]; x = images_[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

int Permutation::cycle_count() const {
  int count = 0;
  std::vector<char> seen(images_.size(), 0);
  for (int s = 0; s < degree(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++count;
    for (int x = s; !seen[static_cast<std::size_t>(x)]; x = images_[static_cast<std::size_t>(x)])
      seen[static_cast<std::size_t>(x)] = 1;
  }
  return count;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation Permutation::conjugated_by(const Permutation& g) const { return g * *this * g.inverse(); }

std::string Permutation::to_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    if (c.size() == 1) continue;
    s += "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? " " : "") + std::to_string(c[k] + 1);
    s += ")";
  }
  return s.empty() ? "()" : s;
}

std::vector<Permutation> all_permutations(int q) {
  std::vector<Permutation> out;
  std::vector<int> v(static_cast<std::size_t>(q));
  std::iota(v.begin(), v.end(), 0);
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

IntegerPartition cycle_type(const Permutation& sigma) {
  std::vector<int> lens;
  for (const auto& c : sigma.cycles()) lens.push_back(static_cast<int>(c.size()));
  return IntegerPartition(std::move(lens));
}

int norm(const Permutation& sigma) { return sigma.norm(); }

BigInt factorial(int n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt class_size(const IntegerPartition& mu) {
  BigInt denom = 1;
  auto m = mu.multiplicities();
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), i, static_cast<unsigned long>(m[i]));
    denom *= p * factorial(m[i]);
  }
  return factorial(mu.weight()) / denom;
}

std::size_t permutation_rank(const std::vector<int>& images) {
  const std::size_t n = images.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (images[j] < images[i]) ++smaller;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

std::vector<int> permutation_unrank(std::size_t rank, int q) {
  const auto n = static_cast<std::size_t>(q);
  std::vector<std::size_t> digits(n);
  for (std::size_t i = n; i-- > 0;) {
    std::size_t base = n - i;
    digits[i] = rank % base;
    rank /= base;
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = pool[digits[i]];
    pool.erase(pool.begin() + static_cast<long>(digits[i]));
  }
  return out;
}

}  // namespace hw
