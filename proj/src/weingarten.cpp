#include "hw/weingarten.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

#include "hw/characters.hpp"
#include "hw/errors.hpp"

namespace hw {

namespace {

using Count = __int128;

BigInt to_bigint(Count v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<IntegerPartition, RationalFunctionD>& ratfun_cache() {
  static std::map<IntegerPartition, RationalFunctionD> c;
  return c;
}

BigRational wg_sum(const IntegerPartition& mu, long d, bool restrict_rows) {
  const int q = mu.weight();
  const auto& t = character_table(q);
  const std::size_t m = t.index_of(mu);
  BigRational acc = 0;
  for (std::size_t l = 0; l < t.partitions().size(); ++l) {
    const auto& lambda = t.partitions()[l];
    if (restrict_rows && lambda.length() > d) continue;
    const BigInt dim = hook_length_dimension(lambda);
    BigRational term(BigInt(dim * dim * t(l, m)), schur_dimension_at(lambda, d));
    term.canonicalize();
    acc += term;
  }
  BigInt f = factorial(q);
  acc /= BigRational(f * f);
  return acc;
}

// Multiplication table and orbit data of S_q, indexed by lexicographic rank.
struct SymTable {
  int q = 0;
  std::size_t n = 0;
  std::vector<Permutation> elems;
  std::vector<int> norm;
  std::vector<std::uint16_t> mul;  // mul[a * n + b] = rank(elems[a] * elems[b])
  std::vector<int> orbit;          // index of the orbit partition in `partitions`
  std::vector<SetPartition> partitions;
  std::map<SetPartition, int> partition_index;
  std::vector<int> join;           // join[a * P + b]
  std::size_t identity = 0;
  int coarsest = 0;

  explicit SymTable(int q_) : q(q_), elems(all_permutations(q_)) {
    n = elems.size();
    partitions = all_set_partitions(q);
    for (std::size_t i = 0; i < partitions.size(); ++i) partition_index.emplace(partitions[i], static_cast<int>(i));
    const std::size_t P = partitions.size();
    join.resize(P * P);
    for (std::size_t a = 0; a < P; ++a)
      for (std::size_t b = 0; b < P; ++b) join[a * P + b] = partition_index.at(hw::join(partitions[a], partitions[b]));
    coarsest = partition_index.at(SetPartition::coarsest(q));
    mul.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      norm.push_back(elems[a].norm());
      orbit.push_back(partition_index.at(orbit_partition(elems[a])));
      for (std::size_t b = 0; b < n; ++b)
        mul[a * n + b] = static_cast<std::uint16_t>(permutation_rank((elems[a] * elems[b]).images()));
    }
    identity = 0;
  }

  std::size_t rank(const Permutation& p) const { return permutation_rank(p.images()); }
};

const SymTable& sym_table(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SymTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = tables[q];
  if (!slot) slot = std::make_unique<SymTable>(q);
  return *slot;
}

// counts[k][u][pi] = number of k-tuples of non-identity permutations whose product is
// pi and whose norms add up to u.
struct FactorTable {
  int max_l = -1;
  std::vector<std::vector<std::vector<Count>>> counts;
};

const FactorTable& factor_table(int q, int l) {
  static std::mutex mu;
  static std::map<int, FactorTable> tables;
  std::lock_guard<std::mutex> lock(mu);
  FactorTable& ft = tables[q];
  if (ft.max_l >= l) return ft;
  const SymTable& st = sym_table(q);
  const auto L = static_cast<std::size_t>(l);
  ft.counts.assign(L + 1, std::vector<std::vector<Count>>(L + 1, std::vector<Count>(st.n, 0)));
  ft.counts[0][0][st.identity] = 1;
  for (std::size_t k = 0; k < L; ++k)
    for (std::size_t u = 0; u <= L; ++u)
      for (std::size_t p = 0; p < st.n; ++p) {
        const Count c = ft.counts[k][u][p];
        if (c == 0) continue;
        for (std::size_t t = 1; t < st.n; ++t) {
          const auto nu = u + static_cast<std::size_t>(st.norm[t]);
          if (nu > L) continue;
          ft.counts[k + 1][nu][st.mul[p * st.n + t]] += c;
        }
      }
  ft.max_l = l;
  return ft;
}

// For a partition with consecutive blocks, result[pi][l] = signed number of tuples of
// non-identity permutations with product pi, total norm l and connecting join 1_q.
struct GammaTable {
  int max_l = -1;
  std::vector<std::vector<Count>> by_product;
};

const GammaTable& gamma_table(const SetPartition& rep, int l) {
  static std::mutex mu;
  static std::map<SetPartition, GammaTable> tables;
  std::lock_guard<std::mutex> lock(mu);
  GammaTable& gt = tables[rep];
  if (gt.max_l >= l) return gt;
  const SymTable& st = sym_table(rep.size());
  const std::size_t P = st.partitions.size();
  const auto L = static_cast<std::size_t>(l);
  // level[u][J * n + pi]
  std::vector<std::vector<Count>> level(L + 1, std::vector<Count>(P * st.n, 0));
  level[0][static_cast<std::size_t>(st.partition_index.at(rep)) * st.n + st.identity] = 1;
  gt.by_product.assign(st.n, std::vector<Count>(L + 1, 0));
  for (std::size_t u = 0; u <= L; ++u) {
    for (std::size_t s = 0; s < P * st.n; ++s) {
      const Count c = level[u][s];
      if (c == 0) continue;
      const std::size_t J = s / st.n, p = s % st.n;
      if (static_cast<int>(J) == st.coarsest) gt.by_product[p][u] += c;
      for (std::size_t t = 1; t < st.n; ++t) {
        const auto nu = u + static_cast<std::size_t>(st.norm[t]);
        if (nu > L) continue;
        const auto nJ = static_cast<std::size_t>(st.join[J * P + static_cast<std::size_t>(st.orbit[t])]);
        level[nu][nJ * st.n + st.mul[p * st.n + t]] -= c;
      }
    }
  }
  gt.max_l = l;
  return gt;
}

// Relabelling g with g(pi) made of consecutive blocks, larger blocks first.
std::pair<Permutation, SetPartition> canonical_relabel(const SetPartition& pi) {
  auto blocks = pi.blocks();
  std::stable_sort(blocks.begin(), blocks.end(), [](Block a, Block b) { return popcount(a) > popcount(b); });
  std::vector<int> images(static_cast<std::size_t>(pi.size()));
  std::vector<int> labels(static_cast<std::size_t>(pi.size()));
  int next = 0, label = 0;
  for (Block b : blocks) {
    for (int x : block_elements(b)) {
      images[static_cast<std::size_t>(x)] = next;
      labels[static_cast<std::size_t>(next)] = label;
      ++next;
    }
    ++label;
  }
  return {Permutation(images), SetPartition(labels)};
}

IntegerPartition restricted_type(const Permutation& sigma, Block v) {
  std::vector<int> lens;
  for (const auto& c : sigma.cycles())
    if (v & (1U << c.front())) lens.push_back(static_cast<int>(c.size()));
  return IntegerPartition(std::move(lens));
}

}  // namespace

BigRational wg(const IntegerPartition& mu, long d) {
  if (d < mu.weight())
    throw StableRangeError("Wg(d, sigma) needs d >= q (got d = " + std::to_string(d) + ", q = " +
                           std::to_string(mu.weight()) + ")");
  static std::mutex m;
  static std::map<std::pair<IntegerPartition, long>, BigRational> memo;
  {
    std::lock_guard<std::mutex> lock(m);
    if (auto it = memo.find({mu, d}); it != memo.end()) return it->second;
  }
  BigRational v = wg_sum(mu, d, false);
  std::lock_guard<std::mutex> lock(m);
  memo.emplace(std::make_pair(mu, d), v);
  return v;
}

BigRational wg(const Permutation& sigma, long d) { return wg(cycle_type(sigma), d); }

BigRational wg_any_dimension(const IntegerPartition& mu, long d) {
  if (d < 1) throw PreconditionError("dimension must be positive");
  return wg_sum(mu, d, true);
}

RationalFunctionD wg_ratfun(const IntegerPartition& mu) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    if (auto it = ratfun_cache().find(mu); it != ratfun_cache().end()) return it->second;
  }
  const int q = mu.weight();
  const auto& t = character_table(q);
  const std::size_t m = t.index_of(mu);
  const BigInt f = factorial(q);
  RationalFunctionD acc;
  for (std::size_t l = 0; l < t.partitions().size(); ++l) {
    const auto& lambda = t.partitions()[l];
    const BigInt dim = hook_length_dimension(lambda);
    const long chi = t(l, m);
    if (chi == 0) continue;
    RationalFunctionD coeff(ratio(dim * dim * chi, f * f));
    acc += coeff / schur_dimension_hook_content(lambda);
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  ratfun_cache().emplace(mu, acc);
  return acc;
}

RationalFunctionD wg_ratfun(const Permutation& sigma) { return wg_ratfun(cycle_type(sigma)); }

FactorizationCount factorization_count(const Permutation& sigma, int l) {
  const int q = sigma.degree();
  if (l < 0) throw PreconditionError("l must be non-negative");
  if (q > 6 || l > 8) throw CostGuardError("factorization enumeration is limited to q <= 6 and l <= 8");
  const auto& ft = factor_table(q, l);
  const std::size_t target = permutation_rank(sigma.inverse().images());
  FactorizationCount fc{sigma, l, {}, 0};
  for (int k = 0; k <= l; ++k) {
    BigInt c = to_bigint(ft.counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)][target]);
    fc.per_k.push_back(c);
    fc.signed_total += (k % 2 ? BigInt(-c) : c);
  }
  return fc;
}

BigRational laurent_coefficient(const Permutation& sigma, int l, LaurentMethod method) {
  if (l < 0) throw PreconditionError("l must be non-negative");
  if (method == LaurentMethod::enumeration) return BigRational(factorization_count(sigma, l).signed_total);
  const int q = sigma.degree();
  return laurent_expand(wg_ratfun(sigma), q + l).coefficient(q + l);
}

BigInt gamma_transitive(const Permutation& sigma, const SetPartition& pi, int l) {
  const int q = sigma.degree();
  if (pi.size() != q) throw DegreeMismatchError("partition and permutation have different degrees");
  if (!orbit_partition(sigma).refines(pi)) throw PreconditionError("gamma needs Pi_sigma <= Pi");
  if (l < 0) throw PreconditionError("l must be non-negative");
  if (q > 6 || l > 12) throw CostGuardError("transitive factorization enumeration is limited to q <= 6 and l <= 12");
  auto [g, rep] = canonical_relabel(pi);
  const Permutation s = sigma.conjugated_by(g);
  const auto& gt = gamma_table(rep, std::max(l, 2 * q - 2));
  return to_bigint(gt.by_product[permutation_rank(s.inverse().images())][static_cast<std::size_t>(l)]);
}

RationalFunctionD relative_cumulant_wg(const SetPartition& pi, const Permutation& sigma) {
  if (pi.size() != sigma.degree()) throw DegreeMismatchError("partition and permutation have different degrees");
  if (!orbit_partition(sigma).refines(pi)) throw PreconditionError("relative cumulant needs Pi_sigma <= Pi");
  MomentAssignment<RationalFunctionD> m = [&](Block v) { return wg_ratfun(restricted_type(sigma, v)); };
  return relative_cumulant(pi, SetPartition::coarsest(pi.size()), m);
}

int leading_order(const Permutation& sigma, const SetPartition& pi) { return sigma.norm() + 2 * (pi.block_count() - 1); }

BigRational schaeffer_leading(const Permutation& sigma, const SetPartition& pi) {
  const int q = sigma.degree();
  const SetPartition orbits = orbit_partition(sigma);
  if (!orbits.refines(pi)) throw PreconditionError("closed form needs Pi_sigma <= Pi");
  const SetPartition top = SetPartition::coarsest(q);
  BigRational g = 0;
  for (const auto& p : interval(orbits, top)) {
    if (join(p, pi) != top) continue;
    if (orbits.block_count() - p.block_count() != pi.block_count() - 1) continue;
    BigRational term = 1;
    for (Block v : p.blocks()) {
      const int qi = popcount(v);
      const int ni = restricted_type(sigma, v).norm();
      term *= ratio(factorial(3 * qi - 3 - ni), factorial(2 * qi));
    }
    g += term;
  }
  BigRational r = g;
  for (const auto& c : sigma.cycles()) {
    const int i = static_cast<int>(c.size());
    BigInt f = factorial(i - 1);
    r *= ratio(factorial(2 * i - 1), f * f);
  }
  BigInt two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(q - sigma.norm()));
  r *= two;
  if (sigma.norm() % 2) r = -r;
  r.canonicalize();
  return r;
}

namespace {

constexpr char kMagic[4] = {'H', 'W', 'W', 'G'};
constexpr std::uint32_t kFormatVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); }
bool read_u32(std::istream& is, std::uint32_t& v) { return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof v)); }

void write_str(std::ostream& os, const std::string& s) {
  write_u32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}
bool read_str(std::istream& is, std::string& s) {
  std::uint32_t n = 0;
  if (!read_u32(is, n) || n > (1U << 20)) return false;
  s.resize(n);
  return static_cast<bool>(is.read(s.data(), n));
}

void write_poly(std::ostream& os, const IntPoly& p) {
  write_u32(os, static_cast<std::uint32_t>(p.coeffs().size()));
  for (const auto& c : p.coeffs()) write_str(os, c.get_str());
}
bool read_poly(std::istream& is, IntPoly& p) {
  std::uint32_t n = 0;
  if (!read_u32(is, n) || n > 4096) return false;
  std::vector<BigInt> c(n);
  std::string s;
  for (auto& v : c) {
    if (!read_str(is, s) || v.set_str(s, 10) != 0) return false;
  }
  p = IntPoly(std::move(c));
  return true;
}

}  // namespace

bool save_wg_cache(const std::string& path) {
  std::map<IntegerPartition, RationalFunctionD> snapshot;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    snapshot = ratfun_cache();
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) return false;
    os.write(kMagic, sizeof kMagic);
    write_u32(os, kFormatVersion);
    write_u32(os, static_cast<std::uint32_t>(snapshot.size()));
    for (const auto& [mu, f] : snapshot) {
      write_u32(os, static_cast<std::uint32_t>(mu.length()));
      for (int p : mu.parts()) write_u32(os, static_cast<std::uint32_t>(p));
      write_poly(os, f.num());
      write_poly(os, f.den());
    }
    if (!os) return false;
  }
  return std::rename(tmp.c_str(), path.c_str()) == 0;
}

bool load_wg_cache(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[4];
  std::uint32_t version = 0, count = 0;
  if (!is.read(magic, sizeof magic) || std::string(magic, 4) != std::string(kMagic, 4)) return false;
  if (!read_u32(is, version) || version != kFormatVersion) return false;
  if (!read_u32(is, count) || count > 100000) return false;
  std::map<IntegerPartition, RationalFunctionD> loaded;
  for (std::uint32_t e = 0; e < count; ++e) {
    std::uint32_t len = 0;
    if (!read_u32(is, len) || len > 64) return false;
    std::vector<int> parts(len);
    for (auto& p : parts) {
      std::uint32_t v = 0;
      if (!read_u32(is, v) || v == 0 || v > 64) return false;
      p = static_cast<int>(v);
    }
    IntPoly num, den;
    if (!read_poly(is, num) || !read_poly(is, den) || den.is_zero()) return false;
    loaded.emplace(IntegerPartition(std::move(parts)), RationalFunctionD(num, den));
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  for (auto& [mu, f] : loaded) ratfun_cache().emplace(mu, std::move(f));
  return true;
}

}  // namespace hw
