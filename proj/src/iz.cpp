#include "hw/iz.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <thread>

#include <Eigen/Dense>

#include "hw/errors.hpp"
#include "hw/set_partition.hpp"
#include "hw/weingarten.hpp"

namespace hw {

XYMonomial x_moments(const Permutation& sigma) { return xy_monomial(cycle_type(sigma).parts(), {}); }
XYMonomial y_moments(const Permutation& tau) { return xy_monomial({}, cycle_type(tau).parts()); }

bool genus_condition(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree()) throw DegreeMismatchError("permutations of different degrees");
  const int q = sigma.degree();
  const int c = join(orbit_partition(sigma), orbit_partition(tau)).block_count();
  return tau.norm() + sigma.norm() + (tau * sigma.inverse()).norm() == 2 * q - 2 * c;
}

namespace {

void check_order(int q) {
  if (q < 1) throw PreconditionError("order must be positive");
  if (q > 7) throw CostGuardError("IZ sums over S_q x S_q are limited to q <= 7");
}

// A summand class: moment monomial, power of d, and the cycle types of
// rho = tau sigma^{-1} restricted to each block of the relevant partition.
struct PairKey {
  XYMonomial mono;
  int dexp = 0;
  std::vector<IntegerPartition> types;

  friend bool operator<(const PairKey& a, const PairKey& b) {
    if (!(a.mono == b.mono)) return a.mono < b.mono;
    if (a.dexp != b.dexp) return a.dexp < b.dexp;
    return a.types < b.types;
  }
};

using PairCounts = std::map<PairKey, long>;

// Sum of classify(sigma, tau) over S_q x S_q, using invariance under simultaneous
// conjugation: sigma runs over class representatives weighted by class sizes.
template <class F>
PairCounts sum_pairs(int q, int threads, F classify) {
  const auto all = all_permutations(q);
  const auto reps = partitions_of(q);
  const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  std::vector<PairCounts> local(workers);
  auto work = [&](std::size_t w) {
    for (const auto& mu : reps) {
      const auto sigma = Permutation::representative(mu);
      const long weight = class_size(mu).get_si();
      for (std::size_t t = w; t < all.size(); t += workers) {
        PairKey key;
        if (classify(sigma, all[t], key)) local[w][key] += weight;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  PairCounts total;
  for (const auto& l : local)
    for (const auto& [k, v] : l) total[k] += v;
  return total;
}

std::vector<IntegerPartition> block_types(const Permutation& rho, const SetPartition& pi) {
  std::vector<std::vector<int>> parts(static_cast<std::size_t>(pi.block_count()));
  for (const auto& c : rho.cycles()) parts[static_cast<std::size_t>(pi.block_of(c.front()))].push_back(static_cast<int>(c.size()));
  std::vector<IntegerPartition> out;
  for (auto& p : parts) out.emplace_back(std::move(p));
  std::sort(out.begin(), out.end());
  return out;
}

// Consecutive blocks carrying the given cycle types.
std::pair<SetPartition, Permutation> representative(const std::vector<IntegerPartition>& types) {
  std::vector<int> labels, images;
  int label = 0;
  for (const auto& t : types) {
    for (int len : t.parts()) {
      const int start = static_cast<int>(images.size());
      for (int k = 0; k < len; ++k) {
        images.push_back(start + (k + 1) % len);
        labels.push_back(label);
      }
    }
    ++label;
  }
  return {SetPartition(labels), Permutation(images)};
}

RationalFunctionD cached_relative_cumulant(const std::vector<IntegerPartition>& types) {
  static std::mutex mu;
  static std::map<std::vector<IntegerPartition>, RationalFunctionD> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(types);
    if (it != cache.end()) return it->second;
  }
  const auto [pi, rho] = representative(types);
  auto value = relative_cumulant_wg(pi, rho);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(types, value).first->second;
}

PairCounts moment_pairs(int q, int threads) {
  return sum_pairs(q, threads, [q](const Permutation& sigma, const Permutation& tau, PairKey& key) {
    key.mono = x_moments(sigma) * y_moments(tau);
    key.dexp = q - sigma.norm() - tau.norm();
    key.types = {cycle_type(tau * sigma.inverse())};
    return true;
  });
}

PairCounts cumulant_pairs(int q, int threads, bool genus_zero_only) {
  return sum_pairs(q, threads, [=](const Permutation& sigma, const Permutation& tau, PairKey& key) {
    const auto pi = join(orbit_partition(sigma), orbit_partition(tau));
    const auto rho = tau * sigma.inverse();
    if (genus_zero_only && tau.norm() + sigma.norm() + rho.norm() != 2 * q - 2 * pi.block_count()) return false;
    key.mono = x_moments(sigma) * y_moments(tau);
    key.dexp = 3 * q - 2 - sigma.norm() - tau.norm();
    key.types = block_types(rho, pi);
    return true;
  });
}

BigRational power_of(long d, int e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(std::abs(e)));
  return e >= 0 ? BigRational(p) : BigRational(1) / BigRational(p);
}

}  // namespace

MomentRatfunPolynomial iz_moment_exact(int q, int threads) {
  check_order(q);
  MomentRatfunPolynomial r;
  for (const auto& [key, count] : moment_pairs(q, threads))
    r.add_term(key.mono, RationalFunctionD::d_power(key.dexp) * RationalFunctionD(count) * wg_ratfun(key.types.front()));
  return r;
}

MomentPolynomial iz_moment_at(int q, long d, int threads) {
  check_order(q);
  if (d < 1) throw PreconditionError("dimension must be positive");
  MomentPolynomial r;
  for (const auto& [key, count] : moment_pairs(q, threads))
    r.add_term(key.mono, power_of(d, key.dexp) * BigRational(count) * wg_any_dimension(key.types.front(), d));
  return r;
}

MomentRatfunPolynomial iz_cumulant_exact(int q, int threads) {
  check_order(q);
  MomentRatfunPolynomial r;
  for (const auto& [key, count] : cumulant_pairs(q, threads, false))
    r.add_term(key.mono, RationalFunctionD::d_power(key.dexp) * RationalFunctionD(count) * cached_relative_cumulant(key.types));
  return r;
}

MomentPolynomial limit_at_infinity(const MomentRatfunPolynomial& p) {
  MomentPolynomial r;
  for (const auto& [mono, c] : p.terms()) {
    if (c.degree() > 0) throw DomainError("coefficient of " + mono.to_string() + " grows with d: " + c.to_string());
    r.add_term(mono, laurent_expand(c, 0).coefficient(0));
  }
  return r;
}

MomentPolynomial iz_cumulant_limit(int q, GammaSource source, int threads) {
  check_order(q);
  if (source == GammaSource::enumeration && q > 6)
    throw CostGuardError("gamma enumeration is limited to q <= 6; use the closed form");
  std::map<std::vector<IntegerPartition>, BigRational> weights;
  MomentPolynomial r;
  for (const auto& [key, count] : cumulant_pairs(q, threads, true)) {
    auto it = weights.find(key.types);
    if (it == weights.end()) {
      const auto [pi, rho] = representative(key.types);
      const BigRational g = source == GammaSource::enumeration
                                ? BigRational(gamma_transitive(rho, pi, leading_order(rho, pi)))
                                : schaeffer_leading(rho, pi);
      it = weights.emplace(key.types, g).first;
    }
    r.add_term(key.mono, BigRational(count) * it->second);
  }
  return r;
}

MomentPolynomial rank_one_limit(int q, int threads) {
  if (q > 7) throw CostGuardError("rank-one limit is limited to q <= 7");
  const auto exact = iz_cumulant_exact(q, threads);
  MomentRatfunPolynomial scaled;
  for (const auto& [mono, c] : exact.terms())
    scaled.add_term(XYMonomial{{}, mono.y}, c * RationalFunctionD::d_power(1 - static_cast<int>(mono.x.size())));
  return limit_at_infinity(scaled);
}

std::vector<BigRational> power_moments(const std::vector<BigRational>& spectrum, int order) {
  if (spectrum.empty()) throw PreconditionError("empty spectrum");
  std::vector<BigRational> m;
  for (int k = 1; k <= order; ++k) {
    BigRational s = 0;
    for (const auto& v : spectrum) {
      BigRational p = 1;
      for (int j = 0; j < k; ++j) p *= v;
      s += p;
    }
    m.push_back(s / BigRational(static_cast<long>(spectrum.size())));
  }
  return m;
}

BigRational evaluate_moments(const MomentPolynomial& p, const std::vector<BigRational>& xs,
                             const std::vector<BigRational>& ys) {
  auto at = [](const std::vector<BigRational>& v, int k) -> const BigRational& {
    if (k < 1 || k > static_cast<int>(v.size())) throw PreconditionError("moment " + std::to_string(k) + " not supplied");
    return v[static_cast<std::size_t>(k - 1)];
  };
  BigRational acc = 0;
  for (const auto& [mono, c] : p.terms()) {
    BigRational t = c;
    for (int k : mono.x) t *= at(xs, k);
    for (int k : mono.y) t *= at(ys, k);
    acc += t;
  }
  return acc;
}

BigRational iz_cumulant_at(int q, const std::vector<BigRational>& x, const std::vector<BigRational>& y, int threads) {
  check_order(q);
  if (x.size() != y.size()) throw DegreeMismatchError("spectra of different sizes");
  const long d = static_cast<long>(x.size());
  const auto xs = power_moments(x, q), ys = power_moments(y, q);
  std::vector<BigRational> m;
  for (int k = 1; k <= q; ++k) m.push_back(evaluate_moments(iz_moment_at(k, d, threads), xs, ys));
  MomentAssignment<BigRational> same = [&](Block b) { return m[static_cast<std::size_t>(popcount(b) - 1)]; };
  return classical_cumulant(SetPartition::coarsest(q), same) * power_of(d, 2 * q);
}

std::complex<long double> hciz_determinant(const std::vector<long double>& x, const std::vector<long double>& y,
                                           std::complex<long double> z) {
  using C = std::complex<long double>;
  if (x.size() != y.size()) throw DegreeMismatchError("spectra of different sizes");
  if (x.empty()) throw PreconditionError("empty spectrum");
  const long d = static_cast<long>(x.size());
  long double vx = 1, vy = 1;
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j) {
      vx *= x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)];
      vy *= y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(i)];
    }
  if (vx == 0 || vy == 0) throw PreconditionError("repeated eigenvalues: the confluent case is not supported");
  if (z == C(0)) return 1;
  const C t = z * static_cast<long double>(d);
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> m(d, d);
  long double shift = 0;
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) shift = std::max(shift, (t * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)]).real());
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) m(i, j) = std::exp(t * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] - shift);
  long double log_const = 0;
  for (long p = 2; p < d; ++p) log_const += std::log(static_cast<long double>(p)) * static_cast<long double>(d - p);
  const C log_value = std::log(m.partialPivLu().determinant()) + static_cast<long double>(d) * shift + log_const -
                      static_cast<long double>(d * (d - 1) / 2) * std::log(t) - std::log(C(vx * vy));
  return std::exp(log_value);
}

SeriesReport iz_series_vs_determinant(const std::vector<BigRational>& x, const std::vector<BigRational>& y,
                                      const std::vector<long double>& zs, int order) {
  if (order < 1 || order > 5) throw PreconditionError("series order must be in 1..5");
  SeriesReport rep;
  rep.order = order;
  for (int q = 1; q <= order; ++q) rep.cumulants.push_back(iz_cumulant_at(q, x, y));
  std::vector<long double> xl, yl;
  for (const auto& v : x) xl.push_back(static_cast<long double>(v.get_d()));
  for (const auto& v : y) yl.push_back(static_cast<long double>(v.get_d()));
  for (long double z : zs) {
    long double series = 0, zp = 1, fact = 1;
    for (int q = 1; q <= order; ++q) {
      zp *= z;
      fact *= q;
      series += static_cast<long double>(rep.cumulants[static_cast<std::size_t>(q - 1)].get_d()) * zp / fact;
    }
    const auto lhs = std::log(hciz_determinant(xl, yl, z));
    SeriesPoint pt;
    pt.z = z;
    pt.residual = std::abs(lhs - std::complex<long double>(series));
    pt.scaled = z == 0 ? 0 : pt.residual / std::pow(std::abs(z), static_cast<long double>(order + 1));
    rep.max_residual = std::max(rep.max_residual, pt.residual);
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace hw
