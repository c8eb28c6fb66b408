#include "hw/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "hw/errors.hpp"

namespace hw {

Eigen::MatrixXcd haar_unitary(long d, std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  if (d < 1) throw PreconditionError("dimension must be positive");
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(index), hi(index), lo(stream), hi(stream)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd g(d, d);
  for (long c = 0; c < d; ++c)
    for (long r = 0; r < d; ++r) {
      const double re = normal(rng);
      g(r, c) = {re, normal(rng)};
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (long k = 0; k < d; ++k) {
    const double a = std::abs(r(k, k));
    q.col(k) *= a > 0 ? r(k, k) / a : std::complex<double>(1);
  }
  return q;
}

namespace {

struct Kahan {
  double sum = 0, comp = 0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct ChunkSums {
  Kahan re, im, sq;
};

constexpr long chunk_size = 512;

}  // namespace

EstimateReport estimate(const std::function<std::complex<double>(std::uint64_t)>& f, long n, int threads) {
  if (n < 1) throw PreconditionError("need at least one sample");
  const long chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<ChunkSums> sums(static_cast<std::size_t>(chunks));
  auto work = [&](long first, long stride) {
    for (long c = first; c < chunks; c += stride) {
      auto& s = sums[static_cast<std::size_t>(c)];
      for (long i = c * chunk_size; i < std::min(n, (c + 1) * chunk_size); ++i) {
        const auto v = f(static_cast<std::uint64_t>(i));
        s.re.add(v.real());
        s.im.add(v.imag());
        s.sq.add(std::norm(v));
      }
    }
  };
  const long workers = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (long w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  Kahan re, im, sq;
  for (const auto& s : sums) {
    re.add(s.re.sum);
    im.add(s.im.sum);
    sq.add(s.sq.sum);
  }
  EstimateReport r;
  r.samples = n;
  const double nn = static_cast<double>(n);
  r.mean = {re.sum / nn, im.sum / nn};
  if (n > 1) {
    const double var = std::max(0.0, (sq.sum - nn * std::norm(r.mean)) / (nn - 1));
    r.std_error = std::sqrt(var / nn);
  }
  return r;
}

void attach_exact(EstimateReport& r, double exact) {
  r.exact = exact;
  const double diff = std::abs(r.mean - std::complex<double>(exact));
  if (r.std_error > 0) r.z_score = diff / r.std_error;
  else r.z_score = diff < 1e-12 ? 0.0 : INFINITY;
}

std::complex<double> evaluate_word_sample(const Word& w, const ConstantMatrices& constants, long d,
                                          std::uint64_t seed, std::uint64_t index) {
  std::map<std::string, Eigen::MatrixXcd> unitaries;
  std::map<std::string, Eigen::MatrixXcd> fixed;
  for (const auto& l : w.letters()) {
    if (l.kind == Letter::Kind::unitary) {
      if (!unitaries.count(l.name)) unitaries[l.name];
      continue;
    }
    if (l.name == "I" || fixed.count(l.name)) continue;
    auto it = constants.find(l.name);
    if (it == constants.end()) throw PreconditionError("no matrix given for constant '" + l.name + "'");
    if (it->second.n != d) throw DegreeMismatchError("constant '" + l.name + "' has the wrong size");
    Eigen::MatrixXcd m(d, d);
    for (long r = 0; r < d; ++r)
      for (long c = 0; c < d; ++c) m(r, c) = it->second(r, c).get_d();
    fixed[l.name] = m;
  }
  std::uint64_t stream = 0;
  for (auto& [name, u] : unitaries) u = haar_unitary(d, seed, index, stream++);

  std::complex<double> value = 1;
  for (const auto& t : w.traces()) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(d, d);
    for (const auto& l : t) {
      Eigen::MatrixXcd m;
      if (l.kind == Letter::Kind::unitary) {
        m = l.exponent > 0 ? unitaries[l.name] : Eigen::MatrixXcd(unitaries[l.name].adjoint());
      } else {
        m = l.name == "I" ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(d, d)) : fixed[l.name];
        if (l.adjoint) m = m.adjoint().eval();
        if (l.centered) m -= (m.trace() / static_cast<double>(d)) * Eigen::MatrixXcd::Identity(d, d);
      }
      p = p * m;
    }
    value *= p.trace() / static_cast<double>(d);
  }
  return value;
}

EstimateReport estimate_word(const Word& w, const ConstantMatrices& constants, const SamplerConfig& cfg) {
  auto r = estimate([&](std::uint64_t i) { return evaluate_word_sample(w, constants, cfg.d, cfg.seed, i); },
                    cfg.samples, cfg.threads);
  attach_exact(r, word_expectation_at(w, constants, cfg.d).get_d());
  return r;
}

EstimateReport estimate_monomial(const MonomialSpec& s, const SamplerConfig& cfg) {
  const BigRational exact = monomial_integral(s);
  auto r = estimate(
      [&](std::uint64_t i) {
        const auto u = haar_unitary(s.d, cfg.seed, i);
        std::complex<double> v = 1;
        for (std::size_t k = 0; k < s.i.size(); ++k) v *= u(s.i[k] - 1, s.j[k] - 1);
        for (std::size_t k = 0; k < s.ip.size(); ++k) v *= std::conj(u(s.ip[k] - 1, s.jp[k] - 1));
        return v;
      },
      cfg.samples, cfg.threads);
  attach_exact(r, exact.get_d());
  return r;
}

MonomialSpec wg_monomial(const IntegerPartition& mu, long d) {
  const auto p = Permutation::representative(mu);
  MonomialSpec s;
  s.d = d;
  for (int k = 0; k < p.degree(); ++k) {
    s.i.push_back(k + 1);
    s.j.push_back(k + 1);
    s.ip.push_back(k + 1);
    s.jp.push_back(p(k) + 1);
  }
  return s;
}

DecayFit variance_decay_fit(const Word& w, const std::vector<long>& dims,
                            const std::function<ConstantMatrices(long)>& constants, const SamplerConfig& cfg) {
  if (dims.size() < 3) throw PreconditionError("the fit needs at least three dimensions");
  DecayFit fit;
  fit.dims = dims;
  for (long d : dims) {
    const auto cm = constants(d);
    const auto r = estimate([&](std::uint64_t i) { return evaluate_word_sample(w, cm, d, cfg.seed, i); }, cfg.samples,
                            cfg.threads);
    const double var = r.std_error * r.std_error * static_cast<double>(r.samples);
    fit.variances.push_back(var);
    if (var < 1e-24) fit.degenerate = true;
  }
  if (fit.degenerate) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const double x = std::log(static_cast<double>(dims[k])), y = std::log(fit.variances[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace hw
