#pragma once

// Haar-distributed unitary matrices and Monte Carlo estimates of word moments
// and monomial integrals, with z-scores against the exact values.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hw/haar_moments.hpp"

namespace hw {

struct SamplerConfig {
  long d = 1;
  std::uint64_t seed = 0;
  long samples = 1;
  int threads = 1;
};

/// The unitary number `stream` of sample `index`: Ginibre matrix, Householder QR,
/// and the phases of diag(R) moved onto Q. Deterministic in (seed, index, stream).
Eigen::MatrixXcd haar_unitary(long d, std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0);

struct EstimateReport {
  std::complex<double> mean;
  double std_error = 0;
  long samples = 0;
  std::optional<double> exact;
  std::optional<double> z_score;  // |mean - exact| / std_error
};

/// Mean of f(0), ..., f(n-1) with compensated sums over fixed-size chunks, so
/// the result does not depend on the number of threads.
EstimateReport estimate(const std::function<std::complex<double>(std::uint64_t)>& f, long n, int threads = 1);
void attach_exact(EstimateReport& r, double exact);

/// Value of the word on one sample; unitaries are drawn per distinct name.
std::complex<double> evaluate_word_sample(const Word& w, const ConstantMatrices& constants, long d,
                                          std::uint64_t seed, std::uint64_t index);

/// Estimate of E(word) with the exact value from word_expectation_at.
EstimateReport estimate_word(const Word& w, const ConstantMatrices& constants, const SamplerConfig& cfg);
/// Estimate of a monomial integral with the exact value from monomial_integral.
EstimateReport estimate_monomial(const MonomialSpec& spec, const SamplerConfig& cfg);
/// Wg(mu, d) as the monomial integral with rows 1..q and columns permuted by a permutation of type mu.
MonomialSpec wg_monomial(const IntegerPartition& mu, long d);

struct DecayFit {
  std::vector<long> dims;
  std::vector<double> variances;
  double slope = 0;  // least squares slope of log variance against log d
  bool degenerate = false;
};

/// Empirical variance of the word at each d; constants(d) supplies the matrices.
DecayFit variance_decay_fit(const Word& w, const std::vector<long>& dims,
                            const std::function<ConstantMatrices(long)>& constants, const SamplerConfig& cfg);

}  // namespace hw
