#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dqs::stats {

/// Coincidence counts N_ij for outcome pair (i, j), i, j ∈ {0, 1} (0 ↔ eigenvalue +1).
struct CountsTable {
  std::array<std::array<std::uint64_t, 2>, 2> N{};

  void add(int i, int j) { ++N[std::size_t(i)][std::size_t(j)]; }
  /// Record a pair of ±1 eigenvalues.
  void add_signs(int a, int b) { add(a > 0 ? 0 : 1, b > 0 ? 0 : 1); }
  std::uint64_t total() const { return N[0][0] + N[0][1] + N[1][0] + N[1][1]; }
};

/// Σ (−1)^{i+j} N_ij / Σ N_ij.
inline double correlator(const CountsTable& c) {
  const auto total = c.total();
  if (total == 0) throw std::invalid_argument("correlator: empty counts table");
  const double signed_sum = double(c.N[0][0]) + double(c.N[1][1]) - double(c.N[0][1]) - double(c.N[1][0]);
  return signed_sum / double(total);
}

/// Binomial variance of a correlator estimate from `count` ±1 samples: (1 − c²)/count.
inline double correlator_variance(double c, std::uint64_t count) {
  if (count == 0) throw std::invalid_argument("correlator_variance: no samples");
  return std::max(0.0, 1.0 - c * c) / double(count);
}

/// (Δ²₁ + Δ²₂) / (4(4 − s²)) for the half-arccos estimator of s/2; +∞ at |s| = 2.
inline double phase_variance(std::pair<double, double> variances, double mean_sum) {
  if (std::abs(mean_sum) > 2.0) throw std::invalid_argument("phase_variance: |mean_sum| exceeds 2");
  const double denom = 4.0 * (4.0 - mean_sum * mean_sum);
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return (variances.first + variances.second) / denom;
}

/// Pairwise summation: fixed association order independent of thread count.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

inline double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty input");
  return pairwise_sum(v) / double(v.size());
}

/// Unbiased sample variance (n − 1 denominator); 0 for a single value.
inline double sample_variance(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("sample_variance: empty input");
  if (v.size() == 1) return 0.0;
  const double m = mean(v);
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - m) * (v[i] - m);
  return pairwise_sum(sq) / double(v.size() - 1);
}

struct BatchStatistics {
  double mean = 0.0;
  double variance_of_mean = 0.0;  ///< batch_variance / batches
  double batch_variance = 0.0;    ///< sample variance of the batch means
  std::size_t batches = 0;
  std::size_t batch_size = 0;
  std::size_t dropped = 0;  ///< trailing values not fitting an equal-size batch
  std::vector<double> batch_means;
};

/// Splits values into equal consecutive batches (remainder dropped) and reduces across batches.
inline BatchStatistics batch_statistics(std::span<const double> values, std::size_t batches) {
  if (batches < 2) throw std::invalid_argument("batch_statistics: need at least two batches");
  if (values.size() < batches) throw std::invalid_argument("batch_statistics: fewer values than batches");
  BatchStatistics r;
  r.batches = batches;
  r.batch_size = values.size() / batches;
  r.dropped = values.size() - r.batch_size * batches;
  r.batch_means.resize(batches);
  for (std::size_t b = 0; b < batches; ++b) r.batch_means[b] = mean(values.subspan(b * r.batch_size, r.batch_size));
  r.mean = mean(r.batch_means);
  r.batch_variance = sample_variance(r.batch_means);
  r.variance_of_mean = r.batch_variance / double(batches);
  return r;
}

/// One row of a bound-vs-empirical sweep.
struct SweepPoint {
  double theta = 0.0;  ///< swept value
  double phi = 0.0;
  double phi_hat_mean = 0.0;
  double phi_hat_var = 0.0;
  double bias_vs_ideal = 0.0;
  double var_discrepancy = 0.0;
  double bound_bias = 0.0;
  double bound_var = 0.0;
};

}  // namespace dqs::stats
