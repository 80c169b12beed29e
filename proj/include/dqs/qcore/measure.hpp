#pragma once

#include "dqs/qcore/channel.hpp"
#include "dqs/qcore/rng.hpp"

namespace dqs::qcore {

struct MeasurementResult {
  double eigenvalue = 0.0;
  std::size_t outcome = 0;  ///< index into Observable::eigenvalues()
  double probability = 0.0;
  DensityMatrix post_state;
};

/// Re Tr[A ρ] without forming the product.
inline double trace_product_real(const Matrix& a, const Matrix& rho) {
  return (a.cwiseProduct(rho.transpose())).sum().real();
}

inline std::vector<double> outcome_probabilities(const Observable& obs, const DensityMatrix& rho) {
  if (obs.dim() != rho.dim()) throw DimensionError("measure: observable and state dimensions differ");
  std::vector<double> probs;
  probs.reserve(obs.projectors().size());
  for (const auto& p : obs.projectors()) probs.push_back(std::max(0.0, trace_product_real(p, rho.matrix())));
  return probs;
}

inline double expectation(const Observable& obs, const DensityMatrix& rho) {
  if (obs.dim() != rho.dim()) throw DimensionError("expectation: observable and state dimensions differ");
  return trace_product_real(obs.matrix(), rho.matrix());
}

inline double expectation(const Matrix& op, const DensityMatrix& rho) {
  if (std::size_t(op.rows()) != rho.dim()) throw DimensionError("expectation: operator and state dimensions differ");
  return trace_product_real(op, rho.matrix());
}

struct Sample {
  double eigenvalue = 0.0;
  std::size_t outcome = 0;
  double probability = 0.0;
};

/// Born-rule outcome sampling without the post-measurement state; consumes exactly one uniform draw.
inline Sample sample(const Observable& obs, const DensityMatrix& rho, Rng& rng) {
  const auto probs = outcome_probabilities(obs, rho);
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  const double u = rng.uniform() * total;
  std::size_t k = 0;
  double acc = probs[0];
  while (u >= acc && k + 1 < probs.size()) acc += probs[++k];
  // never pick a zero-probability outcome because of round-off at the boundary
  while (probs[k] <= 0.0 && k > 0) --k;
  return {obs.eigenvalues()[k], k, probs[k] / total};
}

/// Projective measurement with Born-rule sampling and Lüders post-state; consumes exactly one uniform draw.
inline MeasurementResult measure(const Observable& obs, const DensityMatrix& rho, Rng& rng) {
  const auto s = sample(obs, rho, rng);
  const Matrix& proj = obs.projectors()[s.outcome];
  Matrix post = proj * rho.matrix() * proj;
  post /= post.trace().real();
  return {s.eigenvalue, s.outcome, s.probability, DensityMatrix::trusted(std::move(post))};
}

}  // namespace dqs::qcore
