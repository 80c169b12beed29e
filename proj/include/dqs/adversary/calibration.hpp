#pragma once

#include "dqs/adversary/attacks.hpp"

#include <functional>

namespace dqs::adversary {

/// (1 + Σ stabilizer expectations)/4 of the resource state after `channel` acts on the joint A⊗B state.
inline double expected_check_fidelity(std::size_t n, const std::function<DensityMatrix(const DensityMatrix&)>& channel) {
  const auto frame = qcore::LogicalFrame::phase_aligned(n);
  const DensityMatrix out = channel(DensityMatrix(qcore::resource_state(frame)));
  double f = 1.0;
  for (auto term : qcore::kStabilizers) f += qcore::expectation(qcore::stabilizer(frame, term), out);
  return f / 4.0;
}

/// Exact expected check fidelity of an attack acting only on the forward leg, averaged over Eve's
/// randomness by Monte Carlo when the attack is stochastic (`samples` draws; 1 suffices for channels).
inline double expected_check_fidelity(const AttackModel& attack, std::size_t n, std::size_t samples = 1, std::uint64_t seed = 1) {
  auto a = attack.clone();
  RegisterLayout layout{2, n, a->memory_qubits(n)};
  a->prepare(layout);
  const auto frame = qcore::LogicalFrame::phase_aligned(n);
  const DensityMatrix ideal(qcore::resource_state(frame));
  Rng eve = Rng::derived(seed, 1);
  double total = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const DensityMatrix joint = DensityMatrix::trusted(qcore::kron(ideal.matrix(), a->memory_state(0).matrix()));
    const DensityMatrix out = a->forward(joint, eve);
    const std::vector<std::size_t> dims{2, layout.probe_dim(), layout.memory_dim()};
    const DensityMatrix ab = qcore::reduced_state(out, dims, {0, 1});
    double f = 1.0;
    for (auto term : qcore::kStabilizers) f += qcore::expectation(qcore::stabilizer(frame, term), ab);
    total += f / 4.0;
  }
  return total / double(samples);
}

/// Depolarizing strength giving the target expected check fidelity, by bisection to 1e-10.
inline double calibrate_depolarizing(double target_fidelity, std::size_t n = 1, double tolerance = 1e-10) {
  const auto fid = [n](double p) {
    return expected_check_fidelity(n, [&](const DensityMatrix& rho) {
      const std::vector<std::size_t> dims{2, qcore::qubit_dim(n)};
      return qcore::depolarize_subsystem(rho, dims, 1, p);
    });
  };
  double lo = 0.0, hi = 1.0;
  const double f_lo = fid(lo), f_hi = fid(hi);
  if (target_fidelity > f_lo + 1e-12 || target_fidelity < f_hi - 1e-12)
    throw ConfigError("calibrate_depolarizing: target fidelity outside the reachable range");
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (fid(mid) > target_fidelity ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace dqs::adversary
