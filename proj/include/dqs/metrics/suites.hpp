#pragma once

#include "dqs/metrics/inequalities.hpp"
#include "dqs/qcore/random.hpp"

#include <string>
#include <vector>

namespace dqs::metrics {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t violations = 0;
  double worst_slack = kInfinity;  ///< smallest slack seen; negative means violated

  void record(const InequalityReport& r) {
    ++cases;
    if (!r.holds) ++violations;
    worst_slack = std::min(worst_slack, r.slack);
  }
};

struct SuiteOptions {
  std::uint64_t seed = 20240501;
  bool inject_violation = false;  ///< negate the Fuchs–van-de-Graaf check (harness self-test)
  std::size_t locc1_restarts = 4;
};

/// 1 − √F ≤ D ≤ √(1 − F) for 200 random pairs over dims {2, 4, 8}.
inline SuiteResult suite_fuchs_van_de_graaf(const SuiteOptions& opt) {
  SuiteResult s{"fuchs_van_de_graaf"};
  auto rng = Rng::derived(opt.seed, 1);
  const std::size_t dims[] = {2, 4, 8};
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t d = dims[i % 3];
    const auto rho = qcore::random_density_matrix(d, rng, 1 + i % d);
    const auto sigma = qcore::random_density_matrix(d, rng);
    const double f = qcore::fidelity(rho, sigma);
    const double dist = qcore::trace_distance(rho, sigma);
    auto lo = lower_check(dist, 1.0 - std::sqrt(f));
    auto hi = upper_check(dist, std::sqrt(std::max(0.0, 1.0 - f)));
    if (opt.inject_violation) {
      lo = upper_check(dist, 1.0 - std::sqrt(f) - 1e-3);
      hi = lower_check(dist, std::sqrt(std::max(0.0, 1.0 - f)) + 1e-3);
    }
    const bool ok = lo.holds && hi.holds;
    s.record({dist, dist, std::min(lo.slack, hi.slack), ok});
  }
  return s;
}

/// Tr[Eσ] ≥ Tr[Eτ] − 2D for 100 random triples at dim 4.
inline SuiteResult suite_gentle_measurement(const SuiteOptions& opt) {
  SuiteResult s{"gentle_measurement"};
  auto rng = Rng::derived(opt.seed, 2);
  for (std::size_t i = 0; i < 100; ++i) {
    const auto effect = qcore::random_effect(4, rng);
    const auto tau = qcore::random_density_matrix(4, rng);
    const auto sigma = qcore::random_density_matrix(4, rng);
    s.record(gentle_measurement_check(effect, tau, sigma));
  }
  return s;
}

/// |Tr[A(σ − σ')]| ≤ 2aK·D for A = A₁⊗I + I⊗A₂ on two qubits, a = max ||A_i||.
inline SuiteResult suite_uniform_continuity(const SuiteOptions& opt) {
  SuiteResult s{"uniform_continuity"};
  auto rng = Rng::derived(opt.seed, 3);
  for (std::size_t i = 0; i < 100; ++i) {
    const qcore::Matrix a1 = qcore::random_hermitian(2, rng), a2 = qcore::random_hermitian(2, rng);
    const qcore::Matrix a = qcore::kron(a1, qcore::identity(2)) + qcore::kron(qcore::identity(2), a2);
    const double norm = std::max(qcore::operator_norm(a1), qcore::operator_norm(a2));
    const auto sigma = qcore::random_density_matrix(4, rng);
    const auto sigma2 = qcore::random_density_matrix(4, rng);
    const double lhs = std::abs(qcore::trace_product_real(a, sigma.matrix() - sigma2.matrix()));
    s.record(upper_check(lhs, uniform_continuity_bound(norm, 2, qcore::trace_distance(sigma, sigma2))));
  }
  return s;
}

/// i.i.d. σ = ρ^{⊗m} with point-mass μ: LHS ≤ 1e-9 and LHS ≤ bound, for m ∈ {3, 4}, 1 ≤ k < m.
inline SuiteResult suite_definetti_iid(const SuiteOptions& opt) {
  SuiteResult s{"definetti_iid"};
  auto rng = Rng::derived(opt.seed, 4);
  Locc1Options lo;
  lo.restarts = opt.locc1_restarts;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto rho = qcore::random_density_matrix(2, rng);
    for (std::size_t m : {3, 4})
      for (std::size_t k = 1; k < m; ++k) {
        const auto sigma = qcore::DensityMatrix::trusted(qcore::kron_power(rho.matrix(), m));
        const auto r = definetti_inequality_check(sigma, m, k, ProductMixture{{1.0}, {rho}}, opt.seed + i, lo);
        s.record({r.lhs, r.rhs, std::min(r.slack, 1e-9 - r.lhs), r.holds && r.lhs <= 1e-9});
      }
  }
  return s;
}

/// D_LOCC₁ lower bound ≤ trace distance + 1e-9 for 50 random two-qubit pairs.
inline SuiteResult suite_locc1_vs_trace(const SuiteOptions& opt) {
  SuiteResult s{"locc1_vs_trace_distance"};
  auto rng = Rng::derived(opt.seed, 5);
  Locc1Options lo;
  lo.restarts = opt.locc1_restarts;
  for (std::size_t i = 0; i < 50; ++i) {
    const auto rho = qcore::random_density_matrix(4, rng);
    const auto sigma = qcore::random_density_matrix(4, rng);
    const double lb = locc1_lower_bound(rho, sigma, {2, 2}, opt.seed + 100 + i, lo).lower_bound;
    s.record(upper_check(lb, qcore::trace_distance(rho, sigma)));
  }
  return s;
}

inline std::vector<SuiteResult> run_property_suites(const SuiteOptions& opt = {}) {
  return {suite_fuchs_van_de_graaf(opt), suite_gentle_measurement(opt), suite_uniform_continuity(opt),
          suite_definetti_iid(opt), suite_locc1_vs_trace(opt)};
}

}  // namespace dqs::metrics
