#pragma once

#include "dqs/protocol/engine.hpp"

namespace dqs::protocol {

struct EquivalenceReport {
  CheckResult entanglement;
  CheckResult mub;
  std::optional<EstimateResult> entanglement_estimate;
  std::optional<EstimateResult> mub_estimate;
  double fidelity_entanglement = 0.0;  ///< F̂
  double fidelity_from_mub = 0.0;      ///< ¼(1 + ½ Σ_P (2F̂_P − 1))
  double difference = 0.0;
  double sigma = 0.0;  ///< combined Monte Carlo standard deviation of the difference
  bool identity_holds = false;  ///< |difference| ≤ 4σ
  double epsilon = 0.0;         ///< entanglement threshold
  double epsilon_bar = 0.0;     ///< mub threshold, ε̄ = ε/√1.5
  bool decisions_match = false;
};

/// Runs both variants with the same seed and a fresh copy of the attack for each.
inline EquivalenceReport run_mub_equivalence(ProtocolConfig cfg, const adversary::AttackModel& attack) {
  EquivalenceReport rep;
  rep.epsilon = cfg.epsilon;
  rep.epsilon_bar = cfg.epsilon / std::sqrt(1.5);

  cfg.variant = Variant::entanglement;
  auto a1 = attack.clone();
  const Transcript te = run(cfg, *a1);
  cfg.variant = Variant::mub;
  cfg.epsilon = rep.epsilon_bar;
  auto a2 = attack.clone();
  const Transcript tm = run(cfg, *a2);

  rep.entanglement = check_fidelity(te);
  rep.mub = check_fidelity(tm);
  try {
    rep.entanglement_estimate = estimate_phase(te);
  } catch (const InsufficientData&) {
  }
  try {
    rep.mub_estimate = estimate_phase(tm);
  } catch (const InsufficientData&) {
  }
  if (!rep.entanglement.sufficient || !rep.mub.sufficient)
    throw InsufficientData("run_mub_equivalence: a variant lacks check rounds for some correlator");

  rep.fidelity_entanglement = rep.entanglement.fidelity;
  double sum = 0.0, var = 0.0;
  for (const auto& [k, c] : rep.mub.correlators) {
    sum += c.mean;
    var += stats::correlator_variance(c.mean, c.samples()) / 64.0;
  }
  rep.fidelity_from_mub = 0.25 * (1.0 + 0.5 * sum);
  for (const auto& [k, c] : rep.entanglement.correlators) var += stats::correlator_variance(c.mean, c.samples()) / 16.0;
  rep.difference = rep.fidelity_entanglement - rep.fidelity_from_mub;
  rep.sigma = std::sqrt(var);
  rep.identity_holds = std::abs(rep.difference) <= 4.0 * rep.sigma;
  rep.decisions_match = rep.entanglement.passed == rep.mub.passed;
  return rep;
}

}  // namespace dqs::protocol
