// Library walkthrough: one attacked run, its check and estimate, and the matching bounds.

#include "dqs/adversary.hpp"
#include "dqs/metrics.hpp"
#include "dqs/protocol.hpp"

#include <cstdio>

int main() {
  using namespace dqs;

  protocol::ProtocolConfig cfg;
  cfg.variant = Variant::entanglement;
  cfg.n = 1;
  cfg.rounds = 50000;
  cfg.p_check = 0.5;
  cfg.p_estimate = 0.5;
  cfg.p_discard = 0.0;
  cfg.epsilon = 0.251;
  cfg.phi = 0.6;
  cfg.seed = 42;

  // depolarizing strength that puts the expected check fidelity at 0.937
  const double p = adversary::calibrate_depolarizing(0.937);
  adversary::DepolarizingAttack attack(p);
  const auto transcript = protocol::run(cfg, attack);

  const auto check = protocol::check_fidelity(transcript);
  const auto estimate = protocol::estimate_phase(transcript);
  std::printf("depolarizing p = %.6f\n", p);
  std::printf("N_c = %llu, N_e = %llu\n", (unsigned long long)transcript.counts.checks,
              (unsigned long long)transcript.counts.estimations);
  std::printf("F_hat = %.4f (threshold %.4f) -> %s, eps_implied = %.4f\n", check.fidelity, check.threshold,
              check.passed ? "pass" : "abort", check.epsilon_implied);
  std::printf("phi_hat = %.4f +- %.4f (true %.4f)%s\n", estimate.phi_hat, estimate.standard_error, cfg.phi,
              estimate.trusted ? "" : " [untrusted]");

  metrics::Epsilon0Input in;
  in.mode = BoundMode::one_way_individual;
  in.variant = cfg.variant;
  in.threshold = check.epsilon_implied;
  in.n = cfg.n;
  in.phi = cfg.phi;
  const auto bounds = metrics::evaluate_bounds(in, transcript.counts.estimations);
  std::printf("eps0 = %.4f, bias bound = %.4f, variance bound = %.3g\n", bounds.epsilon0, bounds.bias_bound, bounds.variance_bound);
  return 0;
}
