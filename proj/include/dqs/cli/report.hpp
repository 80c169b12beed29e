#pragma once

#include "dqs/cli/scenario.hpp"
#include "dqs/metrics/bounds.hpp"
#include "dqs/metrics/suites.hpp"
#include "dqs/protocol.hpp"
#include "dqs/stats.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <atomic>
#include <exception>
#include <ostream>
#include <thread>

namespace dqs::cli {

using json = nlohmann::ordered_json;

/// One CSV line of a sweep.
struct ReportRow {
  double theta = 0.0;  ///< value of the swept variable
  double phi = 0.0;
  double F_hat = 0.0;
  double epsilon_implied = 0.0;
  bool passed = false;
  double phi_hat = 0.0;
  double phi_hat_se = 0.0;
  double bias_emp = 0.0;
  double bias_bound = 0.0;
  double var_emp = 0.0;
  double var_discrepancy = 0.0;
  double var_bound = 0.0;
  BoundMode mode = BoundMode::one_way_individual;
  Variant variant = Variant::entanglement;
};

inline constexpr const char* kCsvHeader =
    "theta,phi,F_hat,epsilon_implied,passed,phi_hat,phi_hat_se,bias_emp,bias_bound,var_emp,var_discrepancy,var_bound,mode,variant";

inline std::string csv_number(double v) { return fmt::format("{}", v); }

inline void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows)
    os << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_number(r.theta), csv_number(r.phi), csv_number(r.F_hat),
                      csv_number(r.epsilon_implied), r.passed ? "true" : "false", csv_number(r.phi_hat), csv_number(r.phi_hat_se),
                      csv_number(r.bias_emp), csv_number(r.bias_bound), csv_number(r.var_emp), csv_number(r.var_discrepancy),
                      csv_number(r.var_bound), to_string(r.mode), to_string(r.variant));
}

/// Finite numbers as numbers, ±inf and NaN as strings (JSON has no literal for them).
inline json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline json config_json(const protocol::ProtocolConfig& c) {
  return json{{"variant", to_string(c.variant)},
              {"direction", to_string(c.direction)},
              {"n", c.n},
              {"rounds", c.rounds},
              {"p_check", c.p_check},
              {"p_estimate", c.p_estimate},
              {"p_discard", c.p_discard},
              {"epsilon", c.epsilon},
              {"phi", c.phi},
              {"seed", c.seed},
              {"config_hash", protocol::detail::hex64(protocol::config_hash(c))}};
}

inline json attack_json(const adversary::AttackSpec& a) {
  json params = json::object();
  for (const auto& [k, v] : a.params) params[k] = v;
  return json{{"name", a.name}, {"params", params}};
}

inline json check_json(const protocol::CheckResult& c) {
  json corr = json::object();
  for (const auto& [k, e] : c.correlators) corr[k] = json{{"mean", number(e.mean)}, {"samples", e.samples()}};
  json j{{"sufficient", c.sufficient},
         {"F_hat", number(c.fidelity)},
         {"threshold", c.threshold},
         {"passed", c.passed},
         {"epsilon_implied", number(c.epsilon_implied)},
         {"correlators", corr}};
  if (c.variant == Variant::mub) {
    json by = json::object();
    for (const auto& [k, f] : c.fidelity_by_label) by[k] = number(f);
    j["F_hat_by_label"] = by;
  }
  return j;
}

inline json estimate_json(const protocol::EstimateResult& e) {
  json means = json::object();
  for (const auto& [k, m] : e.correlator_means) means[k] = number(m);
  return json{{"phi_hat", e.phi_hat},
              {"standard_error", number(e.standard_error)},
              {"pooled_correlator", e.pooled_correlator},
              {"correlators", means},
              {"trusted", e.trusted}};
}

inline json counts_json(const protocol::RoundCounts& c) {
  return json{{"N_c", c.checks}, {"N_e", c.estimations}, {"N_d", c.discarded}, {"sifted_out", c.sifted_out}, {"leaks", c.leaks}};
}

/// Summary of one protocol execution: F̂, pass/fail, φ̂, standard error, ε_implied.
inline json run_summary(const protocol::Transcript& t, const adversary::AttackSpec& attack) {
  json j{{"config", config_json(t.config)}, {"attack", attack_json(attack)}, {"counts", counts_json(t.counts)}};
  j["check"] = check_json(protocol::check_fidelity(t));
  try {
    j["estimate"] = estimate_json(protocol::estimate_phase(t));
  } catch (const protocol::InsufficientData&) {
    j["estimate"] = nullptr;
  }
  j["aborted"] = t.aborted;
  if (t.eve && t.eve->phi_hat_eve)
    j["eve"] = json{{"phi_hat", *t.eve->phi_hat_eve}, {"standard_error", number(t.eve->standard_error)}, {"samples", t.eve->samples_used}};
  return j;
}

inline json bound_json(const metrics::BoundReport& b) {
  return json{{"mode", to_string(b.mode)},
              {"variant", to_string(b.variant)},
              {"phi", b.phi},
              {"n", b.n},
              {"T", b.T},
              {"N_d", b.N_d},
              {"N_e", b.N_e},
              {"f", b.f_applicable ? number(b.f_value) : json(nullptr)},
              {"epsilon0", number(b.epsilon0)},
              {"bias_bound", number(b.bias_bound)},
              {"variance_bound", number(b.variance_bound)},
              {"delta", b.delta}};
}

inline json suite_json(const metrics::SuiteResult& s) {
  return json{{"name", s.name}, {"cases", s.cases}, {"violations", s.violations}, {"worst_slack", number(s.worst_slack)}};
}

inline json equivalence_json(const protocol::EquivalenceReport& r) {
  json j{{"F_hat_entanglement", r.fidelity_entanglement},
         {"F_hat_from_mub", r.fidelity_from_mub},
         {"difference", r.difference},
         {"sigma", r.sigma},
         {"identity_holds", r.identity_holds},
         {"epsilon", r.epsilon},
         {"epsilon_bar", r.epsilon_bar},
         {"passed_entanglement", r.entanglement.passed},
         {"passed_mub", r.mub.passed},
         {"decisions_match", r.decisions_match}};
  json by = json::object();
  for (const auto& [k, f] : r.mub.fidelity_by_label) by[k] = number(f);
  j["F_hat_by_label"] = by;
  return j;
}

/// Bound mode must agree with the protocol direction.
inline void require_compatible(BoundMode mode, Direction direction) {
  const bool two_way_mode = mode == BoundMode::two_way_gc;
  if (two_way_mode != (direction == Direction::two_way))
    throw SchemaError(std::string("bound mode ") + std::string(to_string(mode)) + " does not apply to direction " +
                      std::string(to_string(direction)));
}

/// Protocol configuration and attack of sweep point i. Point seeds are seed + i.
inline std::pair<protocol::ProtocolConfig, adversary::AttackSpec> sweep_point_setup(const Scenario& s, std::size_t i) {
  auto cfg = s.protocol;
  auto spec = s.attack;
  const double v = s.sweep->value(i);
  if (s.sweep->sweeps_phi())
    cfg.phi = v;
  else
    spec.params[s.sweep->attack_parameter()] = protocol::format_double(v);
  cfg.seed = s.protocol.seed + i;
  return {cfg, spec};
}

/// Twin runs (ideal and attacked, shared seed) at one sweep point; bounds use ε_implied of the attacked run.
inline ReportRow sweep_point(const Scenario& s, std::size_t i) {
  const auto& sw = *s.sweep;
  const auto [cfg, spec] = sweep_point_setup(s, i);
  adversary::IdentityAttack ideal_attack;
  auto attack = adversary::make_attack(spec, cfg.n, cfg.direction);
  const auto ideal = protocol::run(cfg, ideal_attack);
  const auto attacked = protocol::run(cfg, *attack);

  ReportRow row;
  row.theta = sw.value(i);
  row.phi = cfg.phi;
  row.mode = sw.mode;
  row.variant = cfg.variant;
  const auto chk = protocol::check_fidelity(attacked);
  row.F_hat = chk.fidelity;
  row.epsilon_implied = chk.epsilon_implied;
  row.passed = chk.passed;
  const auto est = protocol::estimate_phase(attacked);
  row.phi_hat = est.phi_hat;
  row.phi_hat_se = est.standard_error;

  const auto wi = protocol::windowed_estimates(ideal, sw.windows);
  const auto wa = protocol::windowed_estimates(attacked, sw.windows);
  const auto bi = stats::batch_statistics(wi.phi_hats, sw.windows);
  const auto ba = stats::batch_statistics(wa.phi_hats, sw.windows);
  row.bias_emp = std::abs(ba.mean - bi.mean);
  row.var_emp = ba.batch_variance;
  row.var_discrepancy = std::abs(ba.batch_variance - bi.batch_variance);

  if (!chk.sufficient) {
    row.bias_bound = row.var_bound = metrics::kInfinity;
    return row;
  }
  metrics::Epsilon0Input in;
  in.mode = sw.mode;
  in.variant = cfg.variant;
  in.threshold = chk.epsilon_implied;
  in.T = cfg.rounds;
  in.N_d = attacked.counts.discarded;
  in.n = cfg.n;
  in.phi = cfg.phi;
  const auto b = metrics::evaluate_bounds(in, std::max<std::uint64_t>(1, wa.window_size));
  row.bias_bound = b.bias_bound;
  row.var_bound = b.variance_bound;
  return row;
}

/// Runs f(i) for i in [0, count) on up to `threads` workers; results are kept in index order.
template <class Result, class F>
std::vector<Result> parallel_map(std::size_t count, unsigned threads, F f) {
  std::vector<Result> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, unsigned(count)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline std::vector<ReportRow> run_sweep(const Scenario& s, unsigned threads) {
  if (!s.sweep) throw SchemaError("sweep: scenario has no sweep block");
  require_compatible(s.sweep->mode, s.protocol.direction);
  if (!s.sweep->sweeps_phi() && s.attack.name == "identity") throw SchemaError("sweep: identity attack has no parameters to sweep");
  return parallel_map<ReportRow>(s.sweep->steps, threads, [&](std::size_t i) { return sweep_point(s, i); });
}

}  // namespace dqs::cli
