#pragma once

#include "dqs/cli/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace dqs::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kSchema = 2, kAborted = 3, kIo = 4 };

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  bool strict_abort = false;
};

inline void write_text(const std::string& path, const std::string& content) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory '" + parent.string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

/// Writes to `path` when given, otherwise to `out`.
inline void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out) {
  if (path)
    write_text(*path, content);
  else
    out << content;
}

inline Scenario load_with_overrides(const std::string& path, const GlobalOptions& g) {
  auto s = load_scenario(path);
  if (g.seed) s.protocol.seed = *g.seed;
  return s;
}

inline int cmd_run(const std::string& path, const GlobalOptions& g, std::ostream& out) {
  const auto s = load_with_overrides(path, g);
  auto attack = adversary::make_attack(s.attack, s.protocol.n, s.protocol.direction);
  const auto t = protocol::run(s.protocol, *attack);
  if (s.output.transcript) write_text(*s.output.transcript, protocol::transcript_string(t));
  const auto summary = run_summary(t, s.attack).dump(2) + "\n";
  if (s.output.summary) write_text(*s.output.summary, summary);
  out << summary;
  return g.strict_abort && t.aborted ? kAborted : kOk;
}

inline int cmd_sweep(const std::string& path, const GlobalOptions& g, std::ostream& out) {
  const auto s = load_with_overrides(path, g);
  const auto rows = run_sweep(s, g.threads);
  std::ostringstream csv;
  write_csv(csv, rows);
  emit(s.output.csv, csv.str(), out);
  bool all_passed = true;
  for (const auto& r : rows) all_passed = all_passed && r.passed;
  if (s.output.summary) {
    json j{{"config", config_json(s.protocol)},
           {"attack", attack_json(s.attack)},
           {"sweep",
            {{"variable", s.sweep->variable},
             {"start", s.sweep->start},
             {"stop", s.sweep->stop},
             {"steps", s.sweep->steps},
             {"windows", s.sweep->windows},
             {"mode", to_string(s.sweep->mode)}}},
           {"points", rows.size()},
           {"all_passed", all_passed}};
    write_text(*s.output.summary, j.dump(2) + "\n");
  }
  return g.strict_abort && !all_passed ? kAborted : kOk;
}

struct BoundsRequest {
  std::string mode = "one_way_individual";
  std::string variant = "entanglement";
  double epsilon = 0.0;
  std::size_t n = 1;
  std::vector<double> phi;
  std::optional<double> phi_start, phi_stop;
  std::size_t phi_steps = 0;
  std::uint64_t T = 1;
  std::uint64_t N_d = 0;
  std::uint64_t N_e = 1;
  std::optional<std::string> out;
};

inline int cmd_bounds(const BoundsRequest& req, std::ostream& out) {
  metrics::Epsilon0Input in;
  in.mode = parse_bound_mode(req.mode);
  in.variant = parse_variant(req.variant);
  in.threshold = req.epsilon;
  in.n = req.n;
  in.T = req.T;
  in.N_d = req.N_d;
  if (in.n < 1) throw SchemaError("bounds: n must be at least 1");
  if (!(req.epsilon >= 0.0 && req.epsilon <= 1.0)) throw SchemaError("bounds: epsilon must lie in [0, 1]");
  std::vector<double> grid = req.phi;
  if (req.phi_steps > 0) {
    if (!req.phi_start || !req.phi_stop) throw SchemaError("bounds: --phi-steps needs --phi-start and --phi-stop");
    SweepSpec sp;
    sp.start = *req.phi_start;
    sp.stop = *req.phi_stop;
    sp.steps = req.phi_steps;
    for (std::size_t i = 0; i < sp.steps; ++i) grid.push_back(sp.value(i));
  }
  if (grid.empty()) throw SchemaError("bounds: give --phi or a --phi-start/--phi-stop/--phi-steps grid");
  json reports = json::array();
  for (double phi : grid) {
    in.phi = phi;
    try {
      reports.push_back(bound_json(metrics::evaluate_bounds(in, req.N_e)));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("bounds: ") + e.what());
    }
  }
  json j{{"mode", req.mode}, {"variant", req.variant}, {"epsilon", req.epsilon}, {"reports", reports}};
  emit(req.out, j.dump(2) + "\n", out);
  return kOk;
}

inline int cmd_verify(const GlobalOptions& g, bool inject_violation, const std::optional<std::string>& path, std::ostream& out) {
  metrics::SuiteOptions opt;
  if (g.seed) opt.seed = *g.seed;
  opt.inject_violation = inject_violation;
  const auto suites = metrics::run_property_suites(opt);
  json list = json::array();
  std::size_t violations = 0;
  for (const auto& s : suites) {
    list.push_back(suite_json(s));
    violations += s.violations;
  }
  json j{{"seed", opt.seed}, {"suites", list}, {"violations", violations}, {"passed", violations == 0}};
  emit(path, j.dump(2) + "\n", out);
  return violations == 0 ? kOk : kFailure;
}

/// Single scenario, or one report per grid point when a sweep block is present.
inline int cmd_equivalence(const std::string& path, const GlobalOptions& g, std::ostream& out) {
  const auto s = load_with_overrides(path, g);
  if (s.protocol.variant != Variant::entanglement)
    throw SchemaError("equivalence: protocol.variant must be entanglement (epsilon is the entanglement threshold)");
  const std::size_t points = s.sweep ? s.sweep->steps : 1;
  auto reports = parallel_map<protocol::EquivalenceReport>(points, g.threads, [&](std::size_t i) {
    auto cfg = s.protocol;
    auto spec = s.attack;
    if (s.sweep) std::tie(cfg, spec) = sweep_point_setup(s, i);
    const auto attack = adversary::make_attack(spec, cfg.n, cfg.direction);
    return protocol::run_mub_equivalence(cfg, *attack);
  });
  json list = json::array();
  bool holds = true, match = true, passed = true;
  for (std::size_t i = 0; i < points; ++i) {
    json j = s.sweep ? json{{"theta", s.sweep->value(i)}} : json::object();
    j.update(equivalence_json(reports[i]));
    list.push_back(j);
    holds = holds && reports[i].identity_holds;
    match = match && reports[i].decisions_match;
    passed = passed && reports[i].entanglement.passed && reports[i].mub.passed;
  }
  json j{{"config", config_json(s.protocol)},
         {"attack", attack_json(s.attack)},
         {"reports", list},
         {"identity_holds", holds},
         {"decisions_match", match}};
  const auto text = j.dump(2) + "\n";
  if (s.output.summary) write_text(*s.output.summary, text);
  out << text;
  return g.strict_abort && !passed ? kAborted : kOk;
}

/// Command-line entry point; returns the process exit code.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Distributed quantum sensing simulator"};
  app.name("dqs");
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "64-bit seed overriding the scenario seed");
  app.add_option("--threads", g.threads, "worker threads for sweep points")->check(CLI::Range(1u, 1024u));
  app.add_flag("--strict-abort", g.strict_abort, "exit with code 3 when a fidelity check fails");

  std::string scenario;
  auto* run = app.add_subcommand("run", "execute one scenario; write transcript and JSON summary");
  run->add_option("scenario", scenario, "scenario file")->required();
  auto* sweep = app.add_subcommand("sweep", "twin-run sweep; emit CSV report rows");
  sweep->add_option("scenario", scenario, "scenario file")->required();
  auto* equiv = app.add_subcommand("equivalence", "compare entanglement and mub checks on matched seeds");
  equiv->add_option("scenario", scenario, "scenario file")->required();

  BoundsRequest req;
  auto* bounds = app.add_subcommand("bounds", "evaluate ε₀ and bias/variance bounds over a φ grid");
  bounds->add_option("--mode", req.mode, "one_way_individual | one_way_gc | two_way_gc");
  bounds->add_option("--variant", req.variant, "entanglement | mub");
  bounds->add_option("--epsilon", req.epsilon, "threshold ε (entanglement) or ε̄ (mub)")->required();
  bounds->add_option("--n", req.n, "probe qubits");
  bounds->add_option("--phi", req.phi, "phase values")->delimiter(',');
  bounds->add_option("--phi-start", req.phi_start);
  bounds->add_option("--phi-stop", req.phi_stop);
  bounds->add_option("--phi-steps", req.phi_steps);
  bounds->add_option("--T", req.T, "total rounds");
  bounds->add_option("--Nd", req.N_d, "discarded rounds");
  bounds->add_option("--Ne", req.N_e, "estimation rounds (individual variance bound)");
  bounds->add_option("--out", req.out, "output file (default stdout)");

  bool inject = false;
  std::optional<std::string> verify_out;
  auto* verify = app.add_subcommand("verify", "run the inequality property suites");
  verify->add_flag("--inject-violation", inject, "negate one inequality (harness self-test)")->group("");
  verify->add_option("--out", verify_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSchema;
  }

  try {
    if (*run) return cmd_run(scenario, g, out);
    if (*sweep) return cmd_sweep(scenario, g, out);
    if (*equiv) return cmd_equivalence(scenario, g, out);
    if (*bounds) return cmd_bounds(req, out);
    if (*verify) return cmd_verify(g, inject, verify_out, out);
  } catch (const IoError& e) {
    err << "dqs: I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const ConfigError& e) {
    err << "dqs: schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const protocol::InsufficientData& e) {
    err << "dqs: schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const std::exception& e) {
    err << "dqs: error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace dqs::cli
