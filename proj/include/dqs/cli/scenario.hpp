#pragma once

#include "dqs/adversary/factory.hpp"
#include "dqs/protocol/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

namespace dqs::cli {

/// Malformed or incomplete scenario (exit code 2).
class SchemaError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// File system failure (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string variable = "phi";  ///< "phi" or "attack.<parameter>"
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;  ///< grid points, endpoints included
  std::size_t windows = 200;
  BoundMode mode = BoundMode::one_way_individual;

  bool sweeps_phi() const { return variable == "phi"; }
  std::string attack_parameter() const { return variable.substr(7); }
  double value(std::size_t i) const { return steps == 1 ? start : start + (stop - start) * double(i) / double(steps - 1); }
};

struct OutputSpec {
  std::optional<std::string> transcript;
  std::optional<std::string> summary;
  std::optional<std::string> csv;
};

struct Scenario {
  protocol::ProtocolConfig protocol;
  adversary::AttackSpec attack;
  std::optional<SweepSpec> sweep;
  OutputSpec output;
};

namespace detail {

inline void reject_unknown(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw SchemaError(where + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw SchemaError(where + ": unknown key '" + key + "'");
  }
}

inline YAML::Node required(const YAML::Node& node, const std::string& where, const std::string& key) {
  const auto v = node[key];
  if (!v) throw SchemaError(where + ": missing key '" + key + "'");
  return v;
}

inline std::string scalar(const YAML::Node& v, const std::string& name) {
  if (!v.IsScalar()) throw SchemaError(name + ": expected a scalar");
  return v.Scalar();
}

inline double real(const YAML::Node& v, const std::string& name) {
  const auto s = scalar(v, name);
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size() && std::isfinite(x)) return x;
  } catch (const std::exception&) {
  }
  throw SchemaError(name + ": expected a finite number, got '" + s + "'");
}

inline std::uint64_t count(const YAML::Node& v, const std::string& name) {
  const double x = real(v, name);
  if (x < 0 || x != std::floor(x) || x > 1e18) throw SchemaError(name + ": expected a nonnegative integer");
  return std::uint64_t(x);
}

template <class Parse>
auto enumerated(const YAML::Node& v, const std::string& name, Parse parse) {
  try {
    return parse(scalar(v, name));
  } catch (const SchemaError&) {
    throw;
  } catch (const ConfigError& e) {
    throw SchemaError(name + ": " + e.what());
  }
}

}  // namespace detail

/// Parses scenario text. Required: protocol.{variant, n, rounds, epsilon} and protocol.phi unless phi is swept.
inline Scenario parse_scenario(const std::string& text) {
  using namespace detail;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw SchemaError(std::string("scenario: ") + e.what());
  }
  if (!root || root.IsNull()) throw SchemaError("scenario: empty document");
  reject_unknown(root, "scenario", {"protocol", "attack", "sweep", "output"});

  Scenario s;
  if (const auto sw = root["sweep"]) {
    reject_unknown(sw, "sweep", {"variable", "start", "stop", "steps", "windows", "mode"});
    SweepSpec spec;
    spec.variable = scalar(required(sw, "sweep", "variable"), "sweep.variable");
    if (spec.variable != "phi" && (spec.variable.rfind("attack.", 0) != 0 || spec.variable.size() == 7))
      throw SchemaError("sweep.variable: expected 'phi' or 'attack.<parameter>'");
    spec.start = real(required(sw, "sweep", "start"), "sweep.start");
    spec.stop = real(required(sw, "sweep", "stop"), "sweep.stop");
    spec.steps = count(required(sw, "sweep", "steps"), "sweep.steps");
    if (spec.steps < 1) throw SchemaError("sweep.steps: must be at least 1");
    if (sw["windows"]) spec.windows = count(sw["windows"], "sweep.windows");
    if (spec.windows < 2) throw SchemaError("sweep.windows: must be at least 2");
    if (sw["mode"]) spec.mode = enumerated(sw["mode"], "sweep.mode", parse_bound_mode);
    s.sweep = spec;
  }

  const auto p = required(root, "scenario", "protocol");
  reject_unknown(p, "protocol",
                 {"variant", "direction", "n", "rounds", "p_check", "p_estimate", "p_discard", "epsilon", "phi", "seed"});
  auto& c = s.protocol;
  c.variant = enumerated(required(p, "protocol", "variant"), "protocol.variant", parse_variant);
  if (p["direction"]) c.direction = enumerated(p["direction"], "protocol.direction", parse_direction);
  c.n = count(required(p, "protocol", "n"), "protocol.n");
  c.rounds = count(required(p, "protocol", "rounds"), "protocol.rounds");
  if (p["p_check"]) c.p_check = real(p["p_check"], "protocol.p_check");
  if (p["p_estimate"]) c.p_estimate = real(p["p_estimate"], "protocol.p_estimate");
  if (p["p_discard"]) c.p_discard = real(p["p_discard"], "protocol.p_discard");
  c.epsilon = real(required(p, "protocol", "epsilon"), "protocol.epsilon");
  if (s.sweep && s.sweep->sweeps_phi()) {
    if (p["phi"]) c.phi = real(p["phi"], "protocol.phi");
  } else {
    c.phi = real(required(p, "protocol", "phi"), "protocol.phi");
  }
  if (p["seed"]) c.seed = count(p["seed"], "protocol.seed");
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw SchemaError(e.what());
  }

  if (const auto a = root["attack"]) {
    reject_unknown(a, "attack", {"name", "params"});
    s.attack.name = scalar(required(a, "attack", "name"), "attack.name");
    if (const auto params = a["params"]) {
      if (params.IsNull()) {
      } else if (!params.IsMap()) {
        throw SchemaError("attack.params: expected a mapping");
      } else {
        for (const auto& kv : params) {
          const auto key = kv.first.as<std::string>();
          s.attack.params[key] = scalar(kv.second, "attack.params." + key);
        }
      }
    }
  }

  if (const auto o = root["output"]) {
    reject_unknown(o, "output", {"transcript", "summary", "csv"});
    if (o["transcript"]) s.output.transcript = scalar(o["transcript"], "output.transcript");
    if (o["summary"]) s.output.summary = scalar(o["summary"], "output.summary");
    if (o["csv"]) s.output.csv = scalar(o["csv"], "output.csv");
  }
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

inline Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

}  // namespace dqs::cli
