#pragma once

#include "dqs/adversary/calibration.hpp"

#include <map>
#include <set>

namespace dqs::adversary {

/// Attack name plus a parameter table (values kept as text until the attack parses them).
struct AttackSpec {
  std::string name = "identity";
  std::map<std::string, std::string> params;
};

namespace detail {

inline void require_only(const AttackSpec& spec, std::set<std::string> allowed) {
  for (const auto& [k, v] : spec.params)
    if (!allowed.count(k)) throw ConfigError("attack '" + spec.name + "': unknown parameter '" + k + "'");
}

inline double number(const AttackSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) throw ConfigError("attack '" + spec.name + "': missing parameter '" + key + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("attack '" + spec.name + "': parameter '" + key + "' is not a number");
  }
}

inline std::string text(const AttackSpec& spec, const std::string& key, const std::string& fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

}  // namespace detail

inline const std::vector<std::string>& attack_names() {
  static const std::vector<std::string> names{"identity",         "depolarizing",      "unitary_tamper",
                                              "intercept_resend", "entangling_memory", "two_way_swap_leak"};
  return names;
}

/// Builds and validates an attack for probe size n and the given direction.
inline std::unique_ptr<AttackModel> make_attack(const AttackSpec& spec, std::size_t n, Direction direction) {
  std::unique_ptr<AttackModel> a;
  if (spec.name == "identity") {
    detail::require_only(spec, {});
    a = std::make_unique<IdentityAttack>();
  } else if (spec.name == "depolarizing") {
    detail::require_only(spec, {"p", "target_fidelity"});
    const bool has_p = spec.params.count("p"), has_t = spec.params.count("target_fidelity");
    if (has_p == has_t) throw ConfigError("attack 'depolarizing': give exactly one of 'p' or 'target_fidelity'");
    a = std::make_unique<DepolarizingAttack>(has_p ? detail::number(spec, "p")
                                                   : calibrate_depolarizing(detail::number(spec, "target_fidelity"), n));
  } else if (spec.name == "unitary_tamper") {
    detail::require_only(spec, {"axis", "angle"});
    qcore::Axis axis;
    try {
      axis = qcore::parse_axis(detail::text(spec, "axis", "Y"));
    } catch (const std::exception&) {
      throw ConfigError("attack 'unitary_tamper': axis must be X, Y or Z");
    }
    a = std::make_unique<UnitaryTamper>(axis, detail::number(spec, "angle"));
  } else if (spec.name == "intercept_resend") {
    detail::require_only(spec, {"axis"});
    const std::string ax = detail::text(spec, "axis", "random");
    if (ax == "random") {
      a = std::make_unique<InterceptResend>();
    } else {
      try {
        a = std::make_unique<InterceptResend>(qcore::parse_axis(ax));
      } catch (const std::exception&) {
        throw ConfigError("attack 'intercept_resend': axis must be random, X, Y or Z");
      }
    }
  } else if (spec.name == "entangling_memory") {
    detail::require_only(spec, {"coupling", "block", "disposal"});
    const double block = spec.params.count("block") ? detail::number(spec, "block") : 2.0;
    if (block != std::floor(block) || block < 1) throw ConfigError("attack 'entangling_memory': block must be a positive integer");
    const std::string disp = detail::text(spec, "disposal", "trace");
    if (disp != "trace" && disp != "measure") throw ConfigError("attack 'entangling_memory': disposal must be trace or measure");
    a = std::make_unique<EntanglingMemoryAttack>(detail::number(spec, "coupling"), std::size_t(block),
                                                 disp == "trace" ? MemoryDisposal::trace : MemoryDisposal::measure);
  } else if (spec.name == "two_way_swap_leak") {
    detail::require_only(spec, {});
    a = std::make_unique<TwoWaySwapLeak>(direction);
  } else {
    throw ConfigError("unknown attack '" + spec.name + "'");
  }
  a->validate(direction, n);
  return a;
}

}  // namespace dqs::adversary
