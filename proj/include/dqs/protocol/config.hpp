#pragma once

#include "dqs/types.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace dqs::protocol {

struct ProtocolConfig {
  Variant variant = Variant::entanglement;
  Direction direction = Direction::one_way;
  std::size_t n = 1;
  std::uint64_t rounds = 1000;  ///< T
  double p_check = 1.0 / 3.0;
  double p_estimate = 1.0 / 3.0;
  double p_discard = 1.0 / 3.0;
  double epsilon = 0.1;  ///< ε for the entanglement variant, ε̄ for the mub variant
  double phi = 0.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (n < 1 || n > 4) throw ConfigError("protocol: n must lie in [1, 4]");
    if (rounds < 1) throw ConfigError("protocol: rounds must be at least 1");
    for (double p : {p_check, p_estimate, p_discard})
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("protocol: probabilities must lie in [0, 1]");
    if (std::abs(p_check + p_estimate + p_discard - 1.0) > 1e-12)
      throw ConfigError("protocol: p_check + p_estimate + p_discard must equal 1");
    if (!(epsilon >= 0.0)) throw ConfigError("protocol: epsilon must be non-negative");
    if (!std::isfinite(phi)) throw ConfigError("protocol: phi must be finite");
  }
};

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Canonical one-line description of every knob except the seed.
inline std::string canonical_string(const ProtocolConfig& c) {
  return "variant=" + std::string(to_string(c.variant)) + " direction=" + std::string(to_string(c.direction)) +
         " n=" + std::to_string(c.n) + " T=" + std::to_string(c.rounds) + " p_check=" + format_double(c.p_check) +
         " p_estimate=" + format_double(c.p_estimate) + " p_discard=" + format_double(c.p_discard) +
         " epsilon=" + format_double(c.epsilon) + " phi=" + format_double(c.phi);
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t config_hash(const ProtocolConfig& c) { return fnv1a(canonical_string(c)); }

}  // namespace dqs::protocol
