#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dqs {

enum class Variant { entanglement, mub };
enum class Direction { one_way, two_way };
enum class BoundMode { one_way_gc, one_way_individual, two_way_gc };
enum class BobAction : unsigned char { check, encode, discard };

/// Invalid user-supplied configuration (scenario keys, attack parameters, protocol knobs).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string_view to_string(Variant v) { return v == Variant::entanglement ? "entanglement" : "mub"; }
inline std::string_view to_string(Direction d) { return d == Direction::one_way ? "one_way" : "two_way"; }
inline std::string_view to_string(BoundMode m) {
  switch (m) {
    case BoundMode::one_way_gc: return "one_way_gc";
    case BoundMode::one_way_individual: return "one_way_individual";
    case BoundMode::two_way_gc: return "two_way_gc";
  }
  return "?";
}

inline std::string_view to_string(BobAction a) {
  switch (a) {
    case BobAction::check: return "check";
    case BobAction::encode: return "encode";
    case BobAction::discard: return "discard";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "entanglement") return Variant::entanglement;
  if (s == "mub") return Variant::mub;
  throw ConfigError("unknown variant '" + std::string(s) + "'");
}
inline Direction parse_direction(std::string_view s) {
  if (s == "one_way") return Direction::one_way;
  if (s == "two_way") return Direction::two_way;
  throw ConfigError("unknown direction '" + std::string(s) + "'");
}
inline BoundMode parse_bound_mode(std::string_view s) {
  if (s == "one_way_gc") return BoundMode::one_way_gc;
  if (s == "one_way_individual") return BoundMode::one_way_individual;
  if (s == "two_way_gc") return BoundMode::two_way_gc;
  throw ConfigError("unknown bound mode '" + std::string(s) + "'");
}
inline BobAction parse_bob_action(std::string_view s) {
  if (s == "check") return BobAction::check;
  if (s == "encode") return BobAction::encode;
  if (s == "discard") return BobAction::discard;
  throw ConfigError("unknown action '" + std::string(s) + "'");
}

}  // namespace dqs
