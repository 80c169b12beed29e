#pragma once

#include "dqs/adversary/attack.hpp"
#include "dqs/protocol/config.hpp"
#include "dqs/qcore/observable.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace dqs::protocol {

using qcore::Axis;
using qcore::SignedAxis;

enum class SiftStatus : unsigned char { kept_check, kept_estimation, sifted_out, discarded };

inline std::string_view to_string(SiftStatus s) {
  switch (s) {
    case SiftStatus::kept_check: return "kept_check";
    case SiftStatus::kept_estimation: return "kept_estimation";
    case SiftStatus::sifted_out: return "sifted_out";
    case SiftStatus::discarded: return "discarded";
  }
  return "?";
}

inline SiftStatus parse_sift_status(std::string_view s) {
  if (s == "kept_check") return SiftStatus::kept_check;
  if (s == "kept_estimation") return SiftStatus::kept_estimation;
  if (s == "sifted_out") return SiftStatus::sifted_out;
  if (s == "discarded") return SiftStatus::discarded;
  throw std::invalid_argument("unknown sift status '" + std::string(s) + "'");
}

struct RoundRecord {
  std::uint64_t index = 0;
  BobAction action = BobAction::discard;
  std::optional<Axis> alice_axis;  ///< entanglement variant
  int alice_outcome = 0;           ///< ±1
  std::optional<SignedAxis> label;  ///< mub variant
  std::optional<Axis> bob_axis;     ///< absent for discarded rounds
  int bob_outcome = 0;              ///< ±1, or 0 for a leak outside the logical subspace
  SiftStatus status = SiftStatus::discarded;

  bool leaked() const { return bob_axis.has_value() && bob_outcome == 0; }
  bool operator==(const RoundRecord&) const = default;
};

struct RoundCounts {
  std::uint64_t checks = 0;       ///< N_c
  std::uint64_t estimations = 0;  ///< N_e
  std::uint64_t discarded = 0;    ///< N_d
  std::uint64_t sifted_out = 0;
  std::uint64_t leaks = 0;  ///< kept rounds with a leak outcome
  bool operator==(const RoundCounts&) const = default;
};

struct Transcript {
  ProtocolConfig config;
  std::string attack;
  std::vector<RoundRecord> rounds;
  RoundCounts counts;
  bool aborted = false;
  std::optional<adversary::EveEstimate> eve;

  adversary::PublicRecord public_record() const {
    adversary::PublicRecord r;
    r.direction = config.direction;
    r.actions.reserve(rounds.size());
    for (const auto& rr : rounds) r.actions.push_back(rr.action);
    return r;
  }
};

inline RoundCounts tally(const std::vector<RoundRecord>& rounds) {
  RoundCounts c;
  for (const auto& r : rounds) {
    switch (r.status) {
      case SiftStatus::kept_check: ++c.checks; break;
      case SiftStatus::kept_estimation: ++c.estimations; break;
      case SiftStatus::sifted_out: ++c.sifted_out; break;
      case SiftStatus::discarded: ++c.discarded; break;
    }
    if ((r.status == SiftStatus::kept_check || r.status == SiftStatus::kept_estimation) && r.leaked()) ++c.leaks;
  }
  return c;
}

class TranscriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline void write_round(std::ostream& os, const RoundRecord& r) {
  os << "r " << r.index << ' ' << to_string(r.action) << ' ' << (r.alice_axis ? std::string(to_string(*r.alice_axis)) : "-")
     << ' ' << r.alice_outcome << ' ' << (r.label ? qcore::to_string(*r.label) : "-") << ' '
     << (r.bob_axis ? std::string(to_string(*r.bob_axis)) : "-") << ' ' << r.bob_outcome << ' ' << to_string(r.status)
     << '\n';
}

inline std::map<std::string, std::string> key_values(std::istringstream& is) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw TranscriptError("malformed key=value token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

inline const std::string& field(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw TranscriptError("missing field '" + key + "'");
  return it->second;
}

}  // namespace detail

inline constexpr std::string_view kTranscriptMagic = "dqs-transcript 1";

/// Line-oriented format: header (magic, config hash, seed, config, attack, counts, abort flag), then one
/// line per round grouped as check rounds, estimation rounds, and the rest, each group in round order.
inline void write_transcript(std::ostream& os, const Transcript& t) {
  os << kTranscriptMagic << '\n';
  os << "config_hash " << detail::hex64(config_hash(t.config)) << '\n';
  os << "seed " << t.config.seed << '\n';
  os << "config " << canonical_string(t.config) << '\n';
  os << "attack " << t.attack << '\n';
  os << "counts N_c=" << t.counts.checks << " N_e=" << t.counts.estimations << " N_d=" << t.counts.discarded
     << " sifted_out=" << t.counts.sifted_out << " leaks=" << t.counts.leaks << '\n';
  os << "aborted " << (t.aborted ? 1 : 0) << '\n';
  const auto section = [&](const char* name, auto pred) {
    os << "section " << name << '\n';
    for (const auto& r : t.rounds)
      if (pred(r.status)) detail::write_round(os, r);
  };
  section("check", [](SiftStatus s) { return s == SiftStatus::kept_check; });
  section("estimation", [](SiftStatus s) { return s == SiftStatus::kept_estimation; });
  section("other", [](SiftStatus s) { return s == SiftStatus::sifted_out || s == SiftStatus::discarded; });
  os << "end\n";
}

inline std::string transcript_string(const Transcript& t) {
  std::ostringstream os;
  write_transcript(os, t);
  return os.str();
}

/// Inverse of write_transcript (the Eve estimate is not serialized).
inline Transcript read_transcript(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTranscriptMagic) throw TranscriptError("missing transcript header");
  Transcript t;
  std::string declared_hash;
  bool ended = false;
  std::string current_section;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    try {
      if (key == "config_hash") {
        ls >> declared_hash;
      } else if (key == "seed") {
        ls >> t.config.seed;
      } else if (key == "config") {
        const auto kv = detail::key_values(ls);
        t.config.variant = parse_variant(detail::field(kv, "variant"));
        t.config.direction = parse_direction(detail::field(kv, "direction"));
        t.config.n = std::stoul(detail::field(kv, "n"));
        t.config.rounds = std::stoull(detail::field(kv, "T"));
        t.config.p_check = std::stod(detail::field(kv, "p_check"));
        t.config.p_estimate = std::stod(detail::field(kv, "p_estimate"));
        t.config.p_discard = std::stod(detail::field(kv, "p_discard"));
        t.config.epsilon = std::stod(detail::field(kv, "epsilon"));
        t.config.phi = std::stod(detail::field(kv, "phi"));
      } else if (key == "attack") {
        ls >> t.attack;
      } else if (key == "counts") {
        const auto kv = detail::key_values(ls);
        t.counts.checks = std::stoull(detail::field(kv, "N_c"));
        t.counts.estimations = std::stoull(detail::field(kv, "N_e"));
        t.counts.discarded = std::stoull(detail::field(kv, "N_d"));
        t.counts.sifted_out = std::stoull(detail::field(kv, "sifted_out"));
        t.counts.leaks = std::stoull(detail::field(kv, "leaks"));
      } else if (key == "aborted") {
        int a = 0;
        ls >> a;
        t.aborted = a != 0;
      } else if (key == "section") {
        ls >> current_section;
      } else if (key == "r") {
        RoundRecord r;
        std::string action, aaxis, label, baxis, status;
        if (!(ls >> r.index >> action >> aaxis >> r.alice_outcome >> label >> baxis >> r.bob_outcome >> status))
          throw TranscriptError("malformed round line");
        r.action = parse_bob_action(action);
        if (aaxis != "-") r.alice_axis = qcore::parse_axis(aaxis);
        if (label != "-") r.label = qcore::parse_signed_axis(label);
        if (baxis != "-") r.bob_axis = qcore::parse_axis(baxis);
        r.status = parse_sift_status(status);
        t.rounds.push_back(r);
      } else if (key == "end") {
        ended = true;
        break;
      } else {
        throw TranscriptError("unknown record '" + key + "'");
      }
    } catch (const TranscriptError&) {
      throw;
    } catch (const std::exception& e) {
      throw TranscriptError("malformed line '" + line + "': " + e.what());
    }
  }
  if (!ended) throw TranscriptError("transcript truncated");
  std::sort(t.rounds.begin(), t.rounds.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  if (detail::hex64(config_hash(t.config)) != declared_hash) throw TranscriptError("config hash mismatch");
  if (tally(t.rounds) != t.counts) throw TranscriptError("round counts do not match the records");
  return t;
}

}  // namespace dqs::protocol
