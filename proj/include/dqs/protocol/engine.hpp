#pragma once

#include "dqs/adversary/attack.hpp"
#include "dqs/protocol/analysis.hpp"
#include "dqs/qcore.hpp"

namespace dqs::protocol {

/// Stream indices for Rng::derived(config.seed, ·).
inline constexpr std::uint64_t kProtocolStream = 0;
inline constexpr std::uint64_t kEveStream = 1;

namespace detail {

inline bool entanglement_check_kept(Axis a, Axis b) {
  for (auto s : qcore::kStabilizers)
    if (s.alice == a && s.bob == b) return true;
  return false;
}

inline bool entanglement_estimate_kept(Axis a, Axis b) {
  return (a == Axis::X && b == Axis::Z) || (a == Axis::Z && b == Axis::X);
}

/// Operators fixed for the whole run.
struct Kit {
  adversary::RegisterLayout layout;
  qcore::Matrix encoding;             ///< on the full joint register
  std::vector<qcore::Matrix> initial;  ///< entanglement: [resource]; mub: one per signed label
  std::vector<qcore::Observable> bob;  ///< bold X, Y, Z on B
  std::vector<qcore::Observable> alice;

  Kit(const ProtocolConfig& cfg, std::size_t memory_qubits) {
    const auto frame = qcore::LogicalFrame::phase_aligned(cfg.n);
    const bool ent = cfg.variant == Variant::entanglement;
    layout = {ent ? std::size_t{2} : std::size_t{1}, cfg.n, memory_qubits};
    encoding = layout.on_probe(qcore::encoding_unitary(cfg.n, cfg.phi));
    if (ent) {
      initial.push_back(qcore::resource_state(frame).projector());
      for (auto a : qcore::kAxes) alice.push_back(qcore::pauli(a).embedded(1, layout.probe_dim() * layout.memory_dim()));
    } else {
      for (auto p : qcore::kSignedAxes) initial.push_back(qcore::mub_probe(frame, p).projector());
    }
    for (auto a : qcore::kAxes) bob.push_back(qcore::bold_pauli(frame, a).embedded(layout.alice_dim, layout.memory_dim()));
  }
};

}  // namespace detail

/// Executes T rounds of the configured protocol against `attack`. Per round, the protocol stream draws
/// (mub label), Bob's action, (Alice's axis), Bob's axis, then Bob's and Alice's measurement uniforms;
/// Eve draws only from her own stream. Deterministic given the config seed.
inline Transcript run(const ProtocolConfig& cfg, adversary::AttackModel& attack) {
  cfg.validate();
  attack.validate(cfg.direction, cfg.n);
  const std::size_t mq = attack.memory_qubits(cfg.n);
  const detail::Kit kit(cfg, mq);
  attack.prepare(kit.layout);

  Rng rng = Rng::derived(cfg.seed, kProtocolStream);
  Rng eve = Rng::derived(cfg.seed, kEveStream);
  const bool ent = cfg.variant == Variant::entanglement;
  const bool two_way = cfg.direction == Direction::two_way;
  const std::vector<std::size_t> dims{kit.layout.alice_dim, kit.layout.probe_dim(), kit.layout.memory_dim()};

  Transcript t;
  t.config = cfg;
  t.attack = attack.name();
  t.rounds.reserve(cfg.rounds);

  for (std::uint64_t i = 0; i < cfg.rounds; ++i) {
    RoundRecord r;
    r.index = i;
    std::size_t label_index = 0;
    if (!ent) {
      label_index = rng.index(6);
      r.label = qcore::kSignedAxes[label_index];
    }
    const double u = rng.uniform();
    r.action = u < cfg.p_check ? BobAction::check : (u < cfg.p_check + cfg.p_estimate ? BobAction::encode : BobAction::discard);
    if (ent) r.alice_axis = qcore::kAxes[rng.index(3)];
    if (r.action == BobAction::check) r.bob_axis = qcore::kAxes[rng.index(3)];
    if (r.action == BobAction::encode) r.bob_axis = rng.index(2) == 0 ? Axis::X : Axis::Z;

    // quantum part: preparation, forward leg, encoding, return leg
    const qcore::Matrix& prep = kit.initial[ent ? 0 : label_index];
    qcore::DensityMatrix state = mq == 0 ? qcore::DensityMatrix::trusted(prep)
                                         : qcore::DensityMatrix::trusted(qcore::kron(prep, attack.memory_state(i).matrix()));
    state = attack.forward(state, eve);
    if (r.action == BobAction::encode) state = qcore::apply_unitary(kit.encoding, state);
    if (two_way) state = attack.backward(state, eve);

    // measurements: Bob's register, then Alice's qubit
    if (r.bob_axis) {
      const auto& obs = kit.bob[std::size_t(*r.bob_axis)];
      if (ent || mq > 0) {
        auto m = qcore::measure(obs, state, rng);
        r.bob_outcome = int(m.eigenvalue);
        state = std::move(m.post_state);
      } else {
        r.bob_outcome = int(qcore::sample(obs, state, rng).eigenvalue);
      }
    }
    if (ent) {
      const auto& obs = kit.alice[std::size_t(*r.alice_axis)];
      if (mq > 0) {
        auto m = qcore::measure(obs, state, rng);
        r.alice_outcome = int(m.eigenvalue);
        state = std::move(m.post_state);
      } else {
        r.alice_outcome = int(qcore::sample(obs, state, rng).eigenvalue);
      }
    }
    if (mq > 0) attack.retain_memory(i, qcore::reduced_state(state, dims, {2}), eve);

    // sifting
    switch (r.action) {
      case BobAction::discard: r.status = SiftStatus::discarded; break;
      case BobAction::check: {
        const bool keep = ent ? detail::entanglement_check_kept(*r.alice_axis, *r.bob_axis) : r.label->axis == *r.bob_axis;
        r.status = keep ? SiftStatus::kept_check : SiftStatus::sifted_out;
        break;
      }
      case BobAction::encode: {
        const bool keep = ent ? detail::entanglement_estimate_kept(*r.alice_axis, *r.bob_axis)
                              : (r.label->axis != Axis::Y && r.label->axis == *r.bob_axis);
        r.status = keep ? SiftStatus::kept_estimation : SiftStatus::sifted_out;
        break;
      }
    }
    t.rounds.push_back(r);
  }
  t.counts = tally(t.rounds);
  t.aborted = !check_fidelity(t).passed;
  t.eve = attack.conclude(t.public_record());
  return t;
}

}  // namespace dqs::protocol
