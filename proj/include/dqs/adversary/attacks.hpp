#pragma once

#include "dqs/adversary/attack.hpp"

#include <cmath>

namespace dqs::adversary {

class IdentityAttack final : public AttackModel {
 public:
  std::string name() const override { return "identity"; }
  std::unique_ptr<AttackModel> clone() const override { return std::make_unique<IdentityAttack>(*this); }
  DensityMatrix forward(const DensityMatrix& joint, Rng&) override { return joint; }
};

/// Replaces the whole probe register by I/2^n with probability p.
class DepolarizingAttack final : public AttackModel {
 public:
  explicit DepolarizingAttack(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("depolarizing: p must lie in [0, 1]");
  }
  std::string name() const override { return "depolarizing"; }
  std::unique_ptr<AttackModel> clone() const override { return std::make_unique<DepolarizingAttack>(*this); }
  double p() const { return p_; }

  DensityMatrix forward(const DensityMatrix& joint, Rng&) override {
    const auto dims = layout_.dims();
    return qcore::depolarize_subsystem(joint, dims, 1, p_);
  }

 private:
  double p_;
};

/// e^{i·angle·σ_axis} on every probe qubit.
class UnitaryTamper final : public AttackModel {
 public:
  UnitaryTamper(qcore::Axis axis, double angle) : axis_(axis), angle_(angle) {}
  std::string name() const override { return "unitary_tamper"; }
  std::unique_ptr<AttackModel> clone() const override { return std::make_unique<UnitaryTamper>(*this); }

  void prepare(const RegisterLayout& layout) override {
    AttackModel::prepare(layout);
    const Matrix single = qcore::exp_i_hermitian(qcore::pauli_matrix(axis_), angle_);
    unitary_ = layout.on_probe(qcore::kron_power(single, layout.probe_qubits));
  }
  DensityMatrix forward(const DensityMatrix& joint, Rng&) override { return qcore::apply_unitary(unitary_, joint); }

 private:
  qcore::Axis axis_;
  double angle_;
  Matrix unitary_;
};

/// Eve measures a bold observable of the probe and resends the collapsed state.
class InterceptResend final : public AttackModel {
 public:
  /// No axis: uniformly random axis per round.
  explicit InterceptResend(std::optional<qcore::Axis> fixed_axis = std::nullopt) : fixed_(fixed_axis) {}
  std::string name() const override { return "intercept_resend"; }
  std::unique_ptr<AttackModel> clone() const override { return std::make_unique<InterceptResend>(*this); }

  void prepare(const RegisterLayout& layout) override {
    AttackModel::prepare(layout);
    observables_.clear();
    const auto frame = qcore::LogicalFrame::phase_aligned(layout.probe_qubits);
    for (auto a : qcore::kAxes)
      observables_.push_back(qcore::bold_pauli(frame, a).embedded(layout.alice_dim, layout.memory_dim()));
    outcomes_.clear();
  }

  DensityMatrix forward(const DensityMatrix& joint, Rng& eve) override {
    const std::size_t axis = fixed_ ? std::size_t(*fixed_) : eve.index(3);
    auto m = qcore::measure(observables_[axis], joint, eve);
    outcomes_.push_back({qcore::Axis(axis), int(m.eigenvalue)});
    return std::move(m.post_state);
  }

  struct Interception {
    qcore::Axis axis;
    int outcome;
  };
  const std::vector<Interception>& interceptions() const { return outcomes_; }

 private:
  std::optional<qcore::Axis> fixed_;
  std::vector<qcore::Observable> observables_;
  std::vector<Interception> outcomes_;
};

enum class MemoryDisposal { trace, measure };

/// Partial swap exp(−i·g·SWAP) between the probe qubit and one memory qubit that persists across a
/// block of rounds and is reset to I/2 at each block start.
class EntanglingMemoryAttack final : public AttackModel {
 public:
  static constexpr std::size_t kMaxBlock = 3;

  EntanglingMemoryAttack(double coupling, std::size_t block, MemoryDisposal disposal = MemoryDisposal::trace)
      : coupling_(coupling), block_(block), disposal_(disposal) {
    if (block < 1 || block > kMaxBlock) throw ConfigError("entangling_memory: block length must lie in [1, 3]");
  }
  std::string name() const override { return "entangling_memory"; }
  std::unique_ptr<AttackModel> clone() const override { return std::make_unique<EntanglingMemoryAttack>(*this); }
  std::size_t block_length() const override { return block_; }
  std::size_t memory_qubits(std::size_t) const override { return 1; }
  void validate(Direction, std::size_t n) const override {
    if (n != 1) throw ConfigError("entangling_memory: exact simulation supports n = 1 only");
  }

  void prepare(const RegisterLayout& layout) override {
    AttackModel::prepare(layout);
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    unitary_ = layout.on_probe_and_memory(qcore::exp_i_hermitian(swap, -coupling_));
    retained_ = DensityMatrix::maximally_mixed(2);
    records_.clear();
  }

  DensityMatrix memory_state(std::uint64_t round) override {
    return round % block_ == 0 ? DensityMatrix::maximally_mixed(2) : retained_;
  }
  DensityMatrix forward(const DensityMatrix& joint, Rng&) override { return qcore::apply_unitary(unitary_, joint); }
  void retain_memory(std::uint64_t round, const DensityMatrix& memory, Rng& eve) override {
    retained_ = memory;
    if (disposal_ == MemoryDisposal::measure && (round + 1) % block_ == 0)
      records_.push_back(int(qcore::sample(qcore::pauli(qcore::Axis::Z), memory, eve).eigenvalue));
  }

  /// Z outcomes of the memory qubit at block ends (measure disposal).
  const std::vector<int>& memory_records() const { return records_; }

 private:
  double coupling_;
  std::size_t block_;
  MemoryDisposal disposal_;
  Matrix unitary_;
  DensityMatrix retained_ = DensityMatrix::maximally_mixed(2);
  std::vector<int> records_;
};

/// Forward leg: swap the probe for Eve's |X̄,+>, keeping the original. Backward leg: measure X̄ on the
/// returned decoy, then forward the stored (unencoded) original. Encode rounds are identified from the
/// public record after the run.
class TwoWaySwapLeak final : public AttackModel {
 public:
  static constexpr std::size_t kMaxQubits = 2;

  explicit TwoWaySwapLeak(Direction direction = Direction::two_way) {
    if (direction != Direction::two_way) throw ConfigError("two_way_swap_leak: requires two-way mode");
  }
  std::string name() const override { return "two_way_swap_leak"; }
  std::unique_ptr<AttackModel> clone() const override { return std::make_unique<TwoWaySwapLeak>(*this); }
  std::size_t memory_qubits(std::size_t n) const override { return n; }
  void validate(Direction direction, std::size_t n) const override {
    if (direction != Direction::two_way) throw ConfigError("two_way_swap_leak: requires two-way mode");
    if (n > kMaxQubits) throw ConfigError("two_way_swap_leak: exact simulation supports n <= 2");
  }

  void prepare(const RegisterLayout& layout) override {
    AttackModel::prepare(layout);
    n_ = layout.probe_qubits;
    const auto frame = qcore::LogicalFrame::phase_aligned(n_);
    decoy_ = DensityMatrix(qcore::mub_probe(frame, {qcore::Axis::X, +1}));
    const std::size_t d = layout.probe_dim();
    Matrix swap = Matrix::Zero(Eigen::Index(d * d), Eigen::Index(d * d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) swap(Eigen::Index(j * d + i), Eigen::Index(i * d + j)) = 1.0;
    swap_ = layout.on_probe_and_memory(swap);
    decoy_x_ = qcore::bold_pauli(frame, qcore::Axis::X).embedded(layout.alice_dim, layout.memory_dim());
    outcomes_.clear();
  }

  DensityMatrix memory_state(std::uint64_t) override { return decoy_; }
  DensityMatrix forward(const DensityMatrix& joint, Rng&) override { return qcore::apply_unitary(swap_, joint); }
  DensityMatrix backward(const DensityMatrix& joint, Rng& eve) override {
    auto m = qcore::measure(*decoy_x_, joint, eve);
    outcomes_.push_back(int(m.eigenvalue));
    return qcore::apply_unitary(swap_, m.post_state);
  }

  std::optional<EveEstimate> conclude(const PublicRecord& record) const override {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < record.actions.size() && r < outcomes_.size(); ++r)
      if (record.actions[r] == BobAction::encode && outcomes_[r] != 0) {
        sum += outcomes_[r];
        ++count;
      }
    EveEstimate e;
    e.samples_used = count;
    if (count == 0) return e;
    const double c = std::clamp(sum / double(count), -1.0, 1.0);
    e.phi_hat_eve = std::acos(c) / (2.0 * double(n_));
    const double s = std::sqrt(1.0 - c * c);
    e.standard_error = s > 0.0 ? std::sqrt((1.0 - c * c) / double(count)) / (2.0 * double(n_) * s)
                               : std::numeric_limits<double>::infinity();
    return e;
  }

 private:
  std::size_t n_ = 1;
  DensityMatrix decoy_ = DensityMatrix::maximally_mixed(2);
  Matrix swap_;
  std::optional<qcore::Observable> decoy_x_;
  std::vector<int> outcomes_;
};

}  // namespace dqs::adversary
