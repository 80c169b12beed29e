#pragma once

#include "dqs/qcore.hpp"
#include "dqs/types.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dqs::adversary {

using qcore::DensityMatrix;
using qcore::Matrix;

/// Joint register [A, B, E]: Alice's qubit (dimension 1 when absent), the n-qubit probe, Eve's memory.
struct RegisterLayout {
  std::size_t alice_dim = 2;
  std::size_t probe_qubits = 1;
  std::size_t memory_qubits = 0;

  std::size_t probe_dim() const { return qcore::qubit_dim(probe_qubits); }
  std::size_t memory_dim() const { return qcore::qubit_dim(memory_qubits); }
  std::size_t total_dim() const { return alice_dim * probe_dim() * memory_dim(); }
  std::array<std::size_t, 3> dims() const { return {alice_dim, probe_dim(), memory_dim()}; }

  Matrix on_probe(const Matrix& op) const { return qcore::embed(op, alice_dim, memory_dim()); }
  /// Operator on B ⊗ E.
  Matrix on_probe_and_memory(const Matrix& op) const { return qcore::embed(op, alice_dim, 1); }
};

/// Classical information announced during reconciliation, available to Eve only after all quantum actions.
struct PublicRecord {
  Direction direction = Direction::one_way;
  std::vector<BobAction> actions;
};

struct EveEstimate {
  std::optional<double> phi_hat_eve;
  std::size_t samples_used = 0;
  double standard_error = 0.0;
};

/// Eve's strategy. Quantum actions see only the joint state and Eve's own random stream;
/// outcomes and reconciliation data reach the attack only through conclude().
class AttackModel {
 public:
  virtual ~AttackModel() = default;

  virtual std::string name() const = 0;
  virtual std::unique_ptr<AttackModel> clone() const = 0;

  /// Rounds per correlated block; 1 for individual attacks.
  virtual std::size_t block_length() const { return 1; }
  virtual std::size_t memory_qubits(std::size_t /*n*/) const { return 0; }
  /// Throws ConfigError if the attack cannot act on this direction / probe size.
  virtual void validate(Direction /*direction*/, std::size_t /*n*/) const {}

  /// Called once per run before the first round.
  virtual void prepare(const RegisterLayout& layout) { layout_ = layout; }
  /// Eve's register at the start of round `round`.
  virtual DensityMatrix memory_state(std::uint64_t /*round*/) { return DensityMatrix::maximally_mixed(layout_.memory_dim()); }
  /// Alice → Bob leg.
  virtual DensityMatrix forward(const DensityMatrix& joint, Rng& eve) = 0;
  /// Bob → Alice leg (two-way only).
  virtual DensityMatrix backward(const DensityMatrix& joint, Rng& /*eve*/) { return joint; }
  /// Eve's reduced memory after the round's measurements.
  virtual void retain_memory(std::uint64_t /*round*/, const DensityMatrix& /*memory*/, Rng& /*eve*/) {}
  /// Post-run processing of the public record.
  virtual std::optional<EveEstimate> conclude(const PublicRecord& /*record*/) const { return std::nullopt; }

  bool memoryless() const { return block_length() == 1 && memory_qubits(layout_.probe_qubits) == 0; }
  const RegisterLayout& layout() const { return layout_; }

 protected:
  RegisterLayout layout_{};
};

}  // namespace dqs::adversary
