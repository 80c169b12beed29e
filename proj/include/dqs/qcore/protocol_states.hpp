#pragma once

// States and unitaries specific to the sensing protocols.

#include "dqs/qcore/observable.hpp"

namespace dqs::qcore {

/// (e^{iφY})^{⊗n}. On the phase-aligned frame it is diag(e^{inφ}, e^{-inφ}),
/// i.e. a logical rotation by 2nφ about Ȳ.
inline Matrix encoding_unitary(std::size_t n, double phi) {
  const Matrix single = std::cos(phi) * identity(2) + Complex(0, std::sin(phi)) * pauli_matrix(Axis::Y);
  return kron_power(single, n);
}

/// +1 eigenvector of the signed logical Pauli ±P̄, inside the logical subspace.
inline PureState mub_probe(const LogicalFrame& frame, SignedAxis p) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(double(p.sign) * frame.logical_matrix(p.axis));
  // eigenvalues ascending: column 1 is the +1 eigenvector
  const Vector logical = solver.eigenvectors().col(1);
  return PureState::normalized(canonical_phase(frame.lift(logical)));
}

/// The three commuting stabilizers X⊗Z̄, Z⊗X̄, Y⊗Ȳ on Alice's qubit ⊗ Bob's register,
/// in the order the fidelity estimator lists them.
struct StabilizerTerm {
  Axis alice;
  Axis bob;
};
inline constexpr std::array<StabilizerTerm, 3> kStabilizers{
    StabilizerTerm{Axis::X, Axis::Z}, StabilizerTerm{Axis::Z, Axis::X}, StabilizerTerm{Axis::Y, Axis::Y}};

inline Matrix stabilizer(const LogicalFrame& frame, StabilizerTerm term) {
  return kron(pauli_matrix(term.alice), bold_pauli(frame, term.bob).matrix());
}

/// Joint +1 eigenstate of X⊗Z̄, Z⊗X̄, Y⊗Ȳ for an n-qubit register in the
/// phase-aligned frame: (|0>|X̄,+> + |1> Z̄|X̄,+>)/√2. At n = 1 this is
/// (|0>|+> + |1>|->)/√2.
inline PureState resource_state(const LogicalFrame& frame) {
  const Vector xplus = mub_probe(frame, {Axis::X, +1}).amplitudes();
  const Vector xminus = bold_pauli(frame, Axis::Z).matrix() * xplus;
  const Vector v = (kron(qubit::zero().amplitudes(), xplus) + kron(qubit::one().amplitudes(), xminus)) / std::sqrt(2.0);
  return PureState::normalized(canonical_phase(v));
}

inline PureState resource_state(std::size_t n) { return resource_state(LogicalFrame::phase_aligned(n)); }

}  // namespace dqs::qcore
