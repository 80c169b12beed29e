#pragma once

#include "dqs/qcore/state.hpp"

#include <array>
#include <string_view>

namespace dqs::qcore {

enum class Axis { X, Y, Z };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

inline std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
  }
  return "?";
}

inline Axis parse_axis(std::string_view s) {
  if (s == "X" || s == "x") return Axis::X;
  if (s == "Y" || s == "y") return Axis::Y;
  if (s == "Z" || s == "z") return Axis::Z;
  throw std::invalid_argument("unknown axis '" + std::string(s) + "'");
}

/// A Pauli axis with a sign, e.g. -X.
struct SignedAxis {
  Axis axis = Axis::Z;
  int sign = +1;

  friend bool operator==(const SignedAxis&, const SignedAxis&) = default;
  friend auto operator<=>(const SignedAxis& a, const SignedAxis& b) {
    if (auto c = int(a.axis) <=> int(b.axis); c != 0) return c;
    return b.sign <=> a.sign;  // +P before -P
  }
};

inline constexpr std::array<SignedAxis, 6> kSignedAxes{
    SignedAxis{Axis::X, +1}, SignedAxis{Axis::X, -1}, SignedAxis{Axis::Y, +1},
    SignedAxis{Axis::Y, -1}, SignedAxis{Axis::Z, +1}, SignedAxis{Axis::Z, -1}};

inline std::string to_string(SignedAxis p) { return (p.sign > 0 ? "+" : "-") + std::string(to_string(p.axis)); }

inline SignedAxis parse_signed_axis(std::string_view s) {
  if (s.size() == 2 && (s[0] == '+' || s[0] == '-')) return {parse_axis(s.substr(1)), s[0] == '+' ? +1 : -1};
  return {parse_axis(s), +1};
}

/// Hermitian operator with its spectral decomposition.
///
/// Distinct eigenvalues are sorted ascending; eigenvalues closer than 1e-9
/// share one projector.
class Observable {
 public:
  explicit Observable(Matrix m) : matrix_(std::move(m)) {
    if (!is_hermitian(matrix_)) throw std::invalid_argument("Observable: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_);
    const auto& ev = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      const Vector v = canonical_phase(vecs.col(k));
      if (!eigenvalues_.empty() && std::abs(ev(k) - eigenvalues_.back()) < 1e-9) {
        projectors_.back() += v * v.adjoint();
      } else {
        eigenvalues_.push_back(std::round(ev(k) * 1e12) / 1e12);
        projectors_.push_back(v * v.adjoint());
      }
    }
  }

  std::size_t dim() const { return std::size_t(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<Matrix>& projectors() const { return projectors_; }

  /// The same observable acting on a factor of a larger tensor product.
  Observable embedded(std::size_t before_dim, std::size_t after_dim) const {
    Observable out;
    out.matrix_ = embed(matrix_, before_dim, after_dim);
    out.eigenvalues_ = eigenvalues_;
    for (const auto& p : projectors_) out.projectors_.push_back(embed(p, before_dim, after_dim));
    return out;
  }

 private:
  Observable() = default;

  Matrix matrix_;
  std::vector<double> eigenvalues_;
  std::vector<Matrix> projectors_;
};

inline Matrix pauli_matrix(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Observable pauli(Axis axis) { return Observable(pauli_matrix(axis)); }

// Single-qubit states used throughout: |0>,|1>,|+>,|->,|R>,|L>.
namespace qubit {

inline Vector ket(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
inline PureState zero() { return PureState(ket(1, 0)); }
inline PureState one() { return PureState(ket(0, 1)); }
inline PureState plus() { return PureState(ket(kInvSqrt2, kInvSqrt2)); }
inline PureState minus() { return PureState(ket(kInvSqrt2, -kInvSqrt2)); }
inline PureState right() { return PureState(ket(kInvSqrt2, Complex(0, kInvSqrt2))); }
inline PureState left() { return PureState(ket(kInvSqrt2, Complex(0, -kInvSqrt2))); }

}  // namespace qubit

/// Two orthonormal n-qubit vectors spanning the logical qubit, plus the axis
/// that is diagonal in the pole basis.
///
/// With σx = |p0><p1| + |p1><p0|, σy = -i|p0><p1| + i|p1><p0|, σz = |p0><p0| - |p1><p1|:
///   computational frame (poles |0..0>, |1..1>): X̄ = σx, Ȳ = σy, Z̄ = σz;
///   phase-aligned frame (poles |R..R>, i|L..L>): X̄ = σx, Ȳ = σz, Z̄ = -σy.
/// Both assignments satisfy [X̄, Ȳ] = 2i Z̄ on the logical subspace, and the
/// phase-aligned frame reduces to the ordinary Paulis at n = 1.
class LogicalFrame {
 public:
  enum class Kind { computational, phase_aligned };

  static LogicalFrame computational(std::size_t n) {
    return LogicalFrame(n, Kind::computational, PureState(kron_power(qubit::zero().amplitudes(), n)),
                        PureState(kron_power(qubit::one().amplitudes(), n)));
  }

  static LogicalFrame phase_aligned(std::size_t n) {
    return LogicalFrame(n, Kind::phase_aligned, PureState(kron_power(qubit::right().amplitudes(), n)),
                        PureState(Complex(0, 1) * kron_power(qubit::left().amplitudes(), n)));
  }

  std::size_t qubits() const { return n_; }
  std::size_t dim() const { return qubit_dim(n_); }
  Kind kind() const { return kind_; }
  const PureState& pole0() const { return pole0_; }
  const PureState& pole1() const { return pole1_; }

  /// Projector onto span{pole0, pole1}.
  Matrix support() const { return pole0_.projector() + pole1_.projector(); }

  /// 2x2 matrix of the logical axis in the pole basis.
  Matrix logical_matrix(Axis axis) const {
    const Axis pole_axis = kind_ == Kind::computational ? axis : phase_aligned_to_pole(axis);
    Matrix m = pauli_matrix(pole_axis);
    if (kind_ == Kind::phase_aligned && axis == Axis::Z) m = -m;
    return m;
  }

  /// Lift a 2x2 pole-basis matrix to the full 2^n space.
  Matrix lift(const Matrix& logical) const {
    const auto& a = pole0_.amplitudes();
    const auto& b = pole1_.amplitudes();
    return logical(0, 0) * a * a.adjoint() + logical(0, 1) * a * b.adjoint() + logical(1, 0) * b * a.adjoint() +
           logical(1, 1) * b * b.adjoint();
  }

  Vector lift(const Vector& logical) const { return logical(0) * pole0_.amplitudes() + logical(1) * pole1_.amplitudes(); }

 private:
  LogicalFrame(std::size_t n, Kind kind, PureState p0, PureState p1)
      : n_(n), kind_(kind), pole0_(std::move(p0)), pole1_(std::move(p1)) {
    if (n == 0) throw std::invalid_argument("LogicalFrame: need at least one qubit");
  }

  static Axis phase_aligned_to_pole(Axis axis) {
    switch (axis) {
      case Axis::X: return Axis::X;
      case Axis::Y: return Axis::Z;
      case Axis::Z: return Axis::Y;
    }
    return axis;
  }

  std::size_t n_;
  Kind kind_;
  PureState pole0_;
  PureState pole1_;
};

/// Logical Pauli on span{pole0, pole1}, zero on the orthogonal complement.
inline Observable bold_pauli(const LogicalFrame& frame, Axis axis) { return Observable(frame.lift(frame.logical_matrix(axis))); }

}  // namespace dqs::qcore
