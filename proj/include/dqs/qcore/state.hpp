#pragma once

#include "dqs/qcore/linalg.hpp"

#include <utility>

namespace dqs::qcore {

class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-12;

/// Normalised state vector.
class PureState {
 public:
  explicit PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) throw InvalidState("PureState: empty amplitude vector");
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) throw InvalidState("PureState: amplitudes are not normalised");
  }

  static PureState normalized(Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) throw InvalidState("PureState: zero vector");
    return PureState(amplitudes / norm);
  }

  std::size_t dim() const { return std::size_t(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(Eigen::Index(i)); }

  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  friend PureState tensor(const PureState& a, const PureState& b) { return PureState(kron(a.amplitudes_, b.amplitudes_)); }

 private:
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
///
/// The public constructor validates all three invariants. `trusted` skips the
/// checks for results of trace-preserving maps inside hot loops; tests
/// re-validate those outputs through `validate()`.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix data) : data_(std::move(data)) { validate(); }
  DensityMatrix(const PureState& psi) : data_(psi.projector()) {}  // NOLINT: pure states embed naturally

  static DensityMatrix trusted(Matrix data) { return DensityMatrix(std::move(data), Trusted{}); }

  static DensityMatrix maximally_mixed(std::size_t dim) { return trusted(identity(dim) / double(dim)); }

  std::size_t dim() const { return std::size_t(data_.rows()); }
  const Matrix& matrix() const { return data_; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_(Eigen::Index(i), Eigen::Index(j)); }

  double trace() const { return data_.trace().real(); }
  double purity() const { return (data_ * data_).trace().real(); }

  /// Throws InvalidState describing the first violated invariant.
  void validate(double tol = kStateTolerance) const {
    if (data_.rows() == 0 || data_.rows() != data_.cols()) throw InvalidState("DensityMatrix: not a square matrix");
    if (hermiticity_error(data_) > tol) throw InvalidState("DensityMatrix: not Hermitian");
    if (std::abs(data_.trace().real() - 1.0) > tol || std::abs(data_.trace().imag()) > tol)
      throw InvalidState("DensityMatrix: trace is not 1");
    if (hermitian_eigenvalues(data_).minCoeff() < -tol) throw InvalidState("DensityMatrix: not positive semidefinite");
  }

  bool is_valid(double tol = kStateTolerance) const {
    try {
      validate(tol);
      return true;
    } catch (const InvalidState&) {
      return false;
    }
  }

  friend DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) { return trusted(kron(a.data_, b.data_)); }

 private:
  struct Trusted {};
  DensityMatrix(Matrix data, Trusted) : data_(std::move(data)) {}

  Matrix data_;
};

inline DensityMatrix reduced_state(const DensityMatrix& rho, std::span<const std::size_t> dims, std::vector<std::size_t> keep) {
  return DensityMatrix::trusted(partial_trace(rho.matrix(), dims, std::move(keep)));
}

/// Computational basis vector |index> in dimension dim.
inline PureState basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis_state: index out of range");
  Vector v = Vector::Zero(Eigen::Index(dim));
  v(Eigen::Index(index)) = 1.0;
  return PureState(std::move(v));
}

}  // namespace dqs::qcore
