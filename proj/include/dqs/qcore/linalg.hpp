#pragma once

// Dense complex linear algebra helpers shared by every dqs module.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqs::qcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::size_t qubit_dim(std::size_t qubits) { return std::size_t{1} << qubits; }

inline Matrix identity(std::size_t dim) { return Matrix::Identity(Eigen::Index(dim), Eigen::Index(dim)); }

inline Matrix dagger(const Matrix& m) { return m.adjoint(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Tensor power a^{⊗k}; k = 0 gives the 1x1 identity.
inline Matrix kron_power(const Matrix& a, std::size_t k) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

inline Vector kron_power(const Vector& a, std::size_t k) {
  Vector out = Vector::Ones(1);
  for (std::size_t i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

/// I_before ⊗ op ⊗ I_after.
inline Matrix embed(const Matrix& op, std::size_t before_dim, std::size_t after_dim) {
  if (before_dim == 1 && after_dim == 1) return op;
  return kron(kron(identity(before_dim), op), identity(after_dim));
}

inline double hermiticity_error(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Matrix& m, double tol = 1e-10) {
  return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

inline bool is_unitary(const Matrix& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - identity(std::size_t(u.rows()))).cwiseAbs().maxCoeff() <= tol;
}

inline RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Schatten 1-norm of a Hermitian matrix.
inline double trace_norm_hermitian(const Matrix& m) { return hermitian_eigenvalues(m).cwiseAbs().sum(); }

/// Square root of a positive semidefinite matrix; negative round-off eigenvalues are clipped.
inline Matrix sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  RealVector ev = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * ev.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

inline double operator_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/// exp(i·θ·H) for Hermitian H.
inline Matrix exp_i_hermitian(const Matrix& h, double theta) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  Vector phases(solver.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, theta * solver.eigenvalues()(k));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Rotates v so that its first non-negligible component is real and positive.
inline Vector canonical_phase(Vector v, double tol = 1e-12) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > tol) {
      v *= std::conj(v(k)) / std::abs(v(k));
      break;
    }
  }
  return v;
}

namespace detail {

inline std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace detail

/// Partial trace keeping the subsystems listed in `keep` (in their original order).
inline Matrix partial_trace(const Matrix& rho, std::span<const std::size_t> dims, std::vector<std::size_t> keep) {
  const std::size_t total = detail::product(dims);
  if (std::size_t(rho.rows()) != total || rho.rows() != rho.cols())
    throw DimensionError("partial_trace: matrix does not match subsystem dims");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto k : keep)
    if (k >= dims.size()) throw DimensionError("partial_trace: subsystem index out of range");

  const std::size_t m = dims.size();
  std::vector<bool> kept(m, false);
  for (auto k : keep) kept[k] = true;

  std::size_t keep_dim = 1, drop_dim = 1;
  for (std::size_t s = 0; s < m; ++s) (kept[s] ? keep_dim : drop_dim) *= dims[s];

  // split each full index into (kept index, dropped index)
  std::vector<std::size_t> keep_index(total), drop_index(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx, ki = 0, di = 0, kstride = 1, dstride = 1;
    for (std::size_t s = m; s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        ki += digit * kstride;
        kstride *= dims[s];
      } else {
        di += digit * dstride;
        dstride *= dims[s];
      }
    }
    keep_index[idx] = ki;
    drop_index[idx] = di;
  }

  Matrix out = Matrix::Zero(Eigen::Index(keep_dim), Eigen::Index(keep_dim));
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (drop_index[i] == drop_index[j]) out(Eigen::Index(keep_index[i]), Eigen::Index(keep_index[j])) += rho(Eigen::Index(i), Eigen::Index(j));
  return out;
}

}  // namespace dqs::qcore
