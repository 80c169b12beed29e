#pragma once

#include "dqs/qcore/observable.hpp"

namespace dqs::qcore {

/// Completely positive trace-preserving map in Kraus form.
class Channel {
 public:
  explicit Channel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw std::invalid_argument("Channel: no Kraus operators");
    const auto in = kraus_.front().cols();
    const auto out = kraus_.front().rows();
    Matrix sum = Matrix::Zero(in, in);
    for (const auto& k : kraus_) {
      if (k.cols() != in || k.rows() != out) throw DimensionError("Channel: Kraus operators have inconsistent shapes");
      sum += k.adjoint() * k;
    }
    if ((sum - identity(std::size_t(in))).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("Channel: Kraus operators are not trace preserving");
  }

  static Channel unitary(const Matrix& u) { return Channel({u}); }
  static Channel identity_channel(std::size_t dim) { return Channel({identity(dim)}); }

  std::size_t dim_in() const { return std::size_t(kraus_.front().cols()); }
  std::size_t dim_out() const { return std::size_t(kraus_.front().rows()); }
  const std::vector<Matrix>& kraus_operators() const { return kraus_; }

  /// I_before ⊗ Φ ⊗ I_after.
  Channel embedded(std::size_t before_dim, std::size_t after_dim) const {
    std::vector<Matrix> ks;
    ks.reserve(kraus_.size());
    for (const auto& k : kraus_) ks.push_back(embed(k, before_dim, after_dim));
    return Channel(std::move(ks));
  }

 private:
  std::vector<Matrix> kraus_;
};

/// ρ ↦ (1-p)ρ + p·I/d, written with the 4^n Pauli-string Kraus operators (d = 2^n).
inline Channel depolarizing(std::size_t qubits, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p must lie in [0, 1]");
  const std::size_t strings = std::size_t{1} << (2 * qubits);
  const double w_id = 1.0 - p + p / double(strings);
  const double w_other = p / double(strings);
  std::vector<Matrix> ks;
  for (std::size_t s = 0; s < strings; ++s) {
    Matrix op = Matrix::Identity(1, 1);
    for (std::size_t q = 0; q < qubits; ++q) {
      const std::size_t code = (s >> (2 * q)) & 3;
      op = kron(op, code == 0 ? identity(2) : pauli_matrix(Axis(code - 1)));
    }
    const double w = s == 0 ? w_id : w_other;
    if (w > 0.0) ks.push_back(std::sqrt(w) * op);
  }
  return Channel(std::move(ks));
}

inline DensityMatrix apply(const Channel& channel, const DensityMatrix& rho) {
  if (channel.dim_in() != rho.dim()) throw DimensionError("apply: channel input dimension does not match state");
  Matrix out = Matrix::Zero(Eigen::Index(channel.dim_out()), Eigen::Index(channel.dim_out()));
  for (const auto& k : channel.kraus_operators()) out.noalias() += k * rho.matrix() * k.adjoint();
  return DensityMatrix::trusted(std::move(out));
}

/// U ρ U†.
inline DensityMatrix apply_unitary(const Matrix& unitary, const DensityMatrix& rho) {
  if (std::size_t(unitary.cols()) != rho.dim() || unitary.rows() != unitary.cols())
    throw DimensionError("apply_unitary: unitary dimension does not match state");
  return DensityMatrix::trusted(unitary * rho.matrix() * unitary.adjoint());
}

/// Replaces subsystem `target` of a state on `dims` with the maximally mixed
/// state with probability p. Equivalent to depolarizing that factor.
inline DensityMatrix depolarize_subsystem(const DensityMatrix& rho, std::span<const std::size_t> dims, std::size_t target, double p) {
  if (p == 0.0) return rho;
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (s != target) rest.push_back(s);
  std::size_t before = 1, after = 1;
  for (std::size_t s = 0; s < target; ++s) before *= dims[s];
  for (std::size_t s = target + 1; s < dims.size(); ++s) after *= dims[s];
  const Matrix others = partial_trace(rho.matrix(), dims, rest);  // on (before, after) in order
  const std::size_t d = dims[target];
  // reinsert I/d between the "before" and "after" factors
  Matrix mixed = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t b1 = 0; b1 < before; ++b1)
    for (std::size_t b2 = 0; b2 < before; ++b2)
      for (std::size_t a1 = 0; a1 < after; ++a1)
        for (std::size_t a2 = 0; a2 < after; ++a2) {
          const Complex v = others(Eigen::Index(b1 * after + a1), Eigen::Index(b2 * after + a2)) / double(d);
          if (v == Complex(0)) continue;
          for (std::size_t t = 0; t < d; ++t)
            mixed(Eigen::Index((b1 * d + t) * after + a1), Eigen::Index((b2 * d + t) * after + a2)) = v;
        }
  return DensityMatrix::trusted((1.0 - p) * rho.matrix() + p * mixed);
}

}  // namespace dqs::qcore
