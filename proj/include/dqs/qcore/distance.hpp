#pragma once

#include "dqs/qcore/state.hpp"

namespace dqs::qcore {

/// F(ρ,σ) = ||√ρ √σ||₁², clamped to [0,1].
inline double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity: dimension mismatch");
  const Matrix prod = sqrt_psd(a.matrix()) * sqrt_psd(b.matrix());
  Eigen::JacobiSVD<Matrix> svd(prod);
  const double f = svd.singularValues().sum();
  return std::clamp(f * f, 0.0, 1.0);
}

inline double fidelity(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity: dimension mismatch");
  return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), 0.0, 1.0);
}

inline double fidelity(const PureState& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity: dimension mismatch");
  return std::clamp((a.amplitudes().adjoint() * b.matrix() * a.amplitudes())(0).real(), 0.0, 1.0);
}

/// D(ρ,σ) = ½||ρ − σ||₁.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_distance: dimension mismatch");
  return std::clamp(0.5 * trace_norm_hermitian(a.matrix() - b.matrix()), 0.0, 1.0);
}

/// Total-variation distance between two probability vectors.
inline double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("total_variation: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace dqs::qcore
