#pragma once

// Haar / Ginibre samplers for property tests and inequality suites.

#include "dqs/qcore/observable.hpp"
#include "dqs/qcore/rng.hpp"

namespace dqs::qcore {

inline Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  return g;
}

inline PureState random_pure_state(std::size_t dim, Rng& rng) { return PureState::normalized(ginibre(dim, 1, rng).col(0)); }

/// Induced-measure mixed state G G† / Tr with G of shape dim × rank.
inline DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank = 0) {
  const Matrix g = ginibre(dim, rank == 0 ? dim : rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::trusted(0.5 * (rho + rho.adjoint()));
}

/// Haar unitary via QR with phase-corrected diagonal.
inline Matrix random_unitary(std::size_t dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

inline Matrix random_hermitian(std::size_t dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

/// Random operator E with 0 ≤ E ≤ 1.
inline Matrix random_effect(std::size_t dim, Rng& rng) {
  const Matrix u = random_unitary(dim, rng);
  Vector diag(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < diag.size(); ++k) diag(k) = rng.uniform();
  return u * diag.asDiagonal() * u.adjoint();
}

}  // namespace dqs::qcore
