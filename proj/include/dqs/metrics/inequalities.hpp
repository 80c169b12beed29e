#pragma once

#include "dqs/metrics/locc1.hpp"
#include "dqs/qcore/distance.hpp"
#include "dqs/qcore/measure.hpp"

#include <optional>
#include <string>

namespace dqs::metrics {

/// lhs ≥ rhs (or lhs ≤ rhs for upper-bound checks), with slack = |lhs − rhs| signed toward holding.
struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = true;
};

inline constexpr double kInequalityTolerance = 1e-9;

inline InequalityReport lower_check(double lhs, double rhs, double tol = kInequalityTolerance) {
  return {lhs, rhs, lhs - rhs, lhs >= rhs - tol};
}
inline InequalityReport upper_check(double lhs, double rhs, double tol = kInequalityTolerance) {
  return {lhs, rhs, rhs - lhs, lhs <= rhs + tol};
}

/// Tr[Eσ] ≥ Tr[Eτ] − 2D. D defaults to the trace distance, which upper-bounds the LOCC₁ distance.
inline InequalityReport gentle_measurement_check(const qcore::Matrix& effect, const qcore::DensityMatrix& tau,
                                                 const qcore::DensityMatrix& sigma, std::optional<double> distance = {}) {
  if (!qcore::is_hermitian(effect)) throw std::invalid_argument("gentle_measurement_check: effect not Hermitian");
  const auto ev = qcore::hermitian_eigenvalues(effect);
  if (ev.minCoeff() < -1e-10 || ev.maxCoeff() > 1.0 + 1e-10)
    throw std::invalid_argument("gentle_measurement_check: effect must satisfy 0 <= E <= 1");
  const double d = distance ? *distance : qcore::trace_distance(tau, sigma);
  return lower_check(qcore::expectation(effect, sigma), qcore::expectation(effect, tau) - 2.0 * d);
}

/// 2aK·distance: bound on |Tr[A(σ − σ')]| for A a sum of K local terms of norm ≤ a.
inline double uniform_continuity_bound(double a, std::size_t K, double distance) {
  if (a < 0.0) throw std::invalid_argument("uniform_continuity_bound: a must be non-negative");
  if (K < 1) throw std::invalid_argument("uniform_continuity_bound: K must be at least 1");
  return 2.0 * a * double(K) * distance;
}

/// (k − 1)·√(log₂ d / (2(m − k))).
inline double definetti_bound(std::size_t m, std::size_t k, std::size_t d) {
  if (k < 1 || k >= m) throw std::invalid_argument("definetti_bound: need 1 <= k < m");
  return double(k - 1) * std::sqrt(std::log2(double(d)) / (2.0 * double(m - k)));
}

struct ProductMixture {
  std::vector<double> weights;
  std::vector<qcore::DensityMatrix> components;  ///< single-party states ρ_i

  qcore::DensityMatrix power(std::size_t k) const {
    const std::size_t d = components.front().dim();
    qcore::Matrix acc = qcore::Matrix::Zero(Eigen::Index(std::pow(d, k)), Eigen::Index(std::pow(d, k)));
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (weights[i] > 0.0) acc += weights[i] * qcore::kron_power(components[i].matrix(), k);
    return qcore::DensityMatrix::trusted(acc);
  }
};

/// Fixed single-qubit pure-state dictionary: the six axis eigenstates and eight cube-corner states.
inline std::vector<qcore::DensityMatrix> product_state_dictionary() {
  std::vector<qcore::DensityMatrix> dict;
  const auto from_bloch = [](double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    qcore::Matrix m = qcore::identity(2);
    m += (x / r) * qcore::pauli_matrix(qcore::Axis::X) + (y / r) * qcore::pauli_matrix(qcore::Axis::Y) +
         (z / r) * qcore::pauli_matrix(qcore::Axis::Z);
    return qcore::DensityMatrix::trusted(0.5 * m);
  };
  for (int s : {1, -1}) {
    dict.push_back(from_bloch(s, 0, 0));
    dict.push_back(from_bloch(0, s, 0));
    dict.push_back(from_bloch(0, 0, s));
  }
  for (int x : {1, -1})
    for (int y : {1, -1})
      for (int z : {1, -1}) dict.push_back(from_bloch(x, y, z));
  return dict;
}

namespace detail {
inline std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / double(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  for (auto& x : v) x = std::max(0.0, x - theta);
  return v;
}
}  // namespace detail

/// Least-squares fit of Σ w_i ρ_i^{⊗k} to target (Frobenius norm) over the simplex, by projected gradient.
inline ProductMixture fit_product_mixture(const qcore::DensityMatrix& target, std::size_t k,
                                          const std::vector<qcore::DensityMatrix>& dictionary,
                                          std::size_t iterations = 5000) {
  if (dictionary.empty()) throw std::invalid_argument("fit_product_mixture: empty dictionary");
  const std::size_t m = dictionary.size();
  std::vector<qcore::Matrix> powers;
  for (const auto& c : dictionary) powers.push_back(qcore::kron_power(c.matrix(), k));
  if (std::size_t(powers.front().rows()) != target.dim()) throw qcore::DimensionError("fit_product_mixture: dimension mismatch");
  // Gram matrix G_ij = Re Tr[P_i P_j], linear term b_i = Re Tr[P_i target]
  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd G(mi, mi);
  Eigen::VectorXd b(mi);
  for (std::size_t i = 0; i < m; ++i) {
    b(Eigen::Index(i)) = qcore::trace_product_real(powers[i], target.matrix());
    for (std::size_t j = 0; j < m; ++j) G(Eigen::Index(i), Eigen::Index(j)) = qcore::trace_product_real(powers[i], powers[j]);
  }
  const double lipschitz = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G).eigenvalues().maxCoeff();
  std::vector<double> w(m, 1.0 / double(m));
  for (std::size_t it = 0; it < iterations; ++it) {
    const Eigen::Map<const Eigen::VectorXd> wv(w.data(), mi);
    const Eigen::VectorXd grad = G * wv - b;
    std::vector<double> next(m);
    for (std::size_t i = 0; i < m; ++i) next[i] = w[i] - grad(Eigen::Index(i)) / lipschitz;
    w = detail::project_to_simplex(std::move(next));
  }
  return {w, dictionary};
}

/// D_LOCC₁(Tr_{m−k} σ, ∫dμ ρ^{⊗k}) (lower-bound estimate) against (k−1)√(log₂ d/(2(m−k))), for m qubits.
inline InequalityReport definetti_inequality_check(const qcore::DensityMatrix& sigma, std::size_t m, std::size_t k,
                                                   const ProductMixture& mixture, std::uint64_t seed,
                                                   const Locc1Options& opt = {}) {
  if (m > 4) throw qcore::DimensionError("definetti_inequality_check: at most 4 qubit parties");
  if (sigma.dim() != qcore::qubit_dim(m)) throw qcore::DimensionError("definetti_inequality_check: state is not on m qubits");
  std::vector<std::size_t> dims(m, 2), keep(k);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  const qcore::DensityMatrix marginal = qcore::reduced_state(sigma, dims, keep);
  const qcore::DensityMatrix mix = mixture.power(k);
  const double lhs = locc1_lower_bound(marginal, mix, std::vector<std::size_t>(k, 2), seed, opt).lower_bound;
  return upper_check(lhs, definetti_bound(m, k, 2));
}

}  // namespace dqs::metrics
