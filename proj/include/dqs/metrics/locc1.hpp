#pragma once

#include "dqs/metrics/optimize.hpp"
#include "dqs/qcore/distance.hpp"
#include "dqs/qcore/rng.hpp"

#include <numeric>

namespace dqs::metrics {

struct Locc1Result {
  double lower_bound = 0.0;
  std::vector<double> best_measurement_parameters;
  std::size_t restarts_used = 0;
  bool converged = false;
};

struct Locc1Options {
  std::size_t restarts = 32;
  SearchOptions search{};
};

namespace detail {

/// Orthonormal basis (columns) from a parameter block: Bloch angles for d = 2,
/// exp(iH) with H built from d² real parameters otherwise.
inline qcore::Matrix basis_from_parameters(std::size_t d, const double* p) {
  using qcore::Complex;
  if (d == 2) {
    const double c = std::cos(p[0] / 2.0), s = std::sin(p[0] / 2.0);
    const Complex e = std::polar(1.0, p[1]);
    qcore::Matrix b(2, 2);
    b << c, -s, e * s, e * c;
    return b;
  }
  qcore::Matrix h = qcore::Matrix::Zero(Eigen::Index(d), Eigen::Index(d));
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) h(Eigen::Index(i), Eigen::Index(i)) = p[k++];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex v(p[k], p[k + 1]);
      k += 2;
      h(Eigen::Index(i), Eigen::Index(j)) = v;
      h(Eigen::Index(j), Eigen::Index(i)) = std::conj(v);
    }
  return qcore::exp_i_hermitian(h, 1.0);
}

inline std::size_t parameters_per_basis(std::size_t d) { return d == 2 ? 2 : d * d; }

/// Sequential adaptive measurement: party k's basis is chosen by the outcomes of parties < k.
class AdaptiveMeasurement {
 public:
  explicit AdaptiveMeasurement(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    std::size_t branches = 1;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      first_basis_.push_back(bases_);
      bases_ += branches;
      branches *= dims_[k];
    }
    outcomes_ = branches;
  }

  std::size_t parameter_count() const {
    std::size_t total = 0, branches = 1;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      total += branches * parameters_per_basis(dims_[k]);
      branches *= dims_[k];
    }
    return total;
  }

  std::vector<double> distribution(const qcore::Matrix& rho, const std::vector<double>& params) const {
    std::vector<qcore::Matrix> bases;
    bases.reserve(bases_);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const std::size_t count = (k + 1 < first_basis_.size() ? first_basis_[k + 1] : bases_) - first_basis_[k];
      for (std::size_t b = 0; b < count; ++b) {
        bases.push_back(basis_from_parameters(dims_[k], params.data() + offset));
        offset += parameters_per_basis(dims_[k]);
      }
    }
    std::vector<double> probs(outcomes_);
    std::vector<std::size_t> digits(dims_.size());
    for (std::size_t o = 0; o < outcomes_; ++o) {
      std::size_t rem = o;
      for (std::size_t k = dims_.size(); k-- > 0;) {
        digits[k] = rem % dims_[k];
        rem /= dims_[k];
      }
      qcore::Vector v = qcore::Vector::Ones(1);
      std::size_t branch = 0;
      for (std::size_t k = 0; k < dims_.size(); ++k) {
        const qcore::Matrix& basis = bases[first_basis_[k] + branch];
        v = qcore::kron(v, qcore::Vector(basis.col(Eigen::Index(digits[k]))));
        branch = branch * dims_[k] + digits[k];
      }
      probs[o] = std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
    }
    return probs;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> first_basis_;
  std::size_t bases_ = 0;
  std::size_t outcomes_ = 1;
};

}  // namespace detail

/// Certified lower bound on the one-round LOCC distance: the best total-variation
/// distance of outcome distributions over sequential adaptive projective measurements.
inline Locc1Result locc1_lower_bound(const qcore::DensityMatrix& rho, const qcore::DensityMatrix& sigma,
                                     const std::vector<std::size_t>& parties, std::uint64_t seed,
                                     const Locc1Options& opt = {}) {
  if (parties.empty() || parties.size() > 3) throw qcore::DimensionError("locc1_lower_bound: between 1 and 3 parties supported");
  for (auto d : parties)
    if (d < 2 || d > 4) throw qcore::DimensionError("locc1_lower_bound: party dimensions must lie in [2, 4]");
  const std::size_t total = std::accumulate(parties.begin(), parties.end(), std::size_t{1}, std::multiplies<>());
  if (rho.dim() != total || sigma.dim() != total)
    throw qcore::DimensionError("locc1_lower_bound: states do not match the party dimensions");
  if (opt.restarts < 1) throw std::invalid_argument("locc1_lower_bound: need at least one restart");

  const detail::AdaptiveMeasurement meas(parties);
  const auto objective = [&](const std::vector<double>& x) {
    const auto p = meas.distribution(rho.matrix(), x);
    const auto q = meas.distribution(sigma.matrix(), x);
    return qcore::total_variation(p, q);
  };

  Locc1Result best;
  best.lower_bound = -1.0;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    auto rng = Rng::derived(seed, r);
    std::vector<double> x0(meas.parameter_count(), 0.0);
    if (r > 0)
      for (auto& v : x0) v = 2.0 * qcore::kPi * rng.uniform();
    auto res = coordinate_search(objective, std::move(x0), opt.search);
    if (res.value > best.lower_bound) {
      best.lower_bound = res.value;
      best.best_measurement_parameters = std::move(res.x);
      best.converged = res.converged;
    }
  }
  best.restarts_used = opt.restarts;
  best.lower_bound = std::clamp(best.lower_bound, 0.0, 1.0);
  return best;
}

}  // namespace dqs::metrics
