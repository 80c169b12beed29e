#pragma once

#include "dqs/qcore/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dqs::metrics {

using qcore::kPi;

/// Minimal arc of the unit circle containing every phase: 2π minus the largest gap.
inline double delta_arc_phases(std::vector<double> phases) {
  if (phases.empty()) throw std::invalid_argument("delta_arc: no phases");
  for (auto& p : phases) {
    p = std::fmod(p, 2.0 * kPi);
    if (p < 0.0) p += 2.0 * kPi;
  }
  std::sort(phases.begin(), phases.end());
  double largest_gap = phases.front() + 2.0 * kPi - phases.back();
  for (std::size_t k = 1; k < phases.size(); ++k) largest_gap = std::max(largest_gap, phases[k] - phases[k - 1]);
  const double arc = 2.0 * kPi - largest_gap;
  return arc < 1e-12 ? 0.0 : arc;
}

inline double delta_arc(const qcore::Matrix& u) {
  if (!qcore::is_unitary(u)) throw std::invalid_argument("delta_arc: matrix is not unitary");
  Eigen::ComplexEigenSolver<qcore::Matrix> es(u);
  std::vector<double> phases;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) phases.push_back(std::arg(es.eigenvalues()(k)));
  return delta_arc_phases(std::move(phases));
}

/// Eigenphases (n − 2j)φ of (e^{iφY})^{⊗n}, j = 0..n.
inline double delta_arc_encoding(std::size_t n, double phi) {
  std::vector<double> phases;
  for (std::size_t j = 0; j <= n; ++j) phases.push_back((double(n) - 2.0 * double(j)) * phi);
  return delta_arc_phases(std::move(phases));
}

/// Minimum over purifications |v> of |<v|(U⊗I)|v>|².
inline double acin_min_fidelity_from_arc(double delta) {
  const double c = std::cos(std::min(delta / 2.0, kPi / 2.0));
  return c * c;
}

inline double acin_min_fidelity(const qcore::Matrix& u) { return acin_min_fidelity_from_arc(delta_arc(u)); }

}  // namespace dqs::metrics
