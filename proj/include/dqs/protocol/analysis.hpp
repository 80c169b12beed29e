#pragma once

#include "dqs/protocol/transcript.hpp"
#include "dqs/stats/stats.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace dqs::protocol {

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorrelatorEstimate {
  stats::CountsTable counts;
  double mean = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t samples() const { return counts.total(); }
};

struct CheckResult {
  Variant variant = Variant::entanglement;
  bool sufficient = false;
  /// F̂ (entanglement) or min_P F̂_P (mub); NaN when insufficient.
  double fidelity = std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, double> fidelity_by_label;       ///< mub: "+X" → F̂_{+X}
  std::map<std::string, CorrelatorEstimate> correlators;  ///< "XZ", "ZX", "YY" or signed labels
  double threshold = 0.0;                                  ///< 1 − ε²
  bool passed = false;
  double epsilon_implied = std::numeric_limits<double>::quiet_NaN();  ///< √(1 − F̂) clamped to [0, 1]
};

inline double implied_epsilon(double fidelity) { return std::sqrt(std::clamp(1.0 - fidelity, 0.0, 1.0)); }

namespace detail {

inline std::string pair_name(Axis a, Axis b) { return std::string(to_string(a)) + std::string(to_string(b)); }

/// Sign-adjusted ±1 value of a kept round, or 0 for a leak.
inline int kept_value(const RoundRecord& r) {
  if (r.leaked()) return 0;
  if (r.alice_axis) return r.alice_outcome * r.bob_outcome;
  return r.label->sign * r.bob_outcome;
}

inline void add_value(CorrelatorEstimate& c, int v) {
  if (v != 0) c.counts.add_signs(v, 1);
}

inline void finish(CorrelatorEstimate& c) {
  if (c.samples() > 0) c.mean = stats::correlator(c.counts);
}

}  // namespace detail

/// F̂ = (1 + <X⊗Z̄> + <Z⊗X̄> + <Y⊗Ȳ>)/4 (entanglement) or F̂_P = (<P̄> + 1)/2 per signed label (mub),
/// with pass ⇔ F̂ ≥ 1 − ε² (entanglement) or min_P F̂_P ≥ 1 − ε̄² (mub).
inline CheckResult check_fidelity(const Transcript& t, std::optional<double> epsilon = std::nullopt) {
  CheckResult res;
  res.variant = t.config.variant;
  const double eps = epsilon.value_or(t.config.epsilon);
  res.threshold = 1.0 - eps * eps;
  const bool ent = t.config.variant == Variant::entanglement;
  if (ent) {
    for (auto s : qcore::kStabilizers) res.correlators[detail::pair_name(s.alice, s.bob)];
  } else {
    for (auto p : qcore::kSignedAxes) res.correlators[qcore::to_string(p)];
  }
  for (const auto& r : t.rounds) {
    if (r.status != SiftStatus::kept_check) continue;
    const std::string key = ent ? detail::pair_name(*r.alice_axis, *r.bob_axis) : qcore::to_string(*r.label);
    detail::add_value(res.correlators.at(key), detail::kept_value(r));
  }
  res.sufficient = true;
  for (auto& [k, c] : res.correlators) {
    detail::finish(c);
    if (c.samples() == 0) res.sufficient = false;
  }
  if (!res.sufficient) return res;
  if (ent) {
    double f = 1.0;
    for (const auto& [k, c] : res.correlators) f += c.mean;
    res.fidelity = f / 4.0;
  } else {
    double fmin = 1.0;
    for (const auto& [k, c] : res.correlators) {
      const double fp = (c.mean + 1.0) / 2.0;
      res.fidelity_by_label[k] = fp;
      fmin = std::min(fmin, fp);
    }
    res.fidelity = fmin;
  }
  res.passed = res.fidelity >= res.threshold;
  res.epsilon_implied = implied_epsilon(res.fidelity);
  return res;
}

struct EstimateResult {
  double phi_hat = 0.0;  ///< in [0, π/(2n)]
  double pooled_correlator = 0.0;
  std::map<std::string, double> correlator_means;  ///< "XZ"/"ZX" or "X"/"Z"
  std::map<std::string, std::uint64_t> sample_counts;
  double standard_error = 0.0;
  bool trusted = true;  ///< false when the fidelity check failed
};

inline double phi_from_correlator(double c, std::size_t n) { return std::acos(std::clamp(c, -1.0, 1.0)) / (2.0 * double(n)); }

/// φ̂ = arccos(pooled correlator)/(2n), pooling the ±1 products of both estimation correlators;
/// standard error by propagating the two binomial correlator variances.
inline EstimateResult estimate_phase(const Transcript& t) {
  const bool ent = t.config.variant == Variant::entanglement;
  const std::size_t n = t.config.n;
  std::map<std::string, CorrelatorEstimate> corr;
  for (const auto& r : t.rounds) {
    if (r.status != SiftStatus::kept_estimation) continue;
    const std::string key = ent ? detail::pair_name(*r.alice_axis, *r.bob_axis) : std::string(to_string(r.label->axis));
    detail::add_value(corr[key], detail::kept_value(r));
  }
  std::uint64_t total = 0;
  double signed_sum = 0.0;
  for (auto& [k, c] : corr) {
    detail::finish(c);
    total += c.samples();
    if (c.samples() > 0) signed_sum += c.mean * double(c.samples());
  }
  if (total == 0) throw InsufficientData("estimate_phase: no kept estimation rounds");
  EstimateResult e;
  e.trusted = !t.aborted;
  e.pooled_correlator = signed_sum / double(total);
  e.phi_hat = phi_from_correlator(e.pooled_correlator, n);
  std::vector<double> scaled;
  for (const auto& [k, c] : corr) {
    e.correlator_means[k] = c.mean;
    e.sample_counts[k] = c.samples();
    if (c.samples() == 0) continue;
    const double na = double(c.samples());
    const double va = stats::correlator_variance(c.mean, c.samples());
    scaled.push_back(4.0 * na * na * va / (double(total) * double(total)));
  }
  while (scaled.size() < 2) scaled.push_back(0.0);
  const double s = std::clamp(2.0 * e.pooled_correlator, -2.0, 2.0);
  e.standard_error = std::sqrt(stats::phase_variance({scaled[0], scaled[1]}, s)) / double(n);
  return e;
}

struct WindowedEstimates {
  std::vector<double> phi_hats;
  std::size_t window_size = 0;
  std::size_t dropped = 0;
};

/// Splits the kept, non-leaked estimation rounds (in round order) into equal consecutive windows and
/// returns the per-window φ̂.
inline WindowedEstimates windowed_estimates(const Transcript& t, std::size_t windows) {
  if (windows < 1) throw std::invalid_argument("windowed_estimates: need at least one window");
  std::vector<int> values;
  for (const auto& r : t.rounds)
    if (r.status == SiftStatus::kept_estimation) {
      const int v = detail::kept_value(r);
      if (v != 0) values.push_back(v);
    }
  if (values.size() < windows) throw InsufficientData("windowed_estimates: fewer kept estimation rounds than windows");
  WindowedEstimates w;
  w.window_size = values.size() / windows;
  w.dropped = values.size() - w.window_size * windows;
  for (std::size_t k = 0; k < windows; ++k) {
    long sum = 0;
    for (std::size_t j = 0; j < w.window_size; ++j) sum += values[k * w.window_size + j];
    w.phi_hats.push_back(phi_from_correlator(double(sum) / double(w.window_size), t.config.n));
  }
  return w;
}

}  // namespace dqs::protocol
