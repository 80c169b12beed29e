#pragma once

#include "dqs/metrics/arc.hpp"
#include "dqs/types.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace dqs::metrics {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kSinFloor = 1e-12;

/// (T − N_d − 1)·√(n / (2 N_d)); 0 when N_d = 0 (individual attacks only).
inline double f_definetti(std::uint64_t T, std::uint64_t N_d, std::size_t n) {
  if (T < 1) throw std::invalid_argument("f_definetti: T must be at least 1");
  if (N_d >= T) throw std::invalid_argument("f_definetti: N_d must be smaller than T");
  if (N_d == 0) return 0.0;
  return double(T - N_d - 1) * std::sqrt(double(n) / (2.0 * double(N_d)));
}

struct Epsilon0Input {
  BoundMode mode = BoundMode::one_way_individual;
  Variant variant = Variant::entanglement;
  double threshold = 0.0;  ///< ε (entanglement) or ε̄ (mub)
  std::uint64_t T = 1;
  std::uint64_t N_d = 0;
  std::size_t n = 1;
  double phi = 0.0;
};

/// Additive two-way term |sin(min{δ/2, π/2})| with δ the arc of the encoding eigenphases.
inline double two_way_term(std::size_t n, double phi) {
  return std::abs(std::sin(std::min(delta_arc_encoding(n, phi) / 2.0, kPi / 2.0)));
}

/// ε₀ per attack mode and protocol variant. In two-way mode the entanglement variant
/// uses the 4f coefficient and the mub variant the 2f coefficient.
inline double epsilon0(const Epsilon0Input& in) {
  if (in.threshold < 0.0) throw std::invalid_argument("epsilon0: threshold must be non-negative");
  if (in.n < 1) throw std::invalid_argument("epsilon0: n must be at least 1");
  const double e2 = in.threshold * in.threshold;
  const bool ent = in.variant == Variant::entanglement;
  if (in.mode == BoundMode::one_way_individual) return ent ? std::sqrt(2.0 / 3.0) * in.threshold : in.threshold;
  if (in.N_d == 0) throw std::invalid_argument("epsilon0: general-coherent modes need N_d > 0");
  const double f = f_definetti(in.T, in.N_d, in.n);
  if (in.mode == BoundMode::one_way_gc) return ent ? std::sqrt(2.0 / 3.0 * e2 + 4.0 * f) : std::sqrt(e2 + 4.0 * f);
  const double base = ent ? std::sqrt(2.0 / 3.0 * e2 + 4.0 * f) : std::sqrt(e2 + 2.0 * f);
  return base + two_way_term(in.n, in.phi);
}

inline double sin_2nphi(std::size_t n, double phi) { return std::abs(std::sin(2.0 * double(n) * phi)); }

/// ε₀ / (n |sin 2nφ|); +∞ where the sine vanishes.
inline double bias_bound(double eps0, std::size_t n, double phi) {
  const double s = sin_2nphi(n, phi);
  if (s < kSinFloor) return kInfinity;
  return eps0 / (double(n) * s);
}

/// GC: (2ε₀ + ε₀²)/(n² sin²2nφ); individual: (2ε₀/N_e + ε₀²)/(n² sin²2nφ).
inline double variance_bound(double eps0, std::size_t n, double phi, BoundMode mode, std::uint64_t N_e = 1) {
  if (mode == BoundMode::one_way_individual && N_e < 1)
    throw std::invalid_argument("variance_bound: individual mode needs N_e >= 1");
  const double s = sin_2nphi(n, phi);
  if (s < kSinFloor) return kInfinity;
  const double num = mode == BoundMode::one_way_individual ? 2.0 * eps0 / double(N_e) + eps0 * eps0 : 2.0 * eps0 + eps0 * eps0;
  return num / (double(n * n) * s * s);
}

struct BoundReport {
  BoundMode mode = BoundMode::one_way_individual;
  Variant variant = Variant::entanglement;
  double f_value = 0.0;
  bool f_applicable = false;  ///< false when N_d = 0
  double epsilon0 = 0.0;
  double bias_bound = 0.0;
  double variance_bound = 0.0;
  double delta = 0.0;  ///< arc of the encoding eigenphases
  double phi = 0.0;
  std::size_t n = 1;
  std::uint64_t T = 1, N_d = 0, N_e = 1;
};

inline BoundReport evaluate_bounds(const Epsilon0Input& in, std::uint64_t N_e) {
  BoundReport r;
  r.mode = in.mode;
  r.variant = in.variant;
  r.phi = in.phi;
  r.n = in.n;
  r.T = in.T;
  r.N_d = in.N_d;
  r.N_e = N_e;
  r.f_applicable = in.N_d > 0;
  r.f_value = f_definetti(in.T, in.N_d, in.n);
  r.epsilon0 = epsilon0(in);
  r.bias_bound = bias_bound(r.epsilon0, in.n, in.phi);
  r.variance_bound = variance_bound(r.epsilon0, in.n, in.phi, in.mode, N_e);
  r.delta = delta_arc_encoding(in.n, in.phi);
  return r;
}

}  // namespace dqs::metrics
