#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace dqs {

/// Seeded random source with platform-independent draws.
///
/// Uniform doubles are built from the top 53 bits of mt19937_64, and normals
/// use Box-Muller, so streams are bit-identical across standard libraries
/// (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Independent stream derived from (seed, stream) through splitmix64.
  static Rng derived(std::uint64_t seed, std::uint64_t stream) { return Rng(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))); }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, k).
  std::size_t index(std::size_t k) {
    auto i = std::size_t(uniform() * double(k));
    return i < k ? i : k - 1;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * 3.14159265358979323846 * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dqs
