#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dqs::metrics {

struct SearchResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;  ///< step shrank below tolerance before the evaluation cap
};

struct SearchOptions {
  double initial_step = 0.5;
  double tolerance = 1e-7;
  std::size_t max_evaluations = 20000;
};

/// Gradient-free compass search maximizing f: probes ±step along each
/// coordinate, accepts improvements, halves the step after a pass without one.
inline SearchResult coordinate_search(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
                                      const SearchOptions& opt = {}) {
  SearchResult r;
  double best = f(x);
  r.evaluations = 1;
  double step = opt.initial_step;
  while (step >= opt.tolerance && r.evaluations < opt.max_evaluations) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size() && r.evaluations < opt.max_evaluations; ++i) {
      for (double dir : {1.0, -1.0}) {
        const double saved = x[i];
        x[i] = saved + dir * step;
        const double v = f(x);
        ++r.evaluations;
        if (v > best) {
          best = v;
          improved = true;
          break;
        }
        x[i] = saved;
      }
    }
    if (!improved) step *= 0.5;
  }
  r.converged = step < opt.tolerance;
  r.x = std::move(x);
  r.value = best;
  return r;
}

}  // namespace dqs::metrics
