#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "landau/core.hpp"

namespace testing {

inline landau::ParticleEnsemble random_ensemble(std::size_t n, int d, std::uint64_t seed,
                                                double spread = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-spread, spread);
  std::uniform_real_distribution<double> wt(0.1, 1.0);
  landau::ParticleEnsemble e;
  e.d = d;
  for (std::size_t i = 0; i < n; ++i) {
    landau::Vec v{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) v[a] = pos(rng);
    e.velocities.push_back(v);
    e.weights.push_back(wt(rng) / static_cast<double>(n));
  }
  return e;
}

inline std::vector<landau::Vec> random_points(std::size_t n, int d, std::uint64_t seed,
                                              double spread = 1.0) {
  return random_ensemble(n, d, seed, spread).velocities;
}

inline double max_rel_diff(std::span<const double> a, std::span<const double> b) {
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(b[i]));
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

inline double max_rel_diff(std::span<const landau::Vec> a, std::span<const landau::Vec> b,
                           int d) {
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < d; ++k) {
      scale = std::max(scale, std::abs(b[i][k]));
      diff = std::max(diff, std::abs(a[i][k] - b[i][k]));
    }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace testing
