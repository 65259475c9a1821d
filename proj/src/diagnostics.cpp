#include "landau/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "landau/fields.hpp"

namespace landau {

Moments moments(const ParticleEnsemble& ens) {
  Moments m;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const double w = ens.weights[i];
    const Vec& v = ens.velocities[i];
    m.mass += w;
    double r2 = 0.0;
    for (int a = 0; a < ens.d; ++a) {
      m.momentum[a] += w * v[a];
      r2 += v[a] * v[a];
    }
    m.energy += w * r2;
  }
  return m;
}

double relative_l2_error(std::span<const double> blob, const VelocityGrid& grid,
                         const ExactFn& exact, double t) {
  if (blob.size() != grid.size()) throw ConfigError("blob values must match the grid");
  double num = 0.0, den = 0.0;
  for (std::size_t l = 0; l < grid.size(); ++l) {
    const double fe = exact(t, grid.centers[l]);
    const double diff = fe - blob[l];
    num += diff * diff;
    den += fe * fe;
  }
  if (!(den > 0.0)) throw NumericalError("exact solution vanishes on every grid center");
  // the common h^d factor cancels
  return std::sqrt(num) / std::sqrt(den);
}

double relative_l2_error(const ParticleEnsemble& ens, const VelocityGrid& grid,
                         const ExactFn& exact, double t, double epsilon) {
  const DensityField f = blob_density_on_grid(ens, grid, epsilon);
  return relative_l2_error(f.values, grid, exact, t);
}

double max_speed(const ParticleEnsemble& ens) {
  double m = 0.0;
  for (const Vec& v : ens.velocities) {
    double r2 = 0.0;
    for (int a = 0; a < ens.d; ++a) r2 += v[a] * v[a];
    m = std::max(m, r2);
  }
  return std::sqrt(m);
}

}  // namespace landau
