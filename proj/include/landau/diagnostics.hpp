#pragma once

#include <functional>
#include <optional>
#include <span>

#include "landau/analytic.hpp"
#include "landau/core.hpp"
#include "landau/grid.hpp"

namespace landau {

struct Moments {
  double mass = 0.0;
  Vec momentum{0.0, 0.0, 0.0};
  double energy = 0.0;  ///< sum w_i |v_i|^2
};

struct DiagnosticsRecord {
  std::int64_t step = 0;
  double t = 0.0;
  int d = 2;
  double mass = 0.0;
  Vec momentum{0.0, 0.0, 0.0};
  double energy = 0.0;
  double entropy = 0.0;
  std::optional<double> rel_l2_error;
  std::optional<double> wall_time_step;  ///< seconds spent in the step arriving at time t
};

/// Mass, momentum and energy summed in ascending particle order.
Moments moments(const ParticleEnsemble& ens);

/// Grid l2 norm of (exact - blob) over the grid l2 norm of exact; the blob
/// is the untruncated mollified empirical measure.
double relative_l2_error(const ParticleEnsemble& ens, const VelocityGrid& grid,
                         const ExactFn& exact, double t, double epsilon);

/// Same ratio for precomputed blob values on the grid centers.
double relative_l2_error(std::span<const double> blob, const VelocityGrid& grid,
                         const ExactFn& exact, double t);

/// Largest |v_i| over the ensemble.
double max_speed(const ParticleEnsemble& ens);

}  // namespace landau
