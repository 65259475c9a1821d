#pragma once

// Exact solutions, initial data and equilibria for the benchmark problems.

#include <functional>
#include <optional>

#include "landau/core.hpp"

namespace landau {

/// 2D BKW solution for Maxwell molecules, K = 1 - exp(-t/8)/2.
double bkw2d(double t, const Vec& v);

/// 3D BKW solution, K = 1 - exp(-t/6). Throws for t <= 0 where K <= 0.
double bkw3d(double t, const Vec& v);

/// rho (2 pi T)^{-d/2} exp(-|v - u|^2 / (2T)).
double maxwellian(double rho, const Vec& u, double T, const Vec& v, int d);

struct BiMaxwellianParams {
  Vec u1{-2.0, 1.0, 0.0};
  Vec u2{0.0, -1.0, 0.0};
};

/// Two unit-temperature Gaussians of mass 1/2 centred at u1 and u2.
double bimaxwellian_init(const Vec& v, const BiMaxwellianParams& p = {});

struct RosenbluthParams {
  double mu = 0.3;
  double S = 10.0;
};

/// S^{-2} exp(-S (|v| - mu)^2 / mu^2).
double rosenbluth_init(const Vec& v, const RosenbluthParams& p = {});

struct Equilibrium {
  double rho = 0.0;
  Vec u{0.0, 0.0, 0.0};
  double T = 0.0;
};

/// Closed-form Maxwellian limit of the Rosenbluth problem.
Equilibrium rosenbluth_equilibrium(const RosenbluthParams& p = {});

using DensityFn = std::function<double(const Vec&)>;
using ExactFn = std::function<double(double, const Vec&)>;

/// Scenario-level facts: kernel, default boxes, initial density, exact solution.
struct ScenarioInfo {
  Scenario scenario;
  int d;
  KernelSpec kernel;
  double default_t0;
  double default_support_L;
  double default_L;
  double analytic_mass;
  std::optional<ExactFn> exact;
};

ScenarioInfo scenario_info(Scenario s);

/// Initial density f(t0, .) for the scenario.
DensityFn initial_density(Scenario s, double t0);

/// Particles at the n_o_init^d cell centers of [-support_L, support_L]^d with
/// weights f(t0, v_k) h_init^d, optionally rescaled to the analytic mass.
ParticleEnsemble init_particles(Scenario s, double support_L, int n_o_init, bool normalize,
                                double t0);
ParticleEnsemble init_particles(const InitSpec& spec, double t0);

/// Same construction for an arbitrary density (scenario-free).
ParticleEnsemble init_particles_from(const DensityFn& f, int d, double support_L, int n_o_init,
                                     std::optional<double> normalize_to = std::nullopt);

}  // namespace landau
