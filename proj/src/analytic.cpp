#include "landau/analytic.hpp"

#include <cmath>
#include <numbers>

#include "landau/grid.hpp"

namespace landau {

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(const Vec& v, int d) {
  double r2 = 0.0;
  for (int a = 0; a < d; ++a) r2 += v[a] * v[a];
  return r2;
}

}  // namespace

double bkw2d(double t, const Vec& v) {
  const double K = 1.0 - 0.5 * std::exp(-t / 8.0);
  const double r2 = norm2(v, 2);
  return std::exp(-r2 / (2.0 * K)) / (2.0 * kPi * K) *
         ((2.0 * K - 1.0) / K + (1.0 - K) / (2.0 * K * K) * r2);
}

double bkw3d(double t, const Vec& v) {
  const double K = 1.0 - std::exp(-t / 6.0);
  if (!(K > 0.0)) throw ConfigError("bkw3d is singular for t <= 0");
  const double r2 = norm2(v, 3);
  return std::pow(2.0 * kPi * K, -1.5) * std::exp(-r2 / (2.0 * K)) *
         ((5.0 * K - 3.0) / (2.0 * K) + (1.0 - K) / (2.0 * K * K) * r2);
}

double maxwellian(double rho, const Vec& u, double T, const Vec& v, int d) {
  double r2 = 0.0;
  for (int a = 0; a < d; ++a) r2 += (v[a] - u[a]) * (v[a] - u[a]);
  return rho * std::pow(2.0 * kPi * T, -0.5 * d) * std::exp(-r2 / (2.0 * T));
}

double bimaxwellian_init(const Vec& v, const BiMaxwellianParams& p) {
  double r1 = 0.0, r2 = 0.0;
  for (int a = 0; a < 2; ++a) {
    r1 += (v[a] - p.u1[a]) * (v[a] - p.u1[a]);
    r2 += (v[a] - p.u2[a]) * (v[a] - p.u2[a]);
  }
  return (std::exp(-r1 / 2.0) + std::exp(-r2 / 2.0)) / (4.0 * kPi);
}

double rosenbluth_init(const Vec& v, const RosenbluthParams& p) {
  const double r = std::sqrt(norm2(v, 3));
  const double s = (r - p.mu) / p.mu;
  return std::exp(-p.S * s * s) / (p.S * p.S);
}

Equilibrium rosenbluth_equilibrium(const RosenbluthParams& p) {
  const double S = p.S, mu = p.mu;
  const double g = std::sqrt(kPi / S) * std::erfc(-std::sqrt(S));
  const double e = std::exp(-S);
  Equilibrium eq;
  eq.rho = 2.0 * kPi * std::pow(mu, 3) / (S * S) * ((1.0 / (2.0 * S) + 1.0) * g + e / S);
  eq.T = 1.0 / (3.0 * eq.rho) * 2.0 * kPi * std::pow(mu, 5) / (S * S) *
         ((1.0 + 3.0 / S + 3.0 / (4.0 * S * S)) * g + (1.0 / S + 5.0 / (2.0 * S * S)) * e);
  return eq;
}

ScenarioInfo scenario_info(Scenario s) {
  switch (s) {
    case Scenario::BKW2D:
      return {s, 2, KernelSpec{2, 0.0, 1.0 / 16.0, 0.0}, 0.0, 4.0, 8.0, 1.0,
              ExactFn([](double t, const Vec& v) { return bkw2d(t, v); })};
    case Scenario::BKW3D:
      return {s, 3, KernelSpec{3, 0.0, 1.0 / 24.0, 0.0}, 5.5, 4.0, 8.0, 1.0,
              ExactFn([](double t, const Vec& v) { return bkw3d(t, v); })};
    case Scenario::BiMaxwellian2D:
      return {s, 2, KernelSpec{2, -3.0, 1.0 / 16.0, 0.0}, 0.0, 10.0, 10.0, 1.0, std::nullopt};
    case Scenario::Rosenbluth3D:
      return {s, 3, KernelSpec{3, -3.0, 1.0 / (4.0 * kPi), 0.0}, 0.0, 1.0, 1.0,
              rosenbluth_equilibrium().rho, std::nullopt};
  }
  throw ConfigError("unknown scenario");
}

DensityFn initial_density(Scenario s, double t0) {
  switch (s) {
    case Scenario::BKW2D: return [t0](const Vec& v) { return bkw2d(t0, v); };
    case Scenario::BKW3D:
      if (!(t0 > 0.0)) throw ConfigError("bkw3d initial data needs t0 > 0");
      return [t0](const Vec& v) { return bkw3d(t0, v); };
    case Scenario::BiMaxwellian2D: return [](const Vec& v) { return bimaxwellian_init(v); };
    case Scenario::Rosenbluth3D: return [](const Vec& v) { return rosenbluth_init(v); };
  }
  throw ConfigError("unknown scenario");
}

ParticleEnsemble init_particles_from(const DensityFn& f, int d, double support_L, int n_o_init,
                                     std::optional<double> normalize_to) {
  if (n_o_init < 1) throw ConfigError("n_o_init must be at least 1");
  if (!(support_L > 0.0)) throw ConfigError("support_L must be positive");
  ParticleEnsemble ens;
  ens.d = d;
  if (n_o_init == 1) {
    ens.velocities.push_back(Vec{0.0, 0.0, 0.0});
    ens.weights.push_back(f(ens.velocities[0]) * std::pow(2.0 * support_L, d));
  } else {
    const VelocityGrid g = build_grid(support_L, n_o_init, d);
    const double vol = g.cell_volume();
    ens.velocities = g.centers;
    ens.weights.reserve(g.size());
    for (const Vec& v : g.centers) ens.weights.push_back(f(v) * vol);
  }
  if (normalize_to) {
    const double m = ens.total_mass();
    if (!(m > 0.0)) throw ConfigError("cannot normalize an ensemble with zero mass");
    const double scale = *normalize_to / m;
    for (double& w : ens.weights) w *= scale;
  }
  return ens;
}

ParticleEnsemble init_particles(Scenario s, double support_L, int n_o_init, bool normalize,
                                double t0) {
  const ScenarioInfo info = scenario_info(s);
  return init_particles_from(initial_density(s, t0), info.d, support_L, n_o_init,
                             normalize ? std::optional<double>(info.analytic_mass) : std::nullopt);
}

ParticleEnsemble init_particles(const InitSpec& spec, double t0) {
  return init_particles(spec.scenario, spec.support_L, spec.n_o_init, spec.normalize, t0);
}

}  // namespace landau
