#include "landau/reference.hpp"

#include <cmath>

#include "landau/kernels.hpp"

namespace landau::reference {

namespace {

Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

double norm(const Vec& a, int d) {
  double r2 = 0.0;
  for (int k = 0; k < d; ++k) r2 += a[k] * a[k];
  return std::sqrt(r2);
}

Vec matvec(const KernelMatrix& m, const Vec& x, int d) {
  Vec y{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) y[a] += m(a, b) * x[b];
  return y;
}

}  // namespace

std::vector<double> blob_density(const ParticleEnsemble& ens, std::span<const Vec> targets,
                                 double epsilon, double sigma) {
  std::vector<double> f(targets.size(), 0.0);
  for (std::size_t t = 0; t < targets.size(); ++t)
    for (std::size_t k = 0; k < ens.size(); ++k) {
      const Vec z = sub(targets[t], ens.velocities[k]);
      if (norm(z, ens.d) <= sigma) f[t] += ens.weights[k] * mollifier(z, epsilon, ens.d);
    }
  return f;
}

std::vector<Vec> variation_type1(const ParticleEnsemble& ens, const VelocityGrid& grid,
                                 std::span<const double> f_grid, double epsilon, double sigma,
                                 double floor) {
  const double hd = std::pow(grid.h, grid.d);
  std::vector<Vec> F(ens.size(), Vec{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < ens.size(); ++i)
    for (std::size_t l = 0; l < grid.size(); ++l) {
      if (!(f_grid[l] > floor)) continue;
      const Vec z = sub(ens.velocities[i], grid.centers[l]);
      if (norm(z, ens.d) > sigma) continue;
      const Vec g = mollifier_gradient(z, epsilon, ens.d);
      const double lf = std::log(f_grid[l]);
      for (int a = 0; a < ens.d; ++a) F[i][a] += hd * g[a] * lf;
    }
  return F;
}

std::vector<Vec> variation_type2(const ParticleEnsemble& ens, std::span<const double> f,
                                 double epsilon, double sigma) {
  std::vector<Vec> F(ens.size(), Vec{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < ens.size(); ++i)
    for (std::size_t k = 0; k < ens.size(); ++k) {
      if (ens.weights[k] == 0.0) continue;
      const Vec z = sub(ens.velocities[i], ens.velocities[k]);
      if (norm(z, ens.d) > sigma) continue;
      const Vec g = mollifier_gradient(z, epsilon, ens.d);
      const double inv_fi = f[i] > 0.0 ? 1.0 / f[i] : 0.0;
      const double c = ens.weights[k] * (inv_fi + 1.0 / f[k]);
      for (int a = 0; a < ens.d; ++a) F[i][a] += c * g[a];
    }
  return F;
}

double entropy_type1(const ParticleEnsemble& ens, const VelocityGrid& grid, double epsilon) {
  const double hd = std::pow(grid.h, grid.d);
  double e = 0.0;
  for (const Vec& c : grid.centers) {
    double outer = 0.0, inner = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i)
      outer += ens.weights[i] * mollifier(sub(c, ens.velocities[i]), epsilon, ens.d);
    for (std::size_t k = 0; k < ens.size(); ++k)
      inner += ens.weights[k] * mollifier(sub(c, ens.velocities[k]), epsilon, ens.d);
    if (outer > 0.0) e += hd * outer * std::log(inner);
  }
  return e;
}

double entropy_type2(const ParticleEnsemble& ens, double epsilon) {
  double e = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (ens.weights[i] == 0.0) continue;
    double inner = 0.0;
    for (std::size_t k = 0; k < ens.size(); ++k)
      inner += ens.weights[k] * mollifier(sub(ens.velocities[i], ens.velocities[k]), epsilon, ens.d);
    e += ens.weights[i] * std::log(inner);
  }
  return e;
}

ParticleEnsemble full_step(const ParticleEnsemble& ens, std::span<const Vec> F,
                           const KernelSpec& kernel, double dt) {
  ParticleEnsemble out = ens;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    Vec rhs{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < ens.size(); ++j) {
      if (j == i) continue;
      const KernelMatrix A = collision_kernel(sub(ens.velocities[i], ens.velocities[j]), kernel);
      const Vec Av = matvec(A, sub(F[i], F[j]), ens.d);
      for (int a = 0; a < ens.d; ++a) rhs[a] -= ens.weights[j] * Av[a];
    }
    for (int a = 0; a < ens.d; ++a) out.velocities[i][a] = ens.velocities[i][a] + dt * rhs[a];
  }
  return out;
}

ParticleEnsemble rbm_step(const ParticleEnsemble& ens, std::span<const Vec> F,
                          const BatchPlan& plan, const KernelSpec& kernel, double dt) {
  ParticleEnsemble out = ens;
  const double n = static_cast<double>(ens.size());
  for (std::size_t b = 0; b < plan.batch_count(); ++b) {
    const auto members = plan.batch(b);
    if (members.size() < 2) continue;
    const double factor = (n - 1.0) / (static_cast<double>(members.size()) - 1.0);
    for (Index i : members) {
      Vec rhs{0.0, 0.0, 0.0};
      for (Index j : members) {
        if (j == i) continue;
        const KernelMatrix A = collision_kernel(sub(ens.velocities[i], ens.velocities[j]), kernel);
        const Vec Av = matvec(A, sub(F[i], F[j]), ens.d);
        for (int a = 0; a < ens.d; ++a) rhs[a] -= factor * ens.weights[j] * Av[a];
      }
      for (int a = 0; a < ens.d; ++a) out.velocities[i][a] = ens.velocities[i][a] + dt * rhs[a];
    }
  }
  return out;
}

}  // namespace landau::reference
