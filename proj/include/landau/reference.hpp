#pragma once

// Serial, literal transcriptions of the particle-method formulas. No cell
// lists, no separable factorization, no structure-of-arrays, no OpenMP:
// every sum is the textbook loop over pointwise kernel calls. Kept as the
// independent oracle for the optimized kernels and for benchmarking.

#include <span>
#include <vector>

#include "landau/batching.hpp"
#include "landau/core.hpp"
#include "landau/grid.hpp"

namespace landau::reference {

/// f(t) = sum_k w_k psi_eps(t - v_k) over particles with |t - v_k| <= sigma.
std::vector<double> blob_density(const ParticleEnsemble& ens, std::span<const Vec> targets,
                                 double epsilon, double sigma = kInf);

/// sum_l h^d grad psi_eps(v_i - v_l^c) log f_l over cells within sigma and
/// with f_l above the floor.
std::vector<Vec> variation_type1(const ParticleEnsemble& ens, const VelocityGrid& grid,
                                 std::span<const double> f_grid, double epsilon,
                                 double sigma = kInf, double floor = 0.0);

/// sum_k w_k grad psi_eps(v_i - v_k) (1/f_i + 1/f_k) over particles within sigma.
std::vector<Vec> variation_type2(const ParticleEnsemble& ens, std::span<const double> f,
                                 double epsilon, double sigma = kInf);

/// sum_l h^d (sum_i w_i psi(v_l - v_i)) log(sum_k w_k psi(v_l - v_k)).
double entropy_type1(const ParticleEnsemble& ens, const VelocityGrid& grid, double epsilon);

/// sum_i w_i log(sum_k w_k psi(v_i - v_k)).
double entropy_type2(const ParticleEnsemble& ens, double epsilon);

/// Explicit Euler update with the full d x d kernel matrix per pair.
ParticleEnsemble full_step(const ParticleEnsemble& ens, std::span<const Vec> F,
                           const KernelSpec& kernel, double dt);

/// Random batch update: i interacts with j != i of its batch, scaled by (N-1)/(|C|-1).
ParticleEnsemble rbm_step(const ParticleEnsemble& ens, std::span<const Vec> F,
                          const BatchPlan& plan, const KernelSpec& kernel, double dt);

}  // namespace landau::reference
