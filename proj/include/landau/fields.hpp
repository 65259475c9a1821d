#pragma once

// Blob densities, discrete regularized entropies and the first-variation
// gradients F_i for both regularization types.
//
// Every per-target sum runs over sources in ascending index order, so the
// truncated (cell list or pair list) and brute-force sigma-filtered paths
// give bitwise-equal results, and OpenMP parallelism over targets never
// changes a result. The *_dense variants on a tensor grid factor the
// Gaussian per axis; they agree with the direct sums to rounding.

#include <span>
#include <vector>

#include "landau/core.hpp"
#include "landau/grid.hpp"
#include "landau/neighbor.hpp"

namespace landau {

enum class DensityTarget { GridCenters, Particles, Points };

struct DensityField {
  std::vector<double> values;
  DensityTarget target = DensityTarget::Points;
};

struct VariationField {
  std::vector<Vec> values;
};

/// f(t) = sum_{k : |t - v_k| <= sigma} w_k psi_eps(t - v_k). sigma may be
/// infinite. With cl given, candidates come from the cell list (which must
/// index the ensemble velocities with radius sigma).
DensityField blob_density(const ParticleEnsemble& ens, std::span<const Vec> targets,
                          double epsilon, double sigma, const CellList* cl = nullptr,
                          DensityTarget kind = DensityTarget::Points);

/// Same sum restricted to a precomputed target -> particle pair list.
DensityField blob_density(const ParticleEnsemble& ens, std::span<const Vec> targets,
                          double epsilon, const PairList& pairs,
                          DensityTarget kind = DensityTarget::Points);

/// Untruncated blob density on every grid center, separable evaluation.
DensityField blob_density_on_grid(const ParticleEnsemble& ens, const VelocityGrid& grid,
                                  double epsilon);

/// log f per entry, with entries at or below the floor mapped to 0 so they
/// drop out of the type-I gradient sum.
std::vector<double> log_density(const DensityField& f, double floor);

/// F_i = sum_{l : |v_i - v_l^c| <= sigma} h^d grad psi_eps(v_i - v_l^c) log f_l.
/// cl_grid, when given, indexes the grid centers with radius sigma.
VariationField variation_gradient_type1(const ParticleEnsemble& ens, const VelocityGrid& grid,
                                        std::span<const double> log_f, double epsilon,
                                        double sigma, const CellList* cl_grid = nullptr);

/// Type-I gradient over a particle -> grid-center pair list.
VariationField variation_gradient_type1(const ParticleEnsemble& ens, const VelocityGrid& grid,
                                        std::span<const double> log_f, double epsilon,
                                        const PairList& particle_to_grid);

/// Untruncated type-I gradient, separable evaluation.
VariationField variation_gradient_type1_dense(const ParticleEnsemble& ens,
                                              const VelocityGrid& grid,
                                              std::span<const double> log_f, double epsilon);

/// F_i = sum_{k : |v_i - v_k| <= sigma} w_k grad psi_eps(v_i - v_k) (1/f_i + 1/f_k).
VariationField variation_gradient_type2(const ParticleEnsemble& ens, const DensityField& f,
                                        double epsilon, double sigma,
                                        const CellList* cl = nullptr);

/// Type-II gradient over a particle -> particle pair list.
VariationField variation_gradient_type2(const ParticleEnsemble& ens, const DensityField& f,
                                        double epsilon, const PairList& pairs);

/// sum_l h^d f_l log f_l with 0 log 0 := 0 (and entries at or below floor dropped).
double entropy_type1(const VelocityGrid& grid, const DensityField& f, double floor = 0.0);

/// sum_i w_i log f_i over particles with positive weight.
double entropy_type2(const ParticleEnsemble& ens, const DensityField& f);

}  // namespace landau
