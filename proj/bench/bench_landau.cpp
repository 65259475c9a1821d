// Literal reference sums against the optimized kernels on 2D BKW ensembles.

#include <benchmark/benchmark.h>

#include "landau/analytic.hpp"
#include "landau/batching.hpp"
#include "landau/config.hpp"
#include "landau/fields.hpp"
#include "landau/grid.hpp"
#include "landau/reference.hpp"
#include "landau/stepper.hpp"

using namespace landau;

namespace {

struct Setup {
  ParticleEnsemble ens;
  VelocityGrid grid;
  double eps;
  double sigma;
};

Setup make_setup(int n_o) {
  Setup s;
  s.ens = init_particles(Scenario::BKW2D, 4.0, n_o, false, 0.0);
  s.grid = build_grid(8.0, n_o, 2);
  s.eps = default_epsilon(s.grid.h);
  s.sigma = default_sigma(s.eps);
  return s;
}

void BM_BlobGridReference(benchmark::State& st) {
  const Setup s = make_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::blob_density(s.ens, s.grid.centers, s.eps));
}

void BM_BlobGridSeparable(benchmark::State& st) {
  const Setup s = make_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(blob_density_on_grid(s.ens, s.grid, s.eps));
}

void BM_BlobGridLatticePairs(benchmark::State& st) {
  const Setup s = make_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    const PairList p = lattice_pairs(s.grid, s.ens.velocities, s.sigma);
    benchmark::DoNotOptimize(blob_density(s.ens, s.grid.centers, s.eps,
                                          transpose(p, s.grid.size()), DensityTarget::GridCenters));
  }
}

void BM_VariationType2Reference(benchmark::State& st) {
  const Setup s = make_setup(static_cast<int>(st.range(0)));
  const DensityField f = blob_density(s.ens, s.ens.velocities, s.eps, kInf);
  for (auto _ : st) benchmark::DoNotOptimize(reference::variation_type2(s.ens, f.values, s.eps));
}

void BM_VariationType2CellList(benchmark::State& st) {
  const Setup s = make_setup(static_cast<int>(st.range(0)));
  const DensityField f = blob_density(s.ens, s.ens.velocities, s.eps, kInf);
  for (auto _ : st) {
    const CellList cl = build_cell_list(s.ens.velocities, 2, s.sigma);
    benchmark::DoNotOptimize(variation_gradient_type2(s.ens, f, s.eps, s.sigma, &cl));
  }
}

void BM_FullStepReference(benchmark::State& st) {
  const Setup s = make_setup(static_cast<int>(st.range(0)));
  const std::vector<Vec> F(s.ens.size(), Vec{0.1, -0.2, 0.0});
  const KernelSpec k = scenario_info(Scenario::BKW2D).kernel;
  for (auto _ : st) benchmark::DoNotOptimize(reference::full_step(s.ens, F, k, 0.01));
}

void BM_FullStep(benchmark::State& st) {
  const Setup s = make_setup(static_cast<int>(st.range(0)));
  VariationField F;
  F.values.assign(s.ens.size(), Vec{0.1, -0.2, 0.0});
  const StepContext ctx{scenario_info(Scenario::BKW2D).kernel, 0.01, Method::DeterministicI};
  for (auto _ : st) benchmark::DoNotOptimize(full_step(s.ens, F, ctx));
}

void BM_RbmStep(benchmark::State& st) {
  const Setup s = make_setup(static_cast<int>(st.range(0)));
  VariationField F;
  F.values.assign(s.ens.size(), Vec{0.1, -0.2, 0.0});
  const StepContext ctx{scenario_info(Scenario::BKW2D).kernel, 0.01, Method::RandomBatchI};
  BatchRng rng(1);
  for (auto _ : st) {
    const BatchPlan plan = make_batches(s.ens.size(), 25, rng);
    benchmark::DoNotOptimize(rbm_step(s.ens, F, plan, ctx));
  }
}

void BM_SimulationStep(benchmark::State& st) {
  KeyValues kv;
  kv.set("scenario", "bkw2d");
  kv.set("method", st.range(1) == 0 ? "det1" : "rbm1");
  kv.set("n_o", std::to_string(st.range(0)));
  kv.set("seed", "1");
  Simulation sim(resolve_config(kv));
  for (auto _ : st) benchmark::DoNotOptimize(sim.advance());
}

}  // namespace

BENCHMARK(BM_BlobGridReference)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlobGridSeparable)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlobGridLatticePairs)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VariationType2Reference)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VariationType2CellList)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullStepReference)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullStep)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RbmStep)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulationStep)
    ->Args({40, 0})->Args({80, 0})->Args({40, 1})->Args({80, 1})->Args({160, 1})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
