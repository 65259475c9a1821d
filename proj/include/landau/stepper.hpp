#pragma once

// Forward-Euler particle updates and the simulation driver.
//
// A step has three phases: (1) blob density at the method's targets (grid
// centers for type I, particles for type II), (2) the first-variation
// gradient F, (3) the velocity update, over all pairs (deterministic
// methods) or within the batches of a fresh random plan (random batch
// methods). Deterministic methods use untruncated sums; random batch
// methods truncate phases 1-2 at sigma through a cell list.

#include <functional>
#include <optional>
#include <vector>

#include "landau/batching.hpp"
#include "landau/core.hpp"
#include "landau/diagnostics.hpp"
#include "landau/fields.hpp"
#include "landau/grid.hpp"

namespace landau {

struct StepContext {
  KernelSpec kernel;
  double dt = 0.01;
  Method method = Method::DeterministicI;
};

/// v_i <- v_i - dt sum_{j != i} w_j A(v_i - v_j)(F_i - F_j), all pairs
/// evaluated at the incoming state.
ParticleEnsemble full_step(const ParticleEnsemble& ens, const VariationField& F,
                           const StepContext& ctx);

/// Batch-restricted update scaled by (N-1)/(|C|-1); singleton batches stay put.
ParticleEnsemble rbm_step(const ParticleEnsemble& ens, const VariationField& F,
                          const BatchPlan& plan, const StepContext& ctx);

/// Stateful driver for one configuration. Not thread-safe; the kernels it
/// calls are internally parallel.
class Simulation {
 public:
  explicit Simulation(SimConfig config);
  Simulation(SimConfig config, ParticleEnsemble initial);

  const SimConfig& config() const { return config_; }
  const ParticleEnsemble& ensemble() const { return ens_; }
  const VelocityGrid& grid() const { return grid_; }
  double time() const { return config_.t0 + static_cast<double>(step_) * config_.dt; }
  std::int64_t step_index() const { return step_; }

  /// One step. Returns the wall seconds spent in phases 1-3.
  double advance();

  /// Discrete entropy of the active regularization type at the current state.
  double entropy();

  /// Phase-1 density of the current state (grid centers or particles).
  const DensityField& density();

  /// Untruncated blob density of the current state on the grid centers.
  DensityField grid_blob();

  /// Blob density of the current state at arbitrary points (untruncated).
  std::vector<double> blob_at(std::span<const Vec> points) const;

  /// Diagnostics for the current state.
  DiagnosticsRecord record(bool with_error);

 private:
  void ensure_density();

  SimConfig config_;
  ParticleEnsemble ens_;
  VelocityGrid grid_;
  std::optional<ExactFn> exact_;
  BatchRng rng_;
  std::int64_t step_ = 0;
  std::optional<DensityField> density_;
  std::optional<PairList> pairs_;  // phase-1 pairs, kept for phase 2
  double pending_seconds_ = 0.0;
};

struct StepObserver {
  /// Called at every diagnostics record.
  std::function<void(const DiagnosticsRecord&)> on_record;
  /// Called for every state n = 0..steps before the record is taken.
  std::function<void(Simulation&)> on_state;
};

struct RunResult {
  ParticleEnsemble final_state;
  std::vector<DiagnosticsRecord> records;
};

/// Runs floor((t_end - t0)/dt) steps. Errors carry the failing step index.
RunResult run(const SimConfig& config, const StepObserver& observer = {});

}  // namespace landau
