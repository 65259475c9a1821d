#include "landau/stepper.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "landau/analytic.hpp"
#include "landau/kernels.hpp"
#include "landau/neighbor.hpp"

namespace landau {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// |z|^gamma variants for the pair loop.
struct PowMaxwell {
  double operator()(double) const { return 1.0; }
};

struct PowCoulomb {
  double floor2;
  double operator()(double r2) const {
    const double r = r2 < floor2 ? floor2 : r2;
    return 1.0 / (r * std::sqrt(r));
  }
};

struct PowAny {
  KernelSpec spec;
  double operator()(double r2) const { return radial_power(r2, spec); }
};

// Particles gathered in plan order, structure-of-arrays.
template <int D>
struct Gathered {
  std::array<std::vector<double>, D> v, f;
  std::vector<double> w;

  Gathered(const ParticleEnsemble& ens, const VariationField& F, std::span<const Index> order) {
    const std::size_t n = order.size();
    for (int a = 0; a < D; ++a) {
      v[a].resize(n);
      f[a].resize(n);
    }
    w.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      const Index i = order[s];
      for (int a = 0; a < D; ++a) {
        v[a][s] = ens.velocities[i][a];
        f[a][s] = F.values[i][a];
      }
      w[s] = ens.weights[i];
    }
  }
};

// Updates every particle against the members of its own contiguous group
// [offsets[b], offsets[b+1]) of the gathered arrays.
template <int D, typename Pow>
void group_update(const ParticleEnsemble& ens, const VariationField& F,
                  std::span<const Index> order, std::span<const std::size_t> offsets,
                  const StepContext& ctx, bool rescale, Pow pw, ParticleEnsemble& out) {
  const Gathered<D> g(ens, F, order);
  const auto n = static_cast<std::ptrdiff_t>(order.size());
  const double big_n = static_cast<double>(order.size());
  bool bad = false;

#pragma omp parallel for schedule(static) reduction(|| : bad)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto it = std::upper_bound(offsets.begin(), offsets.end(), static_cast<std::size_t>(s));
    const std::size_t lo = *(it - 1), hi = *it;
    const std::size_t size = hi - lo;
    const Index i = order[s];
    if (size < 2) {
      out.velocities[i] = ens.velocities[i];
      continue;
    }
    const double factor = rescale ? (big_n - 1.0) / (static_cast<double>(size) - 1.0) : 1.0;

    const double* __restrict v0 = g.v[0].data();
    const double* __restrict v1 = g.v[1].data();
    const double* __restrict v2 = D == 3 ? g.v[D - 1].data() : v1;
    const double* __restrict f0 = g.f[0].data();
    const double* __restrict f1 = g.f[1].data();
    const double* __restrict f2 = D == 3 ? g.f[D - 1].data() : f1;
    const double* __restrict wj = g.w.data();
    const double x0 = v0[s], x1 = v1[s], x2 = D == 3 ? v2[s] : 0.0;
    const double e0 = f0[s], e1 = f1[s], e2 = D == 3 ? f2[s] : 0.0;
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0;
#pragma omp simd reduction(+ : acc0, acc1, acc2)
    for (std::size_t j = lo; j < hi; ++j) {
      const double z0 = x0 - v0[j], z1 = x1 - v1[j];
      const double b0 = e0 - f0[j], b1 = e1 - f1[j];
      double r2 = z0 * z0 + z1 * z1;
      double zb = z0 * b0 + z1 * b1;
      double z2 = 0.0, b2 = 0.0;
      if constexpr (D == 3) {
        z2 = x2 - v2[j];
        b2 = e2 - f2[j];
        r2 += z2 * z2;
        zb += z2 * b2;
      }
      // A(0) := 0, which also drops j == i
      const double sw = r2 > 0.0 ? wj[j] * pw(r2) : 0.0;
      acc0 += sw * (r2 * b0 - z0 * zb);
      acc1 += sw * (r2 * b1 - z1 * zb);
      if constexpr (D == 3) acc2 += sw * (r2 * b2 - z2 * zb);
    }
    const double c = -ctx.dt * factor * ctx.kernel.lambda;
    Vec nv = ens.velocities[i];
    nv[0] += c * acc0;
    nv[1] += c * acc1;
    if constexpr (D == 3) nv[2] += c * acc2;
    for (int a = 0; a < D; ++a)
      if (!std::isfinite(nv[a])) bad = true;
    out.velocities[i] = nv;
  }
  if (bad)
    throw NumericalError("non-finite velocity update (coincident particles with a singular kernel?)");
}

template <int D>
void dispatch_update(const ParticleEnsemble& ens, const VariationField& F,
                     std::span<const Index> order, std::span<const std::size_t> offsets,
                     const StepContext& ctx, bool rescale, ParticleEnsemble& out) {
  const KernelSpec& k = ctx.kernel;
  if (k.gamma == 0.0) {
    group_update<D>(ens, F, order, offsets, ctx, rescale, PowMaxwell{}, out);
  } else if (k.gamma == -3.0) {
    group_update<D>(ens, F, order, offsets, ctx, rescale, PowCoulomb{k.delta_min * k.delta_min},
                    out);
  } else {
    group_update<D>(ens, F, order, offsets, ctx, rescale, PowAny{k}, out);
  }
}

void check_step_inputs(const ParticleEnsemble& ens, const VariationField& F,
                       const StepContext& ctx) {
  if (F.values.size() != ens.size())
    throw ConfigError("variation field must hold one vector per particle");
  if (ctx.kernel.d != ens.d) throw ConfigError("kernel and ensemble dimensions differ");
  if (!(ctx.dt > 0.0)) throw ConfigError("dt must be positive");
  for (const Vec& f : F.values)
    for (int a = 0; a < ens.d; ++a)
      if (!std::isfinite(f[a])) throw NumericalError("non-finite variation gradient");
}

}  // namespace

ParticleEnsemble full_step(const ParticleEnsemble& ens, const VariationField& F,
                           const StepContext& ctx) {
  check_step_inputs(ens, F, ctx);
  std::vector<Index> order(ens.size());
  std::iota(order.begin(), order.end(), Index{0});
  const std::array<std::size_t, 2> offsets{0, ens.size()};
  ParticleEnsemble out = ens;
  if (ens.d == 2) dispatch_update<2>(ens, F, order, offsets, ctx, false, out);
  else dispatch_update<3>(ens, F, order, offsets, ctx, false, out);
  return out;
}

ParticleEnsemble rbm_step(const ParticleEnsemble& ens, const VariationField& F,
                          const BatchPlan& plan, const StepContext& ctx) {
  check_step_inputs(ens, F, ctx);
  if (plan.particle_count() != ens.size())
    throw ConfigError("batch plan does not cover the ensemble");
  ParticleEnsemble out = ens;
  if (ens.d == 2) dispatch_update<2>(ens, F, plan.order, plan.offsets, ctx, true, out);
  else dispatch_update<3>(ens, F, plan.order, plan.offsets, ctx, true, out);
  return out;
}

// ---------------------------------------------------------------------------

Simulation::Simulation(SimConfig config)
    : Simulation(config, init_particles(config.init, config.t0)) {}

Simulation::Simulation(SimConfig config, ParticleEnsemble initial)
    : config_(std::move(config)), ens_(std::move(initial)), rng_(config_.seed) {
  const ValidationReport report = validate(config_);
  if (!report.empty()) throw ConfigError("invalid configuration: " + report.front());
  ens_.check();
  if (ens_.d != config_.d()) throw ConfigError("initial ensemble dimension differs from config");
  if (is_random_batch(config_.method) &&
      config_.batch_count() > static_cast<std::int64_t>(ens_.size()))
    throw ConfigError("batch count q exceeds particle count N");
  grid_ = build_grid(config_.reg.L, config_.reg.n_o, config_.d());
  exact_ = scenario_info(config_.init.scenario).exact;
}

void Simulation::ensure_density() {
  if (density_) return;
  const auto t0 = Clock::now();
  const RegularizationConfig& reg = config_.reg;
  const double eps = reg.epsilon;
  const bool rbm = is_random_batch(config_.method);
  pairs_.reset();
  if (reg.reg_type == RegType::TypeI) {
    if (rbm) {
      pairs_ = lattice_pairs(grid_, ens_.velocities, reg.sigma);
      const PairList grid_to_particle = transpose(*pairs_, grid_.size());
      density_ = blob_density(ens_, grid_.centers, eps, grid_to_particle, DensityTarget::GridCenters);
    } else {
      density_ = blob_density_on_grid(ens_, grid_, eps);
    }
  } else {
    if (rbm) {
      const CellList cl = build_cell_list(ens_.velocities, ens_.d, reg.sigma);
      pairs_ = build_pair_list(ens_.velocities, cl, reg.sigma);
      density_ = blob_density(ens_, ens_.velocities, eps, *pairs_, DensityTarget::Particles);
    } else {
      density_ = blob_density(ens_, ens_.velocities, eps, kInf, nullptr, DensityTarget::Particles);
    }
  }
  pending_seconds_ += seconds_since(t0);
}

const DensityField& Simulation::density() {
  ensure_density();
  return *density_;
}

double Simulation::advance() {
  ensure_density();
  const auto t0 = Clock::now();
  const RegularizationConfig& reg = config_.reg;
  VariationField F;
  if (reg.reg_type == RegType::TypeI) {
    const std::vector<double> log_f = log_density(*density_, reg.density_floor);
    F = pairs_ ? variation_gradient_type1(ens_, grid_, log_f, reg.epsilon, *pairs_)
               : variation_gradient_type1_dense(ens_, grid_, log_f, reg.epsilon);
  } else {
    F = pairs_ ? variation_gradient_type2(ens_, *density_, reg.epsilon, *pairs_)
               : variation_gradient_type2(ens_, *density_, reg.epsilon, kInf);
  }

  const StepContext ctx{config_.kernel, config_.dt, config_.method};
  if (is_random_batch(config_.method)) {
    const BatchPlan plan =
        make_batches(ens_.size(), static_cast<std::size_t>(config_.batch_count()), rng_);
    ens_ = rbm_step(ens_, F, plan, ctx);
  } else {
    ens_ = full_step(ens_, F, ctx);
  }
  density_.reset();
  pairs_.reset();
  ++step_;
  const double total = pending_seconds_ + seconds_since(t0);
  pending_seconds_ = 0.0;
  return total;
}

double Simulation::entropy() {
  ensure_density();
  if (config_.reg.reg_type == RegType::TypeI)
    return entropy_type1(grid_, *density_, config_.reg.density_floor);
  return entropy_type2(ens_, *density_);
}

DensityField Simulation::grid_blob() {
  if (config_.reg.reg_type == RegType::TypeI && !is_random_batch(config_.method)) {
    ensure_density();
    return *density_;
  }
  return blob_density_on_grid(ens_, grid_, config_.reg.epsilon);
}

std::vector<double> Simulation::blob_at(std::span<const Vec> points) const {
  return blob_density(ens_, points, config_.reg.epsilon, kInf).values;
}

DiagnosticsRecord Simulation::record(bool with_error) {
  DiagnosticsRecord r;
  r.step = step_;
  r.t = time();
  r.d = ens_.d;
  const Moments m = moments(ens_);
  r.mass = m.mass;
  r.momentum = m.momentum;
  r.energy = m.energy;
  r.entropy = entropy();
  if (!std::isfinite(r.energy) || !std::isfinite(r.entropy))
    throw NumericalError("non-finite energy or entropy");
  if (with_error && exact_) {
    // Exclude the measurement pass from the next step's timing.
    const double keep = pending_seconds_;
    const DensityField blob = grid_blob();
    pending_seconds_ = keep;
    r.rel_l2_error = relative_l2_error(blob.values, grid_, *exact_, r.t);
  }
  return r;
}

RunResult run(const SimConfig& config, const StepObserver& observer) {
  Simulation sim(config);
  RunResult result;
  const std::int64_t steps = config.step_count();
  const int every = std::max(config.output.diagnostics_every, 1);
  const int err_every = config.output.error_every;

  std::optional<double> last_secs;
  for (std::int64_t n = 0;; ++n) {
    try {
      if (observer.on_state) observer.on_state(sim);
      const bool last = (n == steps);
      if (n % every == 0 || last) {
        const bool with_err = last || (err_every > 0 && n % err_every == 0);
        result.records.push_back(sim.record(with_err));
        result.records.back().wall_time_step = last_secs;
        if (observer.on_record) observer.on_record(result.records.back());
      }
      if (last) break;
      last_secs = sim.advance();
    } catch (const NumericalError& e) {
      throw NumericalError("step " + std::to_string(n) + ": " + e.what());
    }
  }
  result.final_state = sim.ensemble();
  return result;
}

}  // namespace landau
