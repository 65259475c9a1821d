#include "landau/core.hpp"

#include <cmath>
#include <sstream>

namespace landau {

double ParticleEnsemble::total_mass() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

void ParticleEnsemble::check() const {
  if (d != 2 && d != 3) throw ConfigError("ensemble dimension must be 2 or 3");
  if (velocities.empty()) throw ConfigError("ensemble must hold at least one particle");
  if (velocities.size() != weights.size())
    throw ConfigError("velocity and weight counts differ");
  for (std::size_t i = 0; i < size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      throw ConfigError("weight " + std::to_string(i) + " is negative or non-finite");
    for (int a = 0; a < d; ++a)
      if (!std::isfinite(velocities[i][a]))
        throw ConfigError("velocity " + std::to_string(i) + " is non-finite");
  }
  if (!(total_mass() > 0.0)) throw ConfigError("total mass must be positive");
}

RegType reg_type_of(Method m) {
  return (m == Method::DeterministicI || m == Method::RandomBatchI) ? RegType::TypeI
                                                                   : RegType::TypeII;
}

bool is_random_batch(Method m) {
  return m == Method::RandomBatchI || m == Method::RandomBatchII;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::DeterministicI: return "det1";
    case Method::DeterministicII: return "det2";
    case Method::RandomBatchI: return "rbm1";
    case Method::RandomBatchII: return "rbm2";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "det1") return Method::DeterministicI;
  if (s == "det2") return Method::DeterministicII;
  if (s == "rbm1") return Method::RandomBatchI;
  if (s == "rbm2") return Method::RandomBatchII;
  throw ConfigError("unknown method '" + s + "' (expected det1, det2, rbm1 or rbm2)");
}

double default_epsilon(double h) { return 0.64 * std::pow(h, 1.98); }

double default_sigma(double epsilon) { return 4.0 * std::sqrt(epsilon); }

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::BKW2D: return "bkw2d";
    case Scenario::BKW3D: return "bkw3d";
    case Scenario::BiMaxwellian2D: return "bimaxwellian2d";
    case Scenario::Rosenbluth3D: return "rosenbluth3d";
  }
  return "?";
}

Scenario parse_scenario(const std::string& s) {
  if (s == "bkw2d") return Scenario::BKW2D;
  if (s == "bkw3d") return Scenario::BKW3D;
  if (s == "bimaxwellian2d") return Scenario::BiMaxwellian2D;
  if (s == "rosenbluth3d") return Scenario::Rosenbluth3D;
  throw ConfigError("unknown scenario '" + s +
                    "' (expected bkw2d, bkw3d, bimaxwellian2d or rosenbluth3d)");
}

int scenario_dimension(Scenario s) {
  return (s == Scenario::BKW2D || s == Scenario::BiMaxwellian2D) ? 2 : 3;
}

namespace {

// n^d, or -1 when it does not fit comfortably in a 32-bit particle index.
std::int64_t checked_power(std::int64_t n, int d) {
  std::int64_t r = 1;
  for (int i = 0; i < d; ++i) {
    r *= n;
    if (r > (std::int64_t{1} << 31) - 1) return -1;
  }
  return r;
}

}  // namespace

std::int64_t SimConfig::particle_count() const { return checked_power(init.n_o_init, d()); }

std::int64_t SimConfig::batch_count() const {
  if (q_override) return *q_override;
  return checked_power(batches_per_dim, d());
}

std::int64_t SimConfig::step_count() const {
  if (!(dt > 0.0) || !(t_end >= t0)) return 0;
  return static_cast<std::int64_t>(std::floor((t_end - t0) / dt + 1e-9));
}

ValidationReport validate(const SimConfig& c) {
  ValidationReport r;
  auto fail = [&r](std::string msg) { r.push_back(std::move(msg)); };
  const int d = c.kernel.d;

  if (d != 2 && d != 3) fail("d must be 2 or 3");
  if (!(c.kernel.lambda > 0.0)) fail("lambda must be positive");
  if (!(c.kernel.gamma >= -d - 1.0 && c.kernel.gamma <= 1.0)) {
    std::ostringstream os;
    os << "gamma must lie in [" << -d - 1 << ", 1]";
    fail(os.str());
  }
  if (!(c.kernel.delta_min >= 0.0)) fail("delta_min must be non-negative");

  if (!(c.reg.epsilon > 0.0)) fail("epsilon must be positive");
  if (!(c.reg.sigma > 0.0)) fail("sigma must be positive");
  if (!(c.reg.L > 0.0)) fail("L must be positive");
  if (c.reg.n_o < 2) fail("n_o must be at least 2");
  else if (checked_power(c.reg.n_o, d == 3 ? 3 : 2) < 0) fail("n_o^d overflows the index type");
  if (!(c.reg.density_floor >= 0.0)) fail("density floor must be non-negative");
  if (c.reg.reg_type != reg_type_of(c.method))
    fail("regularization type does not match the method");

  if (!(c.dt > 0.0)) fail("dt must be positive");
  if (!std::isfinite(c.t0) || !std::isfinite(c.t_end) || !(c.t_end >= c.t0))
    fail("t_end must be finite and not before t0");

  if (scenario_dimension(c.init.scenario) != d)
    fail("scenario " + scenario_name(c.init.scenario) + " requires d = " +
         std::to_string(scenario_dimension(c.init.scenario)));
  if (c.init.scenario == Scenario::BKW3D && !(c.t0 > 0.0))
    fail("bkw3d requires t0 > 0 (K = 1 - exp(-t/6) must be positive)");
  if (!(c.init.support_L > 0.0)) fail("support_L must be positive");
  if (c.init.n_o_init < 1) fail("n_o_init must be at least 1");

  const std::int64_t n = c.particle_count();
  if (n < 0) fail("particle count n_o_init^d overflows the index type");

  if (is_random_batch(c.method)) {
    if (c.batches_per_dim < 1) fail("q_o must be at least 1");
    const std::int64_t q = c.batch_count();
    if (q < 1) fail("batch count q must be at least 1");
    else if (n > 0 && q > n) fail("batch count q exceeds particle count N");
  }

  if (c.output.snapshot_every < 0) fail("snapshot_every must be non-negative");
  if (c.output.error_every < 0) fail("error_every must be non-negative");
  if (c.output.diagnostics_every < 1) fail("diagnostics cadence must be at least 1");
  return r;
}

}  // namespace landau
