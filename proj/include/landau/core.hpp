#pragma once

// Domain types shared by every part of the solver: particle ensembles,
// collision kernel parameters, regularization settings and the run config.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace landau {

/// Velocity vector. Two-dimensional problems leave the last slot at zero.
using Vec = std::array<double, 3>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Bad or inconsistent input (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite state or a violated numerical precondition (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Velocities and weights of the N particles of the empirical measure.
struct ParticleEnsemble {
  int d = 2;
  std::vector<Vec> velocities;
  std::vector<double> weights;

  std::size_t size() const { return velocities.size(); }
  double total_mass() const;

  /// Throws ConfigError if any structural invariant is broken.
  void check() const;
};

/// Collision kernel A(z) = lambda |z|^gamma (|z|^2 I - z z^T).
struct KernelSpec {
  int d = 2;
  double gamma = 0.0;
  double lambda = 1.0 / 16.0;
  /// Floor applied to |z| inside |z|^gamma when gamma < 0. Zero disables it.
  double delta_min = 0.0;
};

enum class RegType { TypeI, TypeII };

enum class Method { DeterministicI, DeterministicII, RandomBatchI, RandomBatchII };

RegType reg_type_of(Method m);
bool is_random_batch(Method m);
std::string method_name(Method m);
Method parse_method(const std::string& s);

struct RegularizationConfig {
  double epsilon = 0.0;
  double sigma = kInf;
  RegType reg_type = RegType::TypeI;
  double L = 8.0;
  int n_o = 40;
  /// Grid cells (type I) with blob density at or below this are treated as empty.
  double density_floor = 1e-300;

  double h() const { return 2.0 * L / n_o; }
};

/// Default mollifier variance for mesh size h: 0.64 h^1.98.
double default_epsilon(double h);
/// Default truncation radius: 4 sqrt(epsilon).
double default_sigma(double epsilon);

enum class Scenario { BKW2D, BKW3D, BiMaxwellian2D, Rosenbluth3D };

std::string scenario_name(Scenario s);
Scenario parse_scenario(const std::string& s);
int scenario_dimension(Scenario s);

struct InitSpec {
  Scenario scenario = Scenario::BKW2D;
  double support_L = 4.0;
  int n_o_init = 40;
  bool normalize = false;
};

struct OutputSpec {
  std::string dir = "out";
  int snapshot_every = 0;  ///< 0 disables particle/slice snapshots
  int error_every = 10;    ///< 0 disables the relative L2 error
  int diagnostics_every = 1;
};

struct SimConfig {
  KernelSpec kernel;
  RegularizationConfig reg;
  double dt = 0.01;
  double t0 = 0.0;
  double t_end = 5.0;
  Method method = Method::DeterministicI;
  int batches_per_dim = 5;
  /// Direct batch-count override; when unset q = batches_per_dim^d.
  std::optional<std::int64_t> q_override;
  std::uint64_t seed = 1;
  bool deterministic = true;
  InitSpec init;
  OutputSpec output;

  int d() const { return kernel.d; }
  std::int64_t particle_count() const;
  std::int64_t batch_count() const;
  std::int64_t step_count() const;
};

using ValidationReport = std::vector<std::string>;

/// Lists every violated invariant; empty iff the config is runnable.
ValidationReport validate(const SimConfig& config);

}  // namespace landau
