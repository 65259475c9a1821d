#pragma once

// Experiment runners behind the CLI: time evolution with CSV output,
// resolution sweeps for the error decay, and per-step cost sweeps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "landau/config.hpp"
#include "landau/stepper.hpp"

namespace landau {

inline constexpr const char* kVersionTag = "landau-particles 1.0.0";

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string diagnostics_header(int d);
std::string diagnostics_row(const DiagnosticsRecord& r, bool with_wall_time);

struct EvolveSummary {
  RunResult result;
  std::vector<std::string> files;
};

/// Writes manifest.txt, diagnostics.csv and, at the snapshot cadence,
/// particles_<step>.csv and slice_<step>.csv into config.output.dir.
EvolveSummary run_evolve(const SimConfig& config);

struct ConvergenceRow {
  int n_o = 0;
  double h = 0.0;
  double epsilon = 0.0;
  double rel_l2_error = 0.0;  ///< mean over seeds
  double wall_time = 0.0;     ///< seconds, summed over seeds
};

struct ConvergenceSummary {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  ///< d log(error) / d log(1/n_o)
};

/// One run per (n_o, seed); writes convergence.csv and manifest.txt to out_dir.
ConvergenceSummary run_convergence(const KeyValues& tmpl, const std::vector<int>& n_o_list,
                                   const std::vector<std::uint64_t>& seeds,
                                   const std::string& out_dir);

struct CostRow {
  int n_o = 0;
  std::int64_t n = 0;
  double seconds_per_step = 0.0;
};

struct CostSummary {
  std::vector<CostRow> rows;
  double slope = 0.0;  ///< d log(time) / d log(N)
};

/// Times `steps` steps per resolution; writes cost.csv and manifest.txt to out_dir.
CostSummary run_cost_scaling(const KeyValues& tmpl, const std::vector<int>& n_o_list, int steps,
                             const std::string& out_dir);

/// Resolved config for one entry of a sweep: n_o (and n_o_init unless the
/// template fixes it) replaced, epsilon/sigma re-derived unless fixed.
SimConfig sweep_config(const KeyValues& tmpl, int n_o, std::optional<std::uint64_t> seed = {});

}  // namespace landau
