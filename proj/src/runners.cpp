#include "landau/runners.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "landau/analytic.hpp"

namespace landau {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
}

void write_particles(const fs::path& p, const ParticleEnsemble& ens) {
  std::ofstream out = open_out(p);
  for (int a = 0; a < ens.d; ++a) out << "v_" << (a + 1) << ",";
  out << "w\n";
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (int a = 0; a < ens.d; ++a) out << format_double(ens.velocities[i][a]) << ",";
    out << format_double(ens.weights[i]) << "\n";
  }
}

// Blob density along axis 0 through the grid centers with index n_o/2 on
// the remaining axes.
void write_slice(const fs::path& p, Simulation& sim) {
  const VelocityGrid& g = sim.grid();
  const double mid = g.axis_coord(g.n_o / 2);
  std::vector<Vec> pts;
  for (int i = 0; i < g.n_o; ++i) pts.push_back({g.axis_coord(i), mid, g.d == 3 ? mid : 0.0});
  const std::vector<double> blob = sim.blob_at(pts);
  const auto exact = scenario_info(sim.config().init.scenario).exact;
  std::ofstream out = open_out(p);
  out << "v,f_blob" << (exact ? ",f_exact" : "") << "\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << format_double(pts[i][0]) << "," << format_double(blob[i]);
    if (exact) out << "," << format_double((*exact)(sim.time(), pts[i]));
    out << "\n";
  }
}

}  // namespace

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs >= 2 points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw NumericalError("log-log fit needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::string diagnostics_header(int d) {
  std::string h = "t,mass,momentum_x,momentum_y";
  if (d == 3) h += ",momentum_z";
  return h + ",energy,entropy,rel_l2_error,wall_time_step";
}

std::string diagnostics_row(const DiagnosticsRecord& r, bool with_wall_time) {
  std::ostringstream os;
  os << format_double(r.t) << "," << format_double(r.mass);
  for (int a = 0; a < r.d; ++a) os << "," << format_double(r.momentum[a]);
  os << "," << format_double(r.energy) << "," << format_double(r.entropy) << ",";
  if (r.rel_l2_error) os << format_double(*r.rel_l2_error);
  os << ",";
  if (with_wall_time && r.wall_time_step) os << format_double(*r.wall_time_step);
  return os.str();
}

EvolveSummary run_evolve(const SimConfig& config) {
  ensure_dir(config.output.dir);
  const fs::path dir(config.output.dir);
  EvolveSummary summary;
  const int snap = config.output.snapshot_every;
  const std::int64_t steps = config.step_count();

  {
    std::ofstream m = open_out(dir / "manifest.txt");
    m << "# run manifest\n"
      << "version = " << kVersionTag << "\n"
      << "command = evolve\n"
      << to_key_values(config)
      << "steps = " << steps << "\n"
      << "outputs = manifest.txt, diagnostics.csv";
    if (snap > 0) m << ", particles_<step>.csv, slice_<step>.csv (every " << snap << " steps and the final step)";
    m << "\n";
  }
  summary.files.push_back((dir / "manifest.txt").string());

  std::ofstream diag = open_out(dir / "diagnostics.csv");
  diag << diagnostics_header(config.d()) << "\n";
  summary.files.push_back((dir / "diagnostics.csv").string());

  StepObserver obs;
  const bool wall = !config.deterministic;
  obs.on_record = [&](const DiagnosticsRecord& r) { diag << diagnostics_row(r, wall) << "\n"; };
  if (snap > 0) {
    obs.on_state = [&](Simulation& sim) {
      const std::int64_t n = sim.step_index();
      if (n % snap != 0 && n != steps) return;
      const std::string tag = std::to_string(n);
      write_particles(dir / ("particles_" + tag + ".csv"), sim.ensemble());
      write_slice(dir / ("slice_" + tag + ".csv"), sim);
      summary.files.push_back((dir / ("particles_" + tag + ".csv")).string());
      summary.files.push_back((dir / ("slice_" + tag + ".csv")).string());
    };
  }
  summary.result = run(config, obs);
  diag.flush();
  if (!diag) throw std::runtime_error("failed writing diagnostics.csv");
  return summary;
}

SimConfig sweep_config(const KeyValues& tmpl, int n_o, std::optional<std::uint64_t> seed) {
  KeyValues kv = tmpl;
  kv.set("n_o", std::to_string(n_o));
  if (!tmpl.has("n_o_init")) kv.set("n_o_init", std::to_string(n_o));
  if (seed) kv.set("seed", std::to_string(*seed));
  return resolve_config(kv);
}

ConvergenceSummary run_convergence(const KeyValues& tmpl, const std::vector<int>& n_o_list,
                                   const std::vector<std::uint64_t>& seeds,
                                   const std::string& out_dir) {
  if (n_o_list.size() < 3) throw ConfigError("convergence needs at least 3 resolutions");
  ensure_dir(out_dir);
  ConvergenceSummary s;
  std::vector<double> inv_n, err;
  for (int n_o : n_o_list) {
    SimConfig probe = sweep_config(tmpl, n_o, seeds.empty() ? std::nullopt
                                                            : std::optional(seeds.front()));
    if (!scenario_info(probe.init.scenario).exact)
      throw ConfigError("convergence needs a scenario with an exact solution (bkw2d or bkw3d)");
    const bool rbm = is_random_batch(probe.method);
    std::vector<std::optional<std::uint64_t>> runs;
    if (rbm && !seeds.empty())
      for (auto sd : seeds) runs.emplace_back(sd);
    else
      runs.emplace_back(std::nullopt);

    ConvergenceRow row;
    row.n_o = n_o;
    row.h = probe.reg.h();
    row.epsilon = probe.reg.epsilon;
    for (const auto& sd : runs) {
      SimConfig c = sweep_config(tmpl, n_o, sd);
      c.output.error_every = 0;
      c.output.diagnostics_every = std::max<std::int64_t>(c.step_count(), 1);
      const auto t0 = std::chrono::steady_clock::now();
      const RunResult r = run(c);
      row.wall_time += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.rel_l2_error += *r.records.back().rel_l2_error;
    }
    row.rel_l2_error /= static_cast<double>(runs.size());
    std::cout << "n_o=" << n_o << " rel_l2_error=" << row.rel_l2_error << " wall=" << row.wall_time
              << "s\n";
    s.rows.push_back(row);
    inv_n.push_back(1.0 / n_o);
    err.push_back(row.rel_l2_error);
  }
  s.slope = fit_loglog_slope(inv_n, err);

  const fs::path dir(out_dir);
  std::ofstream csv = open_out(dir / "convergence.csv");
  csv << "n_o,h,epsilon,rel_l2_error,wall_time\n";
  for (const auto& r : s.rows)
    csv << r.n_o << "," << format_double(r.h) << "," << format_double(r.epsilon) << ","
        << format_double(r.rel_l2_error) << "," << format_double(r.wall_time) << "\n";
  std::ofstream m = open_out(dir / "manifest.txt");
  m << "# convergence manifest\nversion = " << kVersionTag << "\ncommand = convergence\n";
  for (const auto& e : tmpl.entries) m << "template." << e.key << " = " << e.value << "\n";
  m << "seeds =";
  for (auto sd : seeds) m << " " << sd;
  m << "\nfitted_slope = " << format_double(s.slope) << "\n";
  return s;
}

CostSummary run_cost_scaling(const KeyValues& tmpl, const std::vector<int>& n_o_list, int steps,
                             const std::string& out_dir) {
  if (n_o_list.size() < 3) throw ConfigError("cost scaling needs at least 3 resolutions");
  if (steps < 1) throw ConfigError("cost scaling needs at least one timed step");
  ensure_dir(out_dir);
  CostSummary s;
  std::vector<double> ns, ts;
  for (int n_o : n_o_list) {
    Simulation sim(sweep_config(tmpl, n_o));
    double total = 0.0;
    for (int k = 0; k < steps; ++k) total += sim.advance();
    CostRow row{n_o, static_cast<std::int64_t>(sim.ensemble().size()), total / steps};
    std::cout << "n_o=" << n_o << " N=" << row.n << " seconds_per_step=" << row.seconds_per_step
              << "\n";
    s.rows.push_back(row);
    ns.push_back(static_cast<double>(row.n));
    ts.push_back(row.seconds_per_step);
  }
  s.slope = fit_loglog_slope(ns, ts);

  const fs::path dir(out_dir);
  std::ofstream csv = open_out(dir / "cost.csv");
  csv << "n_o,N,seconds_per_step\n";
  for (const auto& r : s.rows)
    csv << r.n_o << "," << r.n << "," << format_double(r.seconds_per_step) << "\n";
  std::ofstream m = open_out(dir / "manifest.txt");
  m << "# cost manifest\nversion = " << kVersionTag << "\ncommand = cost\nsteps = " << steps << "\n";
  for (const auto& e : tmpl.entries) m << "template." << e.key << " = " << e.value << "\n";
  m << "fitted_slope = " << format_double(s.slope) << "\n";
  return s;
}

}  // namespace landau
