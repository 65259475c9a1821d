#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "landau/config.hpp"
#include "landau/runners.hpp"

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "key = value configuration file");
  cmd->add_option("-s,--set", c.overrides, "override a key, e.g. --set n_o=60 (repeatable)");
  cmd->add_option("--seed", c.seed, "random seed (required for rbm1/rbm2 unless in the file)");
  cmd->add_option("-o,--output-dir", c.output_dir, "output directory");
}

landau::KeyValues gather(const Common& c) {
  landau::KeyValues kv;
  if (!c.config_path.empty()) kv = landau::read_key_values(c.config_path);
  for (const auto& s : c.overrides) kv.set_assignment(s);
  if (c.seed) kv.set("seed", std::to_string(*c.seed));
  if (!c.output_dir.empty()) kv.set("output_dir", c.output_dir);
  return kv;
}

std::string out_dir_of(const landau::KeyValues& kv) {
  const auto* e = kv.find("output_dir");
  return e ? e->value : std::string("output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle solver for the spatially homogeneous Landau equation"};
  app.set_version_flag("--version", landau::kVersionTag);
  app.require_subcommand(1);

  Common evolve_opts, conv_opts, cost_opts, validate_opts;
  std::vector<int> conv_n_o{40, 60, 80};
  std::vector<std::uint64_t> conv_seeds;
  std::vector<int> cost_n_o{40, 80, 160};
  int cost_steps = 10;

  auto* evolve = app.add_subcommand("evolve", "run one simulation and write CSV diagnostics");
  add_common(evolve, evolve_opts);

  auto* conv = app.add_subcommand("convergence", "relative L2 error against resolution");
  add_common(conv, conv_opts);
  conv->add_option("--n-o", conv_n_o, "resolutions (comma separated)")->delimiter(',');
  conv->add_option("--seeds", conv_seeds, "seeds averaged for random batch methods")
      ->delimiter(',');

  auto* cost = app.add_subcommand("cost", "wall time per step against particle count");
  add_common(cost, cost_opts);
  cost->add_option("--n-o", cost_n_o, "resolutions (comma separated)")->delimiter(',');
  cost->add_option("--steps", cost_steps, "timed steps per resolution");

  auto* val = app.add_subcommand("validate", "check a configuration and print it resolved");
  add_common(val, validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (evolve->parsed()) {
      const landau::SimConfig c = landau::resolve_config(gather(evolve_opts));
      const auto s = landau::run_evolve(c);
      const auto& last = s.result.records.back();
      std::cout << "steps: " << c.step_count() << "  final t: " << last.t
                << "  mass: " << last.mass << "  energy: " << last.energy;
      if (last.rel_l2_error) std::cout << "  rel_l2_error: " << *last.rel_l2_error;
      std::cout << "\nwrote " << s.files.size() << " files to " << c.output.dir << "\n";
    } else if (conv->parsed()) {
      landau::KeyValues kv = gather(conv_opts);
      if (!conv_seeds.empty() && !kv.has("seed")) kv.set("seed", std::to_string(conv_seeds.front()));
      const auto s = landau::run_convergence(kv, conv_n_o, conv_seeds, out_dir_of(kv));
      std::cout << "fitted slope (error vs 1/n_o): " << s.slope << "\n";
    } else if (cost->parsed()) {
      const landau::KeyValues kv = gather(cost_opts);
      const auto s = landau::run_cost_scaling(kv, cost_n_o, cost_steps, out_dir_of(kv));
      std::cout << "fitted slope (time vs N): " << s.slope << "\n";
    } else if (val->parsed()) {
      const landau::SimConfig c = landau::resolve_config(gather(validate_opts));
      std::cout << landau::to_key_values(c) << "steps = " << c.step_count()
                << "\nparticles = " << c.particle_count() << "\n";
    }
  } catch (const landau::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
