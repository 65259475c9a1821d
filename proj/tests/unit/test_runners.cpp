#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "landau/config.hpp"
#include "landau/runners.hpp"

using namespace landau;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(TEST_SCRATCH_DIR) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string s; std::getline(in, s);) lines.push_back(s);
  return lines;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KeyValues small_template(const std::string& method, const fs::path& dir) {
  KeyValues kv;
  kv.set("scenario", "bkw2d");
  kv.set("method", method);
  kv.set("n_o", "8");
  kv.set("t_end", "0.05");
  kv.set("seed", "3");
  kv.set("q_o", "2");
  kv.set("snapshot_every", "2");
  kv.set("error_every", "1");
  kv.set("output_dir", dir.string());
  return kv;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(LANDAU_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("runners") {
  TEST_CASE("evolve writes the documented files") {
    const fs::path dir = scratch("evolve");
    const SimConfig c = resolve_config(small_template("det1", dir));
    const EvolveSummary s = run_evolve(c);

    const auto diag = read_lines(dir / "diagnostics.csv");
    REQUIRE(diag.size() == 7);
    CHECK(diag[0] == "t,mass,momentum_x,momentum_y,energy,entropy,rel_l2_error,wall_time_step");
    CHECK(diagnostics_header(3) ==
          "t,mass,momentum_x,momentum_y,momentum_z,energy,entropy,rel_l2_error,wall_time_step");
    for (std::size_t k = 1; k < diag.size(); ++k) {
      const auto f = split(diag[k]);
      REQUIRE(f.size() == 8);
      const DiagnosticsRecord& r = s.result.records[k - 1];
      CHECK(std::stod(f[0]) == r.t);
      CHECK(std::stod(f[1]) == r.mass);
      CHECK(std::stod(f[2]) == r.momentum[0]);
      CHECK(std::stod(f[3]) == r.momentum[1]);
      CHECK(std::stod(f[4]) == r.energy);
      CHECK(std::stod(f[5]) == r.entropy);
      CHECK(std::stod(f[6]) == *r.rel_l2_error);
      CHECK(f[7].empty() == (k == 1));
    }

    for (const char* step : {"0", "2", "4", "5"}) {
      const auto parts = read_lines(dir / (std::string("particles_") + step + ".csv"));
      REQUIRE(parts.size() == 65);
      CHECK(parts[0] == "v_1,v_2,w");
      const auto slice = read_lines(dir / (std::string("slice_") + step + ".csv"));
      REQUIRE(slice.size() == 9);
      CHECK(slice[0] == "v,f_blob,f_exact");
    }
    CHECK_FALSE(fs::exists(dir / "particles_1.csv"));

    const auto final_rows = read_lines(dir / "particles_5.csv");
    for (std::size_t i = 0; i < 64; ++i) {
      const auto f = split(final_rows[i + 1]);
      CHECK(std::stod(f[0]) == s.result.final_state.velocities[i][0]);
      CHECK(std::stod(f[2]) == s.result.final_state.weights[i]);
    }

    const std::string manifest = slurp(dir / "manifest.txt");
    CHECK(manifest.find(kVersionTag) != std::string::npos);
    CHECK(manifest.find("method = det1") != std::string::npos);
    CHECK(manifest.find("seed = 3") != std::string::npos);
    CHECK(s.files.size() == 10);
  }

  TEST_CASE("deterministic mode gives byte-identical outputs") {
    for (const char* method : {"rbm1", "det2"}) {
      const fs::path a = scratch(std::string("rerun_a_") + method);
      const fs::path b = scratch(std::string("rerun_b_") + method);
      KeyValues ka = small_template(method, a), kb = small_template(method, b);
      ka.set("deterministic", "true");
      kb.set("deterministic", "true");
      run_evolve(resolve_config(ka));
      run_evolve(resolve_config(kb));
      for (const char* f : {"diagnostics.csv", "particles_5.csv", "slice_4.csv"})
        CHECK(slurp(a / f) == slurp(b / f));
      const auto lines = read_lines(a / "diagnostics.csv");
      CHECK(split(lines[2])[7].empty());
    }
  }

  TEST_CASE("log-log slope fit") {
    CHECK(fit_loglog_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit_loglog_slope({0.1, 0.2}, {5, 5}) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(fit_loglog_slope({1}, {1}), ConfigError);
    CHECK_THROWS_AS(fit_loglog_slope({1, 2}, {1, 0}), NumericalError);
  }

  TEST_CASE("convergence sweep writes a summary and is reproducible") {
    const fs::path dir = scratch("convergence");
    KeyValues kv = small_template("rbm1", dir);
    kv.set("t_end", "0.1");
    const auto s = run_convergence(kv, {8, 10, 12}, {1, 2}, dir.string());
    REQUIRE(s.rows.size() == 3);
    const auto lines = read_lines(dir / "convergence.csv");
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "n_o,h,epsilon,rel_l2_error,wall_time");
    CHECK(split(lines[1])[0] == "8");
    CHECK(std::stod(split(lines[1])[1]) == 2.0);
    CHECK(std::isfinite(s.slope));
    CHECK(slurp(dir / "manifest.txt").find("fitted_slope") != std::string::npos);
    const auto again = run_convergence(kv, {8, 10, 12}, {1, 2}, scratch("convergence2").string());
    for (std::size_t k = 0; k < 3; ++k) CHECK(again.rows[k].rel_l2_error == s.rows[k].rel_l2_error);
    CHECK_THROWS_AS(run_convergence(kv, {8, 10}, {1}, dir.string()), ConfigError);
    KeyValues bm;
    bm.set("scenario", "bimaxwellian2d");
    CHECK_THROWS_AS(run_convergence(bm, {8, 10, 12}, {}, dir.string()), ConfigError);
  }

  TEST_CASE("cost sweep writes positive timings") {
    const fs::path dir = scratch("cost");
    const auto s = run_cost_scaling(small_template("rbm2", dir), {8, 12, 16}, 2, dir.string());
    REQUIRE(s.rows.size() == 3);
    CHECK(s.rows[2].n == 256);
    for (const auto& r : s.rows) CHECK(r.seconds_per_step > 0.0);
    const auto lines = read_lines(dir / "cost.csv");
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "n_o,N,seconds_per_step");
    CHECK_THROWS_AS(run_cost_scaling(small_template("rbm2", dir), {8, 12, 16}, 0, dir.string()),
                    ConfigError);
  }

  TEST_CASE("sweep configs rederive the regularization") {
    KeyValues kv;
    kv.set("scenario", "bkw2d");
    const SimConfig a = sweep_config(kv, 40);
    const SimConfig b = sweep_config(kv, 80);
    CHECK(a.init.n_o_init == 40);
    CHECK(b.init.n_o_init == 80);
    CHECK(b.reg.epsilon < a.reg.epsilon);
    kv.set("n_o_init", "20");
    CHECK(sweep_config(kv, 80).init.n_o_init == 20);
  }

  TEST_CASE("command-line exit codes") {
    const fs::path dir = scratch("cli");
    const std::string out = " -o " + dir.string();
    CHECK(cli("validate --set scenario=bkw2d") == 0);
    CHECK(cli("--help") == 0);
    CHECK(cli("validate --set method=det1") == 1);
    CHECK(cli("validate --set scenario=bkw2d --set colour=blue") == 1);
    CHECK(cli("validate --set scenario=bkw2d --set method=rbm1") == 1);
    CHECK(cli("validate --set scenario=bkw2d --set method=rbm1 --seed 4") == 0);
    CHECK(cli("validate -c /nonexistent.cfg") == 1);
    CHECK(cli("frobnicate") == 1);
    CHECK(cli("evolve --set scenario=bkw2d --set n_o=8 --set t_end=0.02" + out) == 0);
    CHECK(fs::exists(dir / "diagnostics.csv"));
    CHECK(cli("evolve --set scenario=bkw2d --set n_o=8 --set dt=1e300 --set t_end=1e300" + out) == 2);
  }
}
