#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "landau/config.hpp"
#include "landau/core.hpp"
#include "landau/stepper.hpp"

using namespace landau;

namespace {

SimConfig bkw2d_config() {
  KeyValues kv;
  kv.set("scenario", "bkw2d");
  return resolve_config(kv);
}

bool mentions(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.begin(), r.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("valid 2D BKW config validates cleanly") {
    CHECK(validate(bkw2d_config()).empty());
  }

  TEST_CASE("zero time step is reported") {
    SimConfig c = bkw2d_config();
    c.dt = 0.0;
    CHECK(mentions(validate(c), "dt must be positive"));
  }

  TEST_CASE("gamma below -d-1 is reported for d = 3") {
    KeyValues kv;
    kv.set("scenario", "bkw3d");
    SimConfig c = resolve_config(kv);
    c.kernel.gamma = -5.0;
    const ValidationReport r = validate(c);
    CHECK(mentions(r, "gamma"));
    CHECK(mentions(r, "[-4, 1]"));
    c.kernel.gamma = -4.0;
    CHECK(validate(c).empty());
  }

  TEST_CASE("validate is pure") {
    SimConfig c = bkw2d_config();
    c.reg.epsilon = -1.0;
    c.dt = -2.0;
    CHECK(validate(c) == validate(c));
    CHECK(validate(c).size() == 2);
  }

  TEST_CASE("each violated invariant is listed") {
    SimConfig c = bkw2d_config();
    c.reg.sigma = 0.0;
    c.reg.L = -1.0;
    c.t_end = c.t0 - 1.0;
    c.method = Method::RandomBatchI;  // reg type stays I: consistent
    c.batches_per_dim = 0;
    const ValidationReport r = validate(c);
    CHECK(mentions(r, "sigma"));
    CHECK(mentions(r, "L must be positive"));
    CHECK(mentions(r, "t_end"));
    CHECK(mentions(r, "q_o"));
  }

  TEST_CASE("method and regularization type must agree") {
    SimConfig c = bkw2d_config();
    c.method = Method::DeterministicII;
    CHECK(mentions(validate(c), "regularization type"));
  }

  TEST_CASE("batch count may not exceed particle count") {
    SimConfig c = bkw2d_config();
    c.method = Method::RandomBatchI;
    c.init.n_o_init = 3;
    c.batches_per_dim = 4;
    CHECK(mentions(validate(c), "exceeds particle count"));
  }

  TEST_CASE("default regularization parameters") {
    CHECK(default_epsilon(0.4) == doctest::Approx(0.64 * std::pow(0.4, 1.98)).epsilon(1e-15));
    CHECK(default_sigma(0.25) == doctest::Approx(2.0).epsilon(1e-15));
  }

  TEST_CASE("step and particle counts") {
    SimConfig c = bkw2d_config();
    c.t0 = 0.0;
    c.t_end = 5.0;
    c.dt = 0.01;
    CHECK(c.step_count() == 500);
    c.t_end = 0.0;
    CHECK(c.step_count() == 0);
    CHECK(c.particle_count() == 1600);
    c.batches_per_dim = 5;
    CHECK(c.batch_count() == 25);
    c.q_override = 7;
    CHECK(c.batch_count() == 7);
  }

  TEST_CASE("names round trip") {
    for (Method m : {Method::DeterministicI, Method::DeterministicII, Method::RandomBatchI,
                     Method::RandomBatchII})
      CHECK(parse_method(method_name(m)) == m);
    for (Scenario s : {Scenario::BKW2D, Scenario::BKW3D, Scenario::BiMaxwellian2D,
                       Scenario::Rosenbluth3D})
      CHECK(parse_scenario(scenario_name(s)) == s);
    CHECK_THROWS_AS(parse_method("rbm3"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("bkw4d"), ConfigError);
    CHECK(reg_type_of(Method::RandomBatchII) == RegType::TypeII);
    CHECK(is_random_batch(Method::RandomBatchI));
    CHECK_FALSE(is_random_batch(Method::DeterministicII));
  }

  TEST_CASE("ensemble structural checks") {
    ParticleEnsemble e;
    e.d = 2;
    e.velocities = {{0, 0, 0}};
    e.weights = {1.0};
    CHECK_NOTHROW(e.check());
    e.weights = {-1.0};
    CHECK_THROWS_AS(e.check(), ConfigError);
    e.weights = {1.0, 2.0};
    CHECK_THROWS_AS(e.check(), ConfigError);
    e.weights = {0.0};
    CHECK_THROWS_AS(e.check(), ConfigError);
  }

  TEST_CASE("every accepted config runs") {
    const char* scenarios[] = {"bkw2d", "bkw3d", "bimaxwellian2d", "rosenbluth3d"};
    const char* methods[] = {"det1", "det2", "rbm1", "rbm2"};
    for (const char* s : scenarios)
      for (const char* m : methods) {
        CAPTURE(s);
        CAPTURE(m);
        KeyValues kv;
        kv.set("scenario", s);
        kv.set("method", m);
        kv.set("n_o", "8");
        kv.set("q_o", "2");
        kv.set("seed", "3");
        SimConfig c = resolve_config(kv);
        c.t_end = c.t0 + 2.0 * c.dt;
        REQUIRE(validate(c).empty());
        RunResult r;
        CHECK_NOTHROW(r = run(c));
        CHECK(r.records.size() == 3);
      }
  }
}
