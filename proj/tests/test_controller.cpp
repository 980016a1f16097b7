#include <doctest.h>

#include <random>

#include "softhand/controller.hpp"
#include "softhand/errors.hpp"
#include "softhand/scenario.hpp"

using namespace softhand;
using namespace softhand::controller;

namespace {

ElementSetup setup(double noise = 200.0) {
  ElementSetup e;
  e.name = "index";
  e.plant.sensor.noise_sigma = noise;
  e.finger.hysteresis = {1.0, 8.0e3, 0.0};
  return e;
}

ElementTrace hold(const ElementSetup& e, double sp, double seconds, std::uint64_t seed = 1) {
  ClosedLoopOptions opt;
  opt.duration = seconds;
  opt.seed = seed;
  return simulate_element(e, build_element_model(e), 0, {{0.0, 0, sp}}, {}, opt);
}

}  // namespace

TEST_CASE("valve law with latching") {
  ControllerConfig c{1e3, 0.02, 40e3};
  const ValveCommand off{}, in{true, false}, out{false, true};
  CHECK(control_step(c, off, 37.9e3) == in);
  CHECK(control_step(c, off, 38.1e3) == off);
  CHECK(control_step(c, in, 39.9e3) == in);
  CHECK(control_step(c, in, 40.0e3) == off);
  CHECK(control_step(c, off, 41.9e3) == off);
  CHECK(control_step(c, off, 42.1e3) == out);
  CHECK(control_step(c, out, 39.1e3) == out);
  CHECK(control_step(c, out, 39.0e3) == off);
  CHECK(control_step(c, out, 30.0e3) == in);
  c.setpoint = 45e3;
  CHECK(control_step(c, off, 30e3) == in);
  CHECK(control_step(c, off, 45e3) == off);
  c.setpoint = 15e3;
  CHECK(control_step(c, off, 45e3) == out);
}

TEST_CASE("valves are never open together") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> sp(0.0, 100e3), noise(-5e3, 5e3);
  for (int trial = 0; trial < 200; ++trial) {
    ControllerConfig c{1e3, 0.02, sp(rng)};
    ValveCommand cmd;
    for (int k = 0; k < 200; ++k) {
      cmd = control_step(c, cmd, c.setpoint + noise(rng));
      CHECK_FALSE((cmd.inlet && cmd.outlet));
    }
  }
  const auto tr = hold(setup(), 45e3, 20.0);
  CHECK(scenario::mutual_exclusion(tr));
}

TEST_CASE("pressure is captured in the hold band across setpoints") {
  const auto e = setup();
  const auto model = build_element_model(e);
  for (double sp = 10e3; sp <= 80e3 + 1; sp += 5e3) {
    CAPTURE(sp);
    ClosedLoopOptions opt;
    opt.duration = 15.0;
    const auto tr = simulate_element(e, model, 0, {{0.0, 0, sp}}, {}, opt);
    const double lo = sp - 2e3, hi = sp + 2e3;
    CHECK(scenario::settle_time(tr, 0.0, 15.0, lo, hi) <= 3.0);
  }
}

TEST_CASE("zero setpoint keeps every valve shut") {
  const auto tr = hold(setup(), 0.0, 5.0);
  CHECK(tr.inlet_activations == 0);
  CHECK(tr.outlet_activations == 0);
  for (const auto& r : tr.rows) CHECK(r.true_pressure == 0.0);
}

TEST_CASE("same seed, same trace; another seed, another trace") {
  const auto e = setup();
  const auto a = hold(e, 30e3, 6.0, 5);
  const auto b = hold(e, 30e3, 6.0, 5);
  const auto c = hold(e, 30e3, 6.0, 6);
  REQUIRE(a.rows.size() == b.rows.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].sensed == b.rows[i].sensed);
    CHECK(a.rows[i].true_pressure == b.rows[i].true_pressure);
    differs = differs || a.rows[i].sensed != c.rows[i].sensed;
  }
  CHECK(differs);
}

TEST_CASE("elements draw from independent streams") {
  const auto e = setup();
  ClosedLoopOptions opt;
  opt.duration = 4.0;
  const std::vector<SetpointEvent> sched{{0.0, 0, 30e3}, {0.0, 1, 30e3}};
  const auto both = run_closed_loop({e, e}, sched, {}, opt);
  const auto alone = simulate_element(e, build_element_model(e), 1, sched, {}, opt);
  REQUIRE(both.size() == 2);
  for (std::size_t i = 0; i < alone.rows.size(); ++i) {
    CHECK(both[1].rows[i].sensed == alone.rows[i].sensed);
  }
  bool differs = false;
  for (std::size_t i = 0; i < alone.rows.size(); ++i) {
    differs = differs || both[0].rows[i].sensed != both[1].rows[i].sensed;
  }
  CHECK(differs);
}

TEST_CASE("leak within the predicate is compensated") {
  auto e = setup();
  e.plant.leak_conductance = 1e-11;
  REQUIRE(pneumatics::leak_tolerable(e.plant, 50e3));
  const auto tr = hold(e, 50e3, 40.0);
  CHECK(std::abs(scenario::mean_true_pressure(tr, 10.0, 40.0) - 50e3) < 2e3);
  CHECK(scenario::inlet_openings(tr, 10.0, 40.0) > 5);
}

TEST_CASE("a forced drop is recovered within two seconds") {
  auto e = setup();
  e.plant.leak_conductance = 1e-11;
  ClosedLoopOptions opt;
  opt.duration = 30.0;
  const auto tr = simulate_element(e, build_element_model(e), 0, {{0.0, 0, 50e3}},
                                   {{20.0, 0, 10e3}}, opt);
  CHECK(tr.rows[20001].true_pressure < 42e3);
  CHECK(scenario::entry_time(tr, 20.0 + 1e-9, 30.0, 48e3, 52e3) <= 2.0);
}

TEST_CASE("leak beyond the predicate settles below the setpoint") {
  auto e = setup();
  e.plant.leak_conductance = 1e-10;
  REQUIRE_FALSE(pneumatics::leak_tolerable(e.plant, 50e3));
  const auto tr = hold(e, 50e3, 40.0);
  const double g = pneumatics::inlet_path_conductance(e.plant);
  const double ceiling = g * e.plant.supply_pressure / (g + e.plant.leak_conductance);
  const double steady = scenario::mean_true_pressure(tr, 30.0, 40.0);
  CHECK(steady < 50e3);
  CHECK(steady == doctest::Approx(ceiling).epsilon(1e-3));
}

TEST_CASE("staircase schedule") {
  const auto s = staircase_schedule(2, 15e3, 3, 5.0);
  REQUIRE(s.size() == 7);
  const double expected[] = {0, 15e3, 30e3, 45e3, 30e3, 15e3, 0};
  for (int i = 0; i < 7; ++i) {
    CHECK(s[i].t_start == doctest::Approx(5.0 * i));
    CHECK(s[i].setpoint == expected[i]);
    CHECK(s[i].element == 2);
  }
}

TEST_CASE("trace sampling and bookkeeping") {
  const auto tr = hold(setup(), 20e3, 1.0);
  CHECK(tr.rows.size() == 1001);
  CHECK(tr.rows.back().t == doctest::Approx(1.0));
  CHECK(tr.inlet_activations >= 1);
  for (std::size_t i = 1; i < tr.rows.size(); ++i) {
    if (i % 20 != 0) CHECK(tr.rows[i].sensed == tr.rows[i - 1].sensed);
  }
}

TEST_CASE("invalid runs") {
  const auto e = setup();
  ClosedLoopOptions opt;
  opt.duration = 0.0;
  CHECK_THROWS_AS(simulate_element(e, build_element_model(e), 0, {}, {}, opt), DomainError);
  CHECK_THROWS_AS(run_closed_loop({e}, {}, {}, {}, ClosedLoopOptions{}), DomainError);
  CHECK_FALSE(validate(ControllerConfig{0.1e3, 0.02, 0.0}, 224.8).empty());
  CHECK(validate(ControllerConfig{}, 224.8).empty());
}
