#include <doctest.h>

#include <cmath>
#include <random>

#include "softhand/errors.hpp"
#include "softhand/pneumatics.hpp"

using namespace softhand;
using namespace softhand::pneumatics;

namespace {

const VolumeFunction rigid = [](double) { return 6.0e-6; };
const VolumeFunction compliant = [](double p) { return 5.5e-6 * (1.0 + std::max(0.0, p) / 2.0e5); };

PlantState run(const PlantConfig& cfg, PlantState s, ValveCommand cmd, double seconds,
               const VolumeFunction& v) {
  const long n = std::lround(seconds / cfg.plant_step);
  for (long i = 0; i < n; ++i) s = plant_step(cfg, s, cmd, v);
  return s;
}

double gauge(const PlantConfig& cfg, double p_abs) { return p_abs - cfg.atmosphere; }

}  // namespace

TEST_CASE("sensor quantization") {
  const SensorConfig s;
  CHECK(s.quantization_step() == doctest::Approx(230e3 / 1023.0));
  CHECK(quantize(s, s.span_low) == s.span_low);
  CHECK(quantize(s, 0.0) == s.span_low);
  CHECK(quantize(s, 1e7) == doctest::Approx(s.span_high));
  const double q = s.quantization_step();
  CHECK(quantize(s, s.span_low + 10.4 * q) == doctest::Approx(s.span_low + 10 * q));
  CHECK(quantize(s, s.span_low + 10.6 * q) == doctest::Approx(s.span_low + 11 * q));
  for (double p = 30e3; p < 240e3; p += 977.0) {
    CHECK(std::abs(quantize(s, p) - p) <= 0.5 * q + 1e-9);
  }
}

TEST_CASE("sensor noise is reproducible from the generator state") {
  PlantConfig cfg;
  const auto st = initial_state(cfg, 30e3, rigid);
  std::mt19937_64 a(7), b(7);
  for (int i = 0; i < 50; ++i) {
    CHECK(sample_sensor(cfg, st, a).value == sample_sensor(cfg, st, b).value);
  }
  cfg.sensor.noise_sigma = 0.0;
  CHECK(sample_sensor(cfg, st, a).value == quantize(cfg.sensor, st.tube_pressure));
}

TEST_CASE("initial state follows the ideal gas law") {
  const PlantConfig cfg;
  const auto s = initial_state(cfg, 20e3, rigid);
  const double rt = cfg.gas_constant * cfg.temperature;
  CHECK(s.chamber_mass * rt / s.chamber_volume == doctest::Approx(cfg.atmosphere + 20e3));
  CHECK(s.tube_mass * rt / cfg.tube_volume == doctest::Approx(cfg.atmosphere + 20e3));
}

TEST_CASE("closed valves hold the gas") {
  const PlantConfig cfg;
  const auto s0 = initial_state(cfg, 35e3, compliant);
  const auto s1 = run(cfg, s0, {}, 2.0, compliant);
  CHECK(s1.gas_mass() == doctest::Approx(s0.gas_mass()).epsilon(1e-14));
  CHECK(gauge(cfg, s1.chamber_pressure) == doctest::Approx(35e3).epsilon(1e-6));
}

TEST_CASE("mass is conserved through every path") {
  PlantConfig cfg;
  cfg.leak_conductance = 2e-11;
  auto s = initial_state(cfg, 10e3, compliant);
  const double m0 = s.gas_mass();
  const ValveCommand pattern[] = {{true, false}, {false, false}, {false, true}, {true, false}};
  for (const auto& cmd : pattern) s = run(cfg, s, cmd, 0.7, compliant);
  CHECK(s.gas_mass() - m0 ==
        doctest::Approx(s.mass_in - s.mass_out - s.mass_leak).epsilon(1e-9));
}

TEST_CASE("inlet fills toward the supply, outlet vents to atmosphere") {
  const PlantConfig cfg;
  auto s = initial_state(cfg, 0.0, compliant);
  double prev = s.chamber_pressure;
  for (int i = 0; i < 20; ++i) {
    s = run(cfg, s, {true, false}, 0.25, compliant);
    CHECK(s.chamber_pressure > prev);
    CHECK(gauge(cfg, s.chamber_pressure) < cfg.supply_pressure);
    prev = s.chamber_pressure;
  }
  for (int i = 0; i < 20; ++i) {
    s = run(cfg, s, {false, true}, 0.25, compliant);
    CHECK(s.chamber_pressure < prev);
    CHECK(s.chamber_pressure > cfg.atmosphere);
    prev = s.chamber_pressure;
  }
}

TEST_CASE("steady pressure with the inlet open and a leak") {
  PlantConfig cfg;
  cfg.leak_conductance = 1e-11;
  const auto s = run(cfg, initial_state(cfg, 0.0, rigid), {true, false}, 60.0, rigid);
  const double g = inlet_path_conductance(cfg);
  const double expected = g * cfg.supply_pressure / (g + cfg.leak_conductance);
  CHECK(gauge(cfg, s.chamber_pressure) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("leak predicate") {
  PlantConfig cfg;
  const double g = inlet_path_conductance(cfg);
  CHECK(g == doctest::Approx(1.0 / (1.0 / cfg.inlet_conductance + 1.0 / cfg.line_conductance)));
  const double sp = 50e3;
  const double critical = g * (cfg.supply_pressure - sp) / sp;
  cfg.leak_conductance = 0.99 * critical;
  CHECK(leak_tolerable(cfg, sp));
  cfg.leak_conductance = 1.01 * critical;
  CHECK_FALSE(leak_tolerable(cfg, sp));
  cfg.leak_conductance = 0.0;
  CHECK(leak_tolerable(cfg, sp));
  CHECK_FALSE(leak_tolerable(cfg, cfg.supply_pressure));
}

TEST_CASE("pressure drop disturbance removes gas") {
  const PlantConfig cfg;
  const auto s0 = initial_state(cfg, 50e3, compliant);
  const auto s1 = apply_pressure_drop(cfg, s0, 10e3, compliant);
  CHECK(gauge(cfg, s1.chamber_pressure) == doctest::Approx(40e3));
  CHECK(s1.mass_leak == doctest::Approx(s0.gas_mass() - s1.gas_mass()));
  const auto s2 = apply_pressure_drop(cfg, s0, 500e3, compliant);
  CHECK(s2.chamber_pressure == cfg.atmosphere);
}

TEST_CASE("an unstable step is reported, not integrated") {
  PlantConfig cfg;
  cfg.plant_step = 0.05;
  CHECK_THROWS_AS(run(cfg, initial_state(cfg, 0.0, rigid), {true, false}, 1.0, rigid),
                  SimulationError);
}

TEST_CASE("validation") {
  PlantConfig cfg;
  CHECK(validate(cfg, 0.02).empty());
  CHECK_FALSE(validate(cfg, 0.005).empty());
  cfg.line_conductance = 0.0;
  CHECK_FALSE(validate(cfg, 0.02).empty());
  cfg = PlantConfig{};
  cfg.sensor.span_high = cfg.sensor.span_low;
  CHECK_FALSE(validate(cfg, 0.02).empty());
}
