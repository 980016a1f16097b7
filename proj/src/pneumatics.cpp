#include "softhand/pneumatics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "softhand/errors.hpp"

namespace softhand::pneumatics {

double SensorConfig::quantization_step() const {
  return (span_high - span_low) / static_cast<double>((1 << bits) - 1);
}

std::vector<std::string> validate(const PlantConfig& cfg, double controller_period) {
  std::vector<std::string> issues;
  if (!(cfg.supply_pressure > 0.0)) issues.emplace_back("supply pressure must be positive");
  if (!(cfg.atmosphere > 0.0)) issues.emplace_back("atmosphere must be positive");
  if (!(cfg.temperature > 0.0)) issues.emplace_back("temperature must be positive");
  if (!(cfg.gas_constant > 0.0)) issues.emplace_back("gas constant must be positive");
  if (!(cfg.inlet_conductance >= 0.0 && cfg.outlet_conductance >= 0.0 &&
        cfg.leak_conductance >= 0.0)) {
    issues.emplace_back("conductances must be non-negative");
  }
  if (!(cfg.line_conductance > 0.0)) issues.emplace_back("line conductance must be positive");
  if (!(cfg.tube_volume > 0.0)) issues.emplace_back("tube volume must be positive");
  if (!(cfg.plant_step > 0.0)) issues.emplace_back("plant step must be positive");
  if (!(cfg.plant_step <= controller_period / 10.0 * (1.0 + 1e-12))) {
    issues.emplace_back("plant step must be at most a tenth of the controller period");
  }
  if (!(cfg.valve_latency >= 0.0)) issues.emplace_back("valve latency must be >= 0");
  const auto& s = cfg.sensor;
  if (!(s.noise_sigma >= 0.0)) issues.emplace_back("sensor noise must be >= 0");
  if (!(s.span_high > s.span_low)) issues.emplace_back("sensor span must be increasing");
  if (s.bits < 1 || s.bits > 24) issues.emplace_back("sensor resolution must be 1..24 bits");
  return issues;
}

PlantState initial_state(const PlantConfig& cfg, double p_gauge, const VolumeFunction& volume) {
  const double rt = cfg.gas_constant * cfg.temperature;
  const double p = cfg.atmosphere + p_gauge;
  PlantState s;
  s.chamber_volume = volume(p_gauge);
  s.tube_pressure = p;
  s.chamber_pressure = p;
  s.tube_mass = p * cfg.tube_volume / rt;
  s.chamber_mass = p * s.chamber_volume / rt;
  return s;
}

namespace {

double chamber_pressure_for(const PlantConfig& cfg, double mass, double guess_abs,
                            const VolumeFunction& volume, double& v_out) {
  const double rt = cfg.gas_constant * cfg.temperature;
  const double v0 = volume(guess_abs - cfg.atmosphere);
  const double p1 = mass * rt / v0;
  v_out = volume(p1 - cfg.atmosphere);
  return mass * rt / v_out;
}

}  // namespace

PlantState plant_step(const PlantConfig& cfg, const PlantState& state, const ValveCommand& cmd,
                      const VolumeFunction& volume) {
  const double dt = cfg.plant_step;
  const double rt = cfg.gas_constant * cfg.temperature;
  const double psup = cfg.atmosphere + cfg.supply_pressure;
  const double pm = state.tube_pressure;
  const double pc = state.chamber_pressure;

  const double q_in = cmd.inlet ? cfg.inlet_conductance * (psup - pm) : 0.0;
  const double q_out = cmd.outlet ? cfg.outlet_conductance * (pm - cfg.atmosphere) : 0.0;
  const double q_line = cfg.line_conductance * (pm - pc);
  const double q_leak = cfg.leak_conductance * (pc - cfg.atmosphere);

  PlantState next = state;
  next.time = state.time + dt;
  next.valve_in = cmd.inlet;
  next.valve_out = cmd.outlet;
  next.tube_mass = state.tube_mass + dt * (q_in - q_out - q_line);
  next.chamber_mass = state.chamber_mass + dt * (q_line - q_leak);
  next.mass_in = state.mass_in + dt * q_in;
  next.mass_out = state.mass_out + dt * q_out;
  next.mass_leak = state.mass_leak + dt * q_leak;
  if (!(next.tube_mass > 0.0) || !(next.chamber_mass > 0.0)) {
    std::ostringstream os;
    os << "gas mass went negative at t = " << next.time << " s; plant step too large";
    throw SimulationError(os.str(), next.time);
  }
  next.tube_pressure = next.tube_mass * rt / cfg.tube_volume;
  next.chamber_pressure =
      chamber_pressure_for(cfg, next.chamber_mass, pc, volume, next.chamber_volume);
  if (!std::isfinite(next.chamber_pressure) || !std::isfinite(next.tube_pressure)) {
    throw SimulationError("plant pressure is not finite", next.time);
  }
  return next;
}

PlantState apply_pressure_drop(const PlantConfig& cfg, const PlantState& state, double drop,
                               const VolumeFunction& volume) {
  const double rt = cfg.gas_constant * cfg.temperature;
  PlantState next = state;
  const double pm = std::max(cfg.atmosphere, state.tube_pressure - drop);
  const double pc = std::max(cfg.atmosphere, state.chamber_pressure - drop);
  const double v = volume(pc - cfg.atmosphere);
  next.tube_mass = pm * cfg.tube_volume / rt;
  next.chamber_mass = pc * v / rt;
  next.tube_pressure = pm;
  next.chamber_pressure = pc;
  next.chamber_volume = v;
  next.mass_leak += state.gas_mass() - next.gas_mass();
  return next;
}

double quantize(const SensorConfig& s, double p_abs) {
  const double step = s.quantization_step();
  const double top = static_cast<double>((1 << s.bits) - 1);
  const double level = std::clamp(std::round((p_abs - s.span_low) / step), 0.0, top);
  return s.span_low + level * step;
}

SensorReading sample_sensor(const PlantConfig& cfg, const PlantState& state,
                            std::mt19937_64& rng) {
  double p = state.tube_pressure;
  if (cfg.sensor.noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.sensor.noise_sigma);
    p += noise(rng);
  }
  return {quantize(cfg.sensor, p), state.time};
}

double inlet_path_conductance(const PlantConfig& cfg) {
  const double a = cfg.inlet_conductance, b = cfg.line_conductance;
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return a * b / (a + b);
}

bool leak_tolerable(const PlantConfig& cfg, double setpoint_gauge) {
  return inlet_path_conductance(cfg) * (cfg.supply_pressure - setpoint_gauge) >
         cfg.leak_conductance * setpoint_gauge;
}

}  // namespace softhand::pneumatics
