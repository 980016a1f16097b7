#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "softhand/units.hpp"

namespace softhand::pneumatics {

struct SensorConfig {
  double noise_sigma = 200.0;  // Pa
  double span_low = 20.0e3;    // Pa absolute
  double span_high = 250.0e3;  // Pa absolute
  int bits = 10;

  double quantization_step() const;
};

/**
 * Supply -> inlet valve -> manifold (tube, sensor port) -> line -> chamber,
 * with the outlet valve venting the manifold and the leak venting the
 * chamber. All flows are linear in the pressure drop.
 */
struct PlantConfig {
  double supply_pressure = 150.0e3;  // Pa gauge
  double atmosphere = units::standard_atmosphere;
  double temperature = 293.15;  // K
  double gas_constant = units::air_gas_constant;
  double inlet_conductance = 3.98e-11;  // kg/(s Pa)
  double outlet_conductance = 4.38e-11; // kg/(s Pa)
  double line_conductance = 2.09e-9;    // kg/(s Pa)
  double leak_conductance = 0.0;        // kg/(s Pa)
  double tube_volume = 1.85e-6;         // m^3
  double plant_step = 1.0e-3;           // s
  double valve_latency = 0.0;           // s
  SensorConfig sensor;
};

std::vector<std::string> validate(const PlantConfig& cfg, double controller_period);

struct ValveCommand {
  bool inlet = false;
  bool outlet = false;
  bool operator==(const ValveCommand&) const = default;
};

struct PlantState {
  double time = 0.0;
  double tube_mass = 0.0;        // kg
  double chamber_mass = 0.0;     // kg
  double tube_pressure = 0.0;    // Pa absolute
  double chamber_pressure = 0.0;  // Pa absolute
  double chamber_volume = 0.0;   // m^3
  bool valve_in = false;
  bool valve_out = false;
  // Integrated mass through each path since the initial state.
  double mass_in = 0.0;
  double mass_out = 0.0;
  double mass_leak = 0.0;

  double gas_mass() const { return tube_mass + chamber_mass; }
};

/// Chamber volume as a function of chamber gauge pressure.
using VolumeFunction = std::function<double(double)>;

PlantState initial_state(const PlantConfig& cfg, double p_gauge, const VolumeFunction& volume);

/**
 * One explicit Euler step of the mass balance. The chamber volume is
 * refreshed with a single fixed-point pass through `volume`. Throws
 * SimulationError when a mass would go negative.
 */
PlantState plant_step(const PlantConfig& cfg, const PlantState& state, const ValveCommand& cmd,
                      const VolumeFunction& volume);

/// Remove gas so both volumes drop by `drop` Pa (not below atmosphere).
PlantState apply_pressure_drop(const PlantConfig& cfg, const PlantState& state, double drop,
                               const VolumeFunction& volume);

struct SensorReading {
  double value = 0.0;  // Pa absolute, quantized
  double sample_time = 0.0;
};

/// Noise-free transfer: clamp to the span and round to the nearest level.
double quantize(const SensorConfig& s, double p_abs);

/// Reading of the manifold pressure with Gaussian noise, then quantized.
SensorReading sample_sensor(const PlantConfig& cfg, const PlantState& state, std::mt19937_64& rng);

/// Series conductance of inlet valve and line.
double inlet_path_conductance(const PlantConfig& cfg);

/// True when the inlet path out-flows the leak at the setpoint:
/// C_path (P_supply - P_set) > C_leak (P_set - P_atm).
bool leak_tolerable(const PlantConfig& cfg, double setpoint_gauge);

}  // namespace softhand::pneumatics
