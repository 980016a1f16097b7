#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "softhand/finger.hpp"
#include "softhand/pneumatics.hpp"

namespace softhand::controller {

using pneumatics::ValveCommand;

struct ControllerConfig {
  double deadband = 1.0e3;  // Pa, half-width of the hold band
  double period = 0.02;     // s
  double setpoint = 0.0;    // Pa gauge
};

std::vector<std::string> validate(const ControllerConfig& cfg, double quantization_step);

struct ControllerState {
  ValveCommand last_command;
  double last_reading = 0.0;  // Pa gauge
  double setpoint = 0.0;
};

/**
 * ON-OFF law with latched valves and inlet priority.
 *
 *   inlet  opens below setpoint - 2 deadband, closes at setpoint
 *   outlet opens above setpoint + 2 deadband, closes at setpoint - deadband
 *
 * Between the thresholds each valve keeps its previous state.
 */
ValveCommand control_step(const ControllerConfig& cfg, const ValveCommand& previous,
                          double sensed_gauge);

/// One pneumatically independent element of the hand.
struct ElementSetup {
  std::string name;
  ControllerConfig controller;
  pneumatics::PlantConfig plant;
  finger::FingerSpec finger;
  int finger_count = 1;  // actuators sharing one valve pair and sensor
};

struct SetpointEvent {
  double t_start = 0.0;  // s
  int element = 0;
  double setpoint = 0.0;  // Pa gauge
};

struct Disturbance {
  double time = 0.0;
  int element = 0;
  double pressure_drop = 0.0;  // Pa
};

struct TraceRow {
  double t = 0.0;
  double setpoint = 0.0;  // Pa gauge
  double true_pressure = 0.0;  // chamber, Pa gauge
  double sensed = 0.0;  // last reading, Pa gauge
  bool valve_in = false;
  bool valve_out = false;
  double angle = 0.0;  // rad
};

struct ElementTrace {
  std::string name;
  std::vector<TraceRow> rows;
  pneumatics::PlantState final_state;
  int inlet_activations = 0;
  int outlet_activations = 0;
};

struct ClosedLoopOptions {
  double duration = 40.0;
  std::uint64_t seed = 1;
  double initial_pressure = 0.0;  // Pa gauge, all elements
};

/// Precomputed backbone shared by closed-loop runs of one element.
struct ElementModel {
  finger::BackboneTable backbone;
  double volume_multiplier = 1.0;
};

ElementModel build_element_model(const ElementSetup& setup);

/// Closed loop of one element; `index` selects both the schedule rows and
/// the noise stream, so the trace matches that element inside a full run.
ElementTrace simulate_element(const ElementSetup& setup, const ElementModel& model, int index,
                              const std::vector<SetpointEvent>& schedule,
                              const std::vector<Disturbance>& disturbances,
                              const ClosedLoopOptions& options);

/**
 * Two-rate simulation: plant at plant_step, controller and sensor every
 * controller period. Each element draws sensor noise from its own stream
 * seeded by (seed, element index) so its trace does not depend on the
 * others.
 */
std::vector<ElementTrace> run_closed_loop(const std::vector<ElementSetup>& elements,
                                          const std::vector<ElementModel>& models,
                                          const std::vector<SetpointEvent>& schedule,
                                          const std::vector<Disturbance>& disturbances,
                                          const ClosedLoopOptions& options);

std::vector<ElementTrace> run_closed_loop(const std::vector<ElementSetup>& elements,
                                          const std::vector<SetpointEvent>& schedule,
                                          const std::vector<Disturbance>& disturbances,
                                          const ClosedLoopOptions& options);

/// 0 -> 15 -> 30 -> 45 -> 30 -> 15 -> 0 kPa, 5 s per step, for one element.
std::vector<SetpointEvent> staircase_schedule(int element, double step_pressure, int steps_up,
                                              double dwell);

}  // namespace softhand::controller
