#include "softhand/controller.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "softhand/errors.hpp"

namespace softhand::controller {

std::vector<std::string> validate(const ControllerConfig& cfg, double quantization_step) {
  std::vector<std::string> issues;
  if (!(cfg.period > 0.0)) issues.emplace_back("controller period must be positive");
  if (!(cfg.deadband >= quantization_step)) {
    std::ostringstream os;
    os << "deadband " << cfg.deadband << " Pa is below the sensor quantization step "
       << quantization_step << " Pa";
    issues.push_back(os.str());
  }
  if (!(cfg.setpoint >= 0.0)) issues.emplace_back("setpoint must be >= 0 gauge");
  return issues;
}

ValveCommand control_step(const ControllerConfig& cfg, const ValveCommand& previous,
                          double sensed_gauge) {
  const double sp = cfg.setpoint;
  const double db = cfg.deadband;
  ValveCommand cmd;
  cmd.inlet = previous.inlet ? sensed_gauge < sp : sensed_gauge < sp - 2.0 * db;
  if (!cmd.inlet) {
    cmd.outlet = previous.outlet ? sensed_gauge > sp - db : sensed_gauge > sp + 2.0 * db;
  }
  return cmd;
}

ElementModel build_element_model(const ElementSetup& setup) {
  ElementModel m;
  const double p_max = setup.plant.supply_pressure + 5.0e3;
  m.backbone = finger::BackboneTable(setup.finger, p_max, 250.0);
  m.volume_multiplier = static_cast<double>(setup.finger_count);
  return m;
}

std::vector<SetpointEvent> staircase_schedule(int element, double step_pressure, int steps_up,
                                              double dwell) {
  std::vector<SetpointEvent> s;
  s.push_back({0.0, element, 0.0});
  int i = 1;
  for (int k = 1; k <= steps_up; ++k, ++i) s.push_back({i * dwell, element, k * step_pressure});
  for (int k = steps_up - 1; k >= 0; --k, ++i) {
    s.push_back({i * dwell, element, k * step_pressure});
  }
  return s;
}

ElementTrace simulate_element(const ElementSetup& setup, const ElementModel& model, int index,
                              const std::vector<SetpointEvent>& schedule,
                              const std::vector<Disturbance>& disturbances,
                              const ClosedLoopOptions& opt) {
  if (!(opt.duration > 0.0)) throw DomainError("duration must be positive");
  const auto& plant = setup.plant;
  const double dt = plant.plant_step;
  const auto volume = [&](double p_gauge) {
    return model.volume_multiplier * model.backbone.chamber_volume(std::max(0.0, p_gauge));
  };
  const long n_steps = std::lround(opt.duration / dt);
  const long ratio = std::max(1L, std::lround(setup.controller.period / dt));
  const long latency = std::lround(plant.valve_latency / dt);

  std::vector<std::pair<long, double>> setpoints;
  for (const auto& ev : schedule) {
    if (ev.element == index) setpoints.emplace_back(std::lround(ev.t_start / dt), ev.setpoint);
  }
  std::stable_sort(setpoints.begin(), setpoints.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<long, double>> drops;
  for (const auto& d : disturbances) {
    if (d.element == index) drops.emplace_back(std::lround(d.time / dt), d.pressure_drop);
  }
  std::stable_sort(drops.begin(), drops.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);

  ControllerConfig ctrl = setup.controller;
  const auto& hyst = setup.finger.hysteresis;
  auto angle_of = [&](double q, double p) {
    finger::HysteresisMemory tmp;
    tmp.effective_pressure = q;
    tmp.pressure = p;
    return model.backbone.angle(hyst, tmp);
  };
  finger::HysteresisMemory memory;
  if (opt.initial_pressure > 0.0) {
    memory = finger::advance(hyst, memory, opt.initial_pressure, angle_of);
  }

  ElementTrace trace;
  trace.name = setup.name;
  trace.rows.reserve(static_cast<std::size_t>(n_steps + 1));
  auto state = pneumatics::initial_state(plant, opt.initial_pressure, volume);
  ValveCommand command;
  std::deque<ValveCommand> pipeline(static_cast<std::size_t>(latency), ValveCommand{});
  double sensed = 0.0;
  std::size_t next_sp = 0, next_drop = 0;

  for (long k = 0; k <= n_steps; ++k) {
    while (next_sp < setpoints.size() && setpoints[next_sp].first <= k) {
      ctrl.setpoint = setpoints[next_sp++].second;
    }
    while (next_drop < drops.size() && drops[next_drop].first <= k) {
      state = pneumatics::apply_pressure_drop(plant, state, drops[next_drop++].second, volume);
    }
    if (k % ratio == 0) {
      sensed = pneumatics::sample_sensor(plant, state, rng).value - plant.atmosphere;
      const ValveCommand next = control_step(ctrl, command, sensed);
      if (next.inlet && !command.inlet) ++trace.inlet_activations;
      if (next.outlet && !command.outlet) ++trace.outlet_activations;
      command = next;
    }
    ValveCommand applied = command;
    if (latency > 0) {
      pipeline.push_back(command);
      applied = pipeline.front();
      pipeline.pop_front();
    }
    const double p_true = state.chamber_pressure - plant.atmosphere;
    memory = finger::advance(hyst, memory, std::max(0.0, p_true), angle_of);
    trace.rows.push_back({static_cast<double>(k) * dt, ctrl.setpoint, p_true, sensed,
                          applied.inlet, applied.outlet, model.backbone.angle(hyst, memory)});
    if (k < n_steps) {
      state = pneumatics::plant_step(plant, state, applied, volume);
      state.time = static_cast<double>(k + 1) * dt;
    }
  }
  trace.final_state = state;
  return trace;
}

std::vector<ElementTrace> run_closed_loop(const std::vector<ElementSetup>& elements,
                                          const std::vector<ElementModel>& models,
                                          const std::vector<SetpointEvent>& schedule,
                                          const std::vector<Disturbance>& disturbances,
                                          const ClosedLoopOptions& options) {
  if (models.size() != elements.size()) {
    throw DomainError("one element model is needed per element");
  }
  std::vector<ElementTrace> out;
  out.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    out.push_back(simulate_element(elements[i], models[i], static_cast<int>(i), schedule,
                              disturbances, options));
  }
  return out;
}

std::vector<ElementTrace> run_closed_loop(const std::vector<ElementSetup>& elements,
                                          const std::vector<SetpointEvent>& schedule,
                                          const std::vector<Disturbance>& disturbances,
                                          const ClosedLoopOptions& options) {
  std::vector<ElementModel> models;
  models.reserve(elements.size());
  for (const auto& e : elements) models.push_back(build_element_model(e));
  return run_closed_loop(elements, models, schedule, disturbances, options);
}

}  // namespace softhand::controller
