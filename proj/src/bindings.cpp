#include "softhand/bindings.hpp"

#include <cmath>
#include <memory>

#include "softhand/errors.hpp"

namespace softhand::bindings {

using calibration::ModelBinding;
using calibration::Observation;
using calibration::ParameterMap;

namespace {

double input(const Observation& o, const std::string& name, double fallback) {
  const auto it = o.inputs.find(name);
  return it == o.inputs.end() ? fallback : it->second;
}

double required(const Observation& o, const std::string& name) {
  const auto it = o.inputs.find(name);
  if (it == o.inputs.end()) {
    throw DomainError("observation '" + o.observable + "' needs input '" + name + "'");
  }
  return it->second;
}

const double* find(const ParameterMap& p, const char* name) {
  const auto it = p.find(name);
  return it == p.end() ? nullptr : &it->second;
}

void scale_silicone(materials::OgdenParameters& m, double s) {
  for (auto& t : m.terms) t.mu *= s;
}

[[noreturn]] void unknown(const std::string& binding, const std::string& what) {
  throw DomainError("binding '" + binding + "' cannot predict '" + what + "'");
}

}  // namespace

actuator::ActuatorSpec apply(actuator::ActuatorSpec spec, const ParameterMap& p) {
  if (auto v = find(p, "inner_radius_mm")) spec.inner_radius = *v * units::mm;
  if (auto v = find(p, "wall_thickness_mm")) spec.wall_thickness = *v * units::mm;
  if (auto v = find(p, "rest_length_mm")) spec.rest_length = *v * units::mm;
  if (auto v = find(p, "silicone_scale")) scale_silicone(spec.silicone, *v);
  return spec;
}

exoskeleton::ExoskeletonSpec apply(exoskeleton::ExoskeletonSpec spec, const ParameterMap& p) {
  static const char* names[3] = {"k_proximal", "k_middle", "k_distal"};
  for (int j = 0; j < 3; ++j) {
    if (auto v = find(p, names[j])) spec.joint_stiffnesses[j] = *v * 1e-3;
  }
  if (auto v = find(p, "stiffness_scale")) {
    for (auto& k : spec.joint_stiffnesses) k *= *v;
  }
  return spec;
}

finger::FingerSpec apply(finger::FingerSpec spec, const ParameterMap& p) {
  if (auto v = find(p, "moment_arm_mm")) spec.moment_arms.fill(*v * units::mm);
  static const char* arms[3] = {"moment_arm_proximal_mm", "moment_arm_middle_mm",
                                "moment_arm_distal_mm"};
  for (int j = 0; j < 3; ++j) {
    if (auto v = find(p, arms[j])) spec.moment_arms[j] = *v * units::mm;
  }
  if (auto v = find(p, "stiffness_scale")) {
    for (auto& k : spec.exoskeleton.joint_stiffnesses) k *= *v;
  }
  if (auto v = find(p, "silicone_scale")) scale_silicone(spec.actuator.silicone, *v);
  if (auto v = find(p, "deflate_offset_kPa")) spec.hysteresis.deflate_offset = *v * units::kPa;
  if (auto v = find(p, "inflate_gain")) spec.hysteresis.inflate_gain = *v;
  if (auto v = find(p, "transition_slope_deg_per_kPa")) {
    spec.hysteresis.transition_slope = units::radians(*v) / units::kPa;
  }
  return spec;
}

pneumatics::PlantConfig apply(pneumatics::PlantConfig cfg, const ParameterMap& p) {
  if (auto v = find(p, "inlet_conductance")) cfg.inlet_conductance = *v;
  if (auto v = find(p, "outlet_conductance")) cfg.outlet_conductance = *v;
  if (auto v = find(p, "line_conductance")) cfg.line_conductance = *v;
  if (auto v = find(p, "leak_conductance")) cfg.leak_conductance = *v;
  if (auto v = find(p, "tube_volume_ml")) cfg.tube_volume = *v * 1e-6;
  return cfg;
}

ModelBinding actuator_binding(const actuator::ActuatorSpec& base) {
  ModelBinding b;
  b.name = "actuator";
  b.parameters = {"inner_radius_mm", "wall_thickness_mm", "rest_length_mm", "silicone_scale"};
  b.observables = {"elongation_mm", "axial_stretch", "chamber_volume_ml"};
  b.predict = [base](const ParameterMap& p, const Observation& o) {
    if (auto v = find(p, o.observable.c_str())) return *v;
    const auto spec = apply(base, p);
    const auto r = actuator::axial_stretch_for_pressure(spec, required(o, "pressure_kPa") * units::kPa);
    if (o.observable == "elongation_mm") return r.elongation / units::mm;
    if (o.observable == "axial_stretch") return r.axial_stretch;
    if (o.observable == "chamber_volume_ml") return r.chamber_volume * 1e6;
    unknown("actuator", o.observable);
  };
  return b;
}

ModelBinding exoskeleton_binding(const exoskeleton::ExoskeletonSpec& base) {
  ModelBinding b;
  b.name = "exoskeleton";
  b.parameters = {"k_proximal", "k_middle", "k_distal", "stiffness_scale"};
  b.observables = {"displacement_mm", "angle_proximal_deg", "angle_middle_deg",
                   "angle_distal_deg"};
  b.predict = [base](const ParameterMap& p, const Observation& o) {
    if (auto v = find(p, o.observable.c_str())) return *v;
    const auto spec = apply(base, p);
    const auto s = exoskeleton::deflection_under_load(spec, required(o, "load_N"),
                                                      input(o, "gravity", 1.0) != 0.0);
    if (o.observable == "displacement_mm") return s.fingertip_vertical_displacement / units::mm;
    if (o.observable == "angle_proximal_deg") return units::degrees(s.joint_angles[0]);
    if (o.observable == "angle_middle_deg") return units::degrees(s.joint_angles[1]);
    if (o.observable == "angle_distal_deg") return units::degrees(s.joint_angles[2]);
    unknown("exoskeleton", o.observable);
  };
  return b;
}

ModelBinding finger_binding(const finger::FingerSpec& base) {
  ModelBinding b;
  b.name = "finger";
  b.parameters = {"moment_arm_mm",         "moment_arm_proximal_mm",
                  "moment_arm_middle_mm",  "moment_arm_distal_mm",
                  "stiffness_scale",       "silicone_scale",
                  "deflate_offset_kPa",    "inflate_gain",
                  "transition_slope_deg_per_kPa"};
  b.observables = {"bending_angle_deg", "fingertip_displacement_mm"};
  b.predict = [base](const ParameterMap& p, const Observation& o) {
    if (auto v = find(p, o.observable.c_str())) return *v;
    const auto spec = apply(base, p);
    const double pk = required(o, "pressure_kPa") * units::kPa;
    const double peak = input(o, "peak_kPa", 0.0) * units::kPa;
    std::vector<double> history{0.0};
    if (peak > pk) history.push_back(peak);
    history.push_back(pk);
    const auto s = finger::bend_with_hysteresis(spec, history);
    if (o.observable == "bending_angle_deg") return units::degrees(s.bending_angle);
    if (o.observable == "fingertip_displacement_mm") return s.fingertip_displacement / units::mm;
    unknown("finger", o.observable);
  };
  return b;
}

ModelBinding plant_binding(const pneumatics::PlantConfig& base, const finger::FingerSpec& finger,
                           int finger_count) {
  auto table = std::make_shared<finger::BackboneTable>(finger, base.supply_pressure + 5.0e3, 250.0);
  const double multiplier = static_cast<double>(finger_count);
  ModelBinding b;
  b.name = "plant";
  b.parameters = {"inlet_conductance", "outlet_conductance", "line_conductance",
                  "leak_conductance", "tube_volume_ml"};
  b.observables = {"pressure_kPa"};
  b.predict = [base, table, multiplier](const ParameterMap& p, const Observation& o) {
    if (auto v = find(p, o.observable.c_str())) return *v;
    if (o.observable != "pressure_kPa") unknown("plant", o.observable);
    const auto cfg = apply(base, p);
    const auto volume = [&](double g) { return multiplier * table->chamber_volume(std::max(0.0, g)); };
    const int mode = static_cast<int>(input(o, "mode", 1.0));
    const pneumatics::ValveCommand cmd{mode > 0, mode < 0};
    auto state = pneumatics::initial_state(cfg, input(o, "from_kPa", 0.0) * units::kPa, volume);
    const long steps = std::lround(required(o, "t_s") / cfg.plant_step);
    for (long k = 0; k < steps; ++k) state = pneumatics::plant_step(cfg, state, cmd, volume);
    return (state.chamber_pressure - cfg.atmosphere) / units::kPa;
  };
  return b;
}

}  // namespace softhand::bindings
