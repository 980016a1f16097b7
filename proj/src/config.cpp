#include "softhand/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <variant>
#include <sstream>

#include "softhand/bindings.hpp"

namespace softhand {

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  os << "invalid configuration";
  for (const auto& i : issues) os << "\n  " << i.key << ": " << i.message;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ConfigError::ConfigError(std::string key, std::string message)
    : ConfigError(std::vector<ConfigIssue>{{std::move(key), std::move(message)}}) {}

}  // namespace softhand

namespace softhand::config {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

class Reader {
 public:
  std::vector<ConfigIssue> issues;

  void issue(const std::string& key, const std::string& message) {
    issues.push_back({key, message});
  }

  // Flags keys outside `allowed`.
  void keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) return;
    for (const auto& [k, v] : obj.items()) {
      const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                  [&](const char* a) { return k == a; });
      if (!ok) issue(join(path, k), "unknown key");
    }
  }

  const json* object(const json& parent, const std::string& path, const char* key,
                     bool required) {
    if (!parent.is_object() || !parent.contains(key)) {
      if (required) issue(join(path, key), "required section is missing");
      return nullptr;
    }
    const json& v = parent.at(key);
    if (!v.is_object()) {
      issue(join(path, key), "must be an object");
      return nullptr;
    }
    return &v;
  }

  double number(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      issue(join(path, key), "must be a finite number");
      return fallback;
    }
    return v.get<double>();
  }

  double positive(const json& obj, const std::string& path, const char* key, double fallback) {
    const double v = number(obj, path, key, fallback);
    if (!(v > 0.0)) issue(join(path, key), "must be positive");
    return v;
  }

  double non_negative(const json& obj, const std::string& path, const char* key,
                      double fallback) {
    const double v = number(obj, path, key, fallback);
    if (!(v >= 0.0)) issue(join(path, key), "must be >= 0");
    return v;
  }

  int integer(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      issue(join(path, key), "must be an integer");
      return fallback;
    }
    return v.get<int>();
  }

  std::string text(const json& obj, const std::string& path, const char* key,
                   const std::string& fallback, bool required = false) {
    if (!obj.contains(key)) {
      if (required) issue(join(path, key), "is required");
      return fallback;
    }
    if (!obj.at(key).is_string()) {
      issue(join(path, key), "must be a string");
      return fallback;
    }
    return obj.at(key).get<std::string>();
  }

  template <std::size_t N>
  std::array<double, N> numbers(const json& obj, const std::string& path, const char* key,
                                std::array<double, N> fallback, double scale) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != N) {
      issue(join(path, key), "must be an array of " + std::to_string(N) + " numbers");
      return fallback;
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
      if (!v[i].is_number()) {
        issue(join(path, key) + "[" + std::to_string(i) + "]", "must be a number");
        return fallback;
      }
      out[i] = v[i].get<double>() * scale;
    }
    return out;
  }
};

void read_actuator(Reader& r, const json& a, actuator::ActuatorSpec& spec) {
  const std::string p = "actuator";
  r.keys(a, p, {"inner_radius_mm", "wall_thickness_mm", "rest_length_mm", "ring_count",
                "ring_cross_section_mm2", "silicone", "reinforcement"});
  spec.inner_radius = r.positive(a, p, "inner_radius_mm", spec.inner_radius / units::mm) * units::mm;
  spec.wall_thickness = r.number(a, p, "wall_thickness_mm", spec.wall_thickness / units::mm) * units::mm;
  if (!(spec.wall_thickness >= actuator::minimum_wall_thickness)) {
    std::ostringstream os;
    os << spec.wall_thickness / units::mm << " mm is below the 2 mm minimum wall thickness";
    r.issue(join(p, "wall_thickness_mm"), os.str());
  }
  spec.rest_length = r.positive(a, p, "rest_length_mm", spec.rest_length / units::mm) * units::mm;
  spec.ring_count = r.integer(a, p, "ring_count", spec.ring_count);
  if (spec.ring_count < 1) r.issue(join(p, "ring_count"), "must be at least 1");
  spec.ring_cross_section_area =
      r.positive(a, p, "ring_cross_section_mm2", spec.ring_cross_section_area / units::mm2) *
      units::mm2;
  const auto silicone = r.text(a, p, "silicone", "ogden_set3");
  const auto sm = materials::find_preset(silicone);
  if (!sm || !std::holds_alternative<materials::OgdenParameters>(*sm)) {
    r.issue(join(p, "silicone"), "unknown Ogden preset '" + silicone + "'");
  } else {
    spec.silicone = std::get<materials::OgdenParameters>(*sm);
  }
  const auto reinf = r.text(a, p, "reinforcement", "pet");
  const auto rm = materials::find_preset(reinf);
  if (!rm || !std::holds_alternative<materials::LinearElasticParameters>(*rm)) {
    r.issue(join(p, "reinforcement"), "unknown linear-elastic preset '" + reinf + "'");
  } else {
    spec.reinforcement = std::get<materials::LinearElasticParameters>(*rm);
  }
}

void read_exoskeleton(Reader& r, const json& e, exoskeleton::ExoskeletonSpec& spec) {
  const std::string p = "exoskeleton";
  r.keys(e, p, {"material", "hinges", "joint_stiffnesses_Nmm_per_rad", "segment_lengths_mm",
                "segment_masses_g", "gravity_m_s2"});
  const auto mat = r.text(e, p, "material", "mr_set3");
  const auto mm = materials::find_preset(mat);
  if (!mm || !std::holds_alternative<materials::MooneyRivlinParameters>(*mm)) {
    r.issue(join(p, "material"), "unknown Mooney-Rivlin preset '" + mat + "'");
  } else {
    spec.material = std::get<materials::MooneyRivlinParameters>(*mm);
  }
  auto hinges = exoskeleton::default_hinges();
  if (e.contains("hinges")) {
    const json& h = e.at("hinges");
    if (!h.is_array() || h.size() != 3) {
      r.issue(join(p, "hinges"), "must be an array of 3 hinge objects");
    } else {
      for (std::size_t j = 0; j < 3; ++j) {
        const std::string hp = join(p, "hinges[" + std::to_string(j) + "]");
        r.keys(h[j], hp, {"width_mm", "thickness_mm", "length_mm"});
        hinges[j].width = r.positive(h[j], hp, "width_mm", hinges[j].width / units::mm) * units::mm;
        hinges[j].thickness =
            r.positive(h[j], hp, "thickness_mm", hinges[j].thickness / units::mm) * units::mm;
        hinges[j].length =
            r.positive(h[j], hp, "length_mm", hinges[j].length / units::mm) * units::mm;
      }
    }
  }
  spec.joint_stiffnesses = exoskeleton::stiffness_from_material(hinges, spec.material);
  spec.joint_stiffnesses = r.numbers<3>(e, p, "joint_stiffnesses_Nmm_per_rad",
                                        spec.joint_stiffnesses, 1e-3);
  for (double k : spec.joint_stiffnesses) {
    if (!(k > 0.0)) r.issue(join(p, "joint_stiffnesses_Nmm_per_rad"), "must be positive");
  }
  spec.segment_lengths =
      r.numbers<4>(e, p, "segment_lengths_mm", spec.segment_lengths, units::mm);
  for (double l : spec.segment_lengths) {
    if (!(l > 0.0)) r.issue(join(p, "segment_lengths_mm"), "must be positive");
  }
  spec.segment_masses =
      r.numbers<4>(e, p, "segment_masses_g", spec.segment_masses, units::gram);
  for (double m : spec.segment_masses) {
    if (!(m >= 0.0)) r.issue(join(p, "segment_masses_g"), "must be >= 0");
  }
  spec.gravity = r.non_negative(e, p, "gravity_m_s2", spec.gravity);
}

void read_finger(Reader& r, const json& f, Config& cfg) {
  const std::string p = "finger";
  auto& spec = cfg.finger;
  r.keys(f, p, {"moment_arms_mm", "hysteresis", "force_plateau_kPa", "obstacle_distance_mm"});
  spec.moment_arms = r.numbers<3>(f, p, "moment_arms_mm", spec.moment_arms,
                                  units::mm);
  for (double a : spec.moment_arms) {
    if (!(a > 0.0)) r.issue(join(p, "moment_arms_mm"), "must be positive");
  }
  if (const json* h = r.object(f, p, "hysteresis", false)) {
    const std::string hp = join(p, "hysteresis");
    auto& hy = spec.hysteresis;
    r.keys(*h, hp, {"inflate_gain", "deflate_offset_kPa", "transition_slope_deg_per_kPa"});
    hy.inflate_gain = r.positive(*h, hp, "inflate_gain", hy.inflate_gain);
    hy.deflate_offset = r.non_negative(*h, hp, "deflate_offset_kPa", hy.deflate_offset / units::kPa) *
                        units::kPa;
    hy.transition_slope =
        units::radians(r.non_negative(*h, hp, "transition_slope_deg_per_kPa",
                                      units::degrees(hy.transition_slope * units::kPa))) /
        units::kPa;
  }
  cfg.force_plateau_pressure =
      r.number(f, p, "force_plateau_kPa", cfg.force_plateau_pressure / units::kPa) * units::kPa;
  cfg.obstacle_distance =
      r.positive(f, p, "obstacle_distance_mm", cfg.obstacle_distance / units::mm) * units::mm;
}

void read_plant(Reader& r, const json& pl, pneumatics::PlantConfig& c) {
  const std::string p = "plant";
  r.keys(pl, p, {"supply_kPa", "atmosphere_Pa", "temperature_K", "inlet_conductance",
                 "outlet_conductance", "line_conductance", "leak_conductance", "tube_volume_ml",
                 "plant_step_s", "valve_latency_s", "sensor"});
  c.supply_pressure = r.positive(pl, p, "supply_kPa", c.supply_pressure / units::kPa) * units::kPa;
  c.atmosphere = r.positive(pl, p, "atmosphere_Pa", c.atmosphere);
  c.temperature = r.positive(pl, p, "temperature_K", c.temperature);
  c.inlet_conductance = r.non_negative(pl, p, "inlet_conductance", c.inlet_conductance);
  c.outlet_conductance = r.non_negative(pl, p, "outlet_conductance", c.outlet_conductance);
  c.line_conductance = r.positive(pl, p, "line_conductance", c.line_conductance);
  c.leak_conductance = r.non_negative(pl, p, "leak_conductance", c.leak_conductance);
  c.tube_volume = r.positive(pl, p, "tube_volume_ml", c.tube_volume * 1e6) * 1e-6;
  c.plant_step = r.positive(pl, p, "plant_step_s", c.plant_step);
  c.valve_latency = r.non_negative(pl, p, "valve_latency_s", c.valve_latency);
  if (const json* s = r.object(pl, p, "sensor", false)) {
    const std::string sp = join(p, "sensor");
    r.keys(*s, sp, {"noise_sigma_kPa", "span_low_kPa", "span_high_kPa", "bits"});
    auto& se = c.sensor;
    se.noise_sigma = r.non_negative(*s, sp, "noise_sigma_kPa", se.noise_sigma / units::kPa) * units::kPa;
    se.span_low = r.number(*s, sp, "span_low_kPa", se.span_low / units::kPa) * units::kPa;
    se.span_high = r.number(*s, sp, "span_high_kPa", se.span_high / units::kPa) * units::kPa;
    se.bits = r.integer(*s, sp, "bits", se.bits);
  }
}

void read_controller(Reader& r, const json& c, controller::ControllerConfig& cc) {
  const std::string p = "controller";
  r.keys(c, p, {"deadband_kPa", "period_s"});
  cc.deadband = r.positive(c, p, "deadband_kPa", cc.deadband / units::kPa) * units::kPa;
  cc.period = r.positive(c, p, "period_s", cc.period);
}

void read_elements(Reader& r, const json& tree, Config& cfg) {
  if (!tree.contains("elements")) {
    r.issue("elements", "required section is missing");
    return;
  }
  const json& e = tree.at("elements");
  if (!e.is_array() || e.empty()) {
    r.issue("elements", "must be a non-empty array");
    return;
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string p = "elements[" + std::to_string(i) + "]";
    ElementConfig el;
    r.keys(e[i], p, {"name", "finger_count", "plant_scale"});
    el.name = r.text(e[i], p, "name", "", true);
    el.finger_count = r.integer(e[i], p, "finger_count", 1);
    if (el.finger_count < 1) r.issue(join(p, "finger_count"), "must be at least 1");
    el.plant_scale = r.positive(e[i], p, "plant_scale", 1.0);
    for (const auto& other : cfg.elements) {
      if (other.name == el.name) r.issue(join(p, "name"), "duplicate element '" + el.name + "'");
    }
    cfg.elements.push_back(el);
  }
}

void read_fits(Reader& r, const json& tree, Config& cfg) {
  const json* cal = r.object(tree, "", "calibration", false);
  if (!cal) return;
  r.keys(*cal, "calibration", {"fits"});
  if (!cal->contains("fits")) return;
  const json& fits = cal->at("fits");
  if (!fits.is_array()) {
    r.issue("calibration.fits", "must be an array");
    return;
  }
  static const std::vector<std::string> bindings = {"actuator", "exoskeleton", "finger", "plant"};
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const std::string p = "calibration.fits[" + std::to_string(i) + "]";
    const json& f = fits[i];
    r.keys(f, p, {"name", "binding", "observations", "parameters", "seed", "restarts",
                  "max_evaluations"});
    FitConfig fc;
    fc.name = r.text(f, p, "name", "", true);
    fc.binding = r.text(f, p, "binding", "", true);
    if (std::find(bindings.begin(), bindings.end(), fc.binding) == bindings.end()) {
      r.issue(join(p, "binding"), "unknown binding '" + fc.binding + "'");
    }
    fc.observations = r.text(f, p, "observations", "", true);
    fc.options.seed = static_cast<std::uint64_t>(r.integer(f, p, "seed", 1));
    fc.options.restarts = r.integer(f, p, "restarts", fc.options.restarts);
    fc.options.max_evaluations = r.integer(f, p, "max_evaluations", fc.options.max_evaluations);
    if (!f.contains("parameters") || !f.at("parameters").is_array() ||
        f.at("parameters").empty()) {
      r.issue(join(p, "parameters"), "must be a non-empty array");
    } else {
      const json& ps = f.at("parameters");
      for (std::size_t j = 0; j < ps.size(); ++j) {
        const std::string pp = join(p, "parameters[" + std::to_string(j) + "]");
        r.keys(ps[j], pp, {"name", "lower", "upper"});
        calibration::ParameterBound b;
        b.name = r.text(ps[j], pp, "name", "", true);
        b.lower = r.number(ps[j], pp, "lower", 0.0);
        b.upper = r.number(ps[j], pp, "upper", 0.0);
        if (!(b.lower < b.upper)) r.issue(pp, "lower must be below upper");
        fc.bounds.push_back(b);
      }
    }
    cfg.fits.push_back(fc);
  }
}

bool known_kind(const std::string& s, ScenarioKind& out) {
  const auto& names = kind_names();
  const auto it = std::find(names.begin(), names.end(), s);
  if (it == names.end()) return false;
  out = static_cast<ScenarioKind>(it - names.begin());
  return true;
}

// Required parameters per scenario kind.
std::vector<const char*> required_parameters(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::elongation_sweep:
    case ScenarioKind::finger_sweep:
    case ScenarioKind::force_sweep:
      return {"pressures_kPa"};
    case ScenarioKind::deflection_sweep:
      return {"loads_N"};
    case ScenarioKind::staircase:
      return {"step_kPa", "steps_up", "dwell_s"};
    case ScenarioKind::hold:
      return {"setpoint_kPa", "duration_s"};
    case ScenarioKind::hysteresis_loop:
      return {"peak_kPa", "step_kPa"};
    case ScenarioKind::leak_recovery:
      return {"setpoint_kPa", "duration_s", "leak_conductance"};
  }
  return {};
}

void read_scenarios(Reader& r, const json& tree, Config& cfg) {
  if (!tree.contains("scenarios")) {
    r.issue("scenarios", "required section is missing");
    return;
  }
  const json& s = tree.at("scenarios");
  if (!s.is_array()) {
    r.issue("scenarios", "must be an array");
    return;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string p = "scenarios[" + std::to_string(i) + "]";
    const json& sc = s[i];
    r.keys(sc, p, {"name", "kind", "repetitions", "seed", "parameters", "assertions"});
    ScenarioConfig c;
    c.name = r.text(sc, p, "name", "", true);
    const auto kind = r.text(sc, p, "kind", "", true);
    if (!kind.empty() && !known_kind(kind, c.kind)) {
      r.issue(join(p, "kind"), "unknown scenario kind '" + kind + "'");
    }
    c.repetitions = r.integer(sc, p, "repetitions", c.repetitions);
    if (c.repetitions < 1) r.issue(join(p, "repetitions"), "must be at least 1");
    const int seed = r.integer(sc, p, "seed", 1);
    if (seed < 0) r.issue(join(p, "seed"), "must be >= 0");
    c.seed = static_cast<std::uint64_t>(std::max(0, seed));
    if (const json* pa = r.object(sc, p, "parameters", false)) c.parameters = *pa;
    if (const json* as = r.object(sc, p, "assertions", false)) c.assertions = *as;
    if (known_kind(kind, c.kind)) {
      for (const char* key : required_parameters(c.kind)) {
        if (!c.parameters.contains(key)) {
          r.issue(join(p, std::string("parameters.") + key), "required for kind '" + kind + "'");
        }
      }
    }
    if (c.parameters.contains("element")) {
      const auto& el = c.parameters.at("element");
      const bool found = el.is_string() &&
                         std::any_of(cfg.elements.begin(), cfg.elements.end(),
                                     [&](const ElementConfig& e) { return e.name == el.get<std::string>(); });
      if (!found) r.issue(join(p, "parameters.element"), "unknown element");
    }
    for (const auto& other : cfg.scenarios) {
      if (other.name == c.name) r.issue(join(p, "name"), "duplicate scenario '" + c.name + "'");
    }
    cfg.scenarios.push_back(std::move(c));
  }
}

Config read(const json& tree, const std::string& base_dir, Reader& r) {
  Config cfg;
  cfg.base_dir = base_dir;
  cfg.finger = finger::FingerSpec{};
  if (!tree.is_object()) {
    r.issue("", "configuration must be a JSON object");
    return cfg;
  }
  r.keys(tree, "", {"actuator", "exoskeleton", "finger", "plant", "controller", "elements",
                    "calibration", "scenarios"});
  if (const json* a = r.object(tree, "", "actuator", true)) read_actuator(r, *a, cfg.finger.actuator);
  if (const json* e = r.object(tree, "", "exoskeleton", true)) {
    read_exoskeleton(r, *e, cfg.finger.exoskeleton);
  }
  if (const json* f = r.object(tree, "", "finger", true)) read_finger(r, *f, cfg);
  if (const json* p = r.object(tree, "", "plant", true)) read_plant(r, *p, cfg.plant);
  if (const json* c = r.object(tree, "", "controller", true)) {
    read_controller(r, *c, cfg.controller);
  }
  read_elements(r, tree, cfg);
  read_fits(r, tree, cfg);
  read_scenarios(r, tree, cfg);

  if (tree.contains("plant")) {
    for (const auto& m : pneumatics::validate(cfg.plant, cfg.controller.period)) r.issue("plant", m);
  }
  if (tree.contains("controller")) {
    for (const auto& m : controller::validate(cfg.controller, cfg.plant.sensor.quantization_step())) {
      r.issue("controller.deadband_kPa", m);
    }
  }
  return cfg;
}

}  // namespace

const std::vector<std::string>& kind_names() {
  static const std::vector<std::string> names = {
      "elongation_sweep", "deflection_sweep", "finger_sweep", "force_sweep",
      "staircase",        "hold",             "hysteresis_loop", "leak_recovery"};
  return names;
}

const char* kind_name(ScenarioKind k) { return kind_names()[static_cast<int>(k)].c_str(); }

std::vector<ConfigIssue> validate(const json& tree) {
  Reader r;
  read(tree, ".", r);
  return r.issues;
}

void finalize(Config& cfg) {
  auto& f = cfg.finger;
  f.contact_thrust_limit = std::numeric_limits<double>::infinity();
  if (cfg.force_plateau_pressure > 0.0) {
    f.contact_thrust_limit =
        finger::contact_thrust(f, cfg.force_plateau_pressure, cfg.obstacle_distance);
  }
}

Config parse(const json& tree, const std::string& base_dir) {
  Reader r;
  Config cfg = read(tree, base_dir, r);
  if (!r.issues.empty()) throw ConfigError(r.issues);
  finalize(cfg);
  return cfg;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open configuration file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
}

Config load(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  return parse(read_json(path), dir.empty() ? "." : dir.string());
}

pneumatics::PlantConfig element_plant(const Config& cfg, const ElementConfig& e) {
  auto p = cfg.plant;
  p.inlet_conductance *= e.plant_scale;
  p.outlet_conductance *= e.plant_scale;
  p.line_conductance *= e.plant_scale;
  p.leak_conductance *= e.plant_scale;
  p.tube_volume *= e.plant_scale;
  return p;
}

std::vector<controller::ElementSetup> element_setups(const Config& cfg) {
  std::vector<controller::ElementSetup> out;
  for (const auto& e : cfg.elements) {
    controller::ElementSetup s;
    s.name = e.name;
    s.controller = cfg.controller;
    s.plant = element_plant(cfg, e);
    s.finger = cfg.finger;
    s.finger_count = e.finger_count;
    out.push_back(std::move(s));
  }
  return out;
}

int element_index(const Config& cfg, const std::string& name) {
  for (std::size_t i = 0; i < cfg.elements.size(); ++i) {
    if (cfg.elements[i].name == name) return static_cast<int>(i);
  }
  throw ConfigError("elements", "unknown element '" + name + "'");
}

const ScenarioConfig& find_scenario(const Config& cfg, const std::string& name) {
  for (const auto& s : cfg.scenarios) {
    if (s.name == name) return s;
  }
  throw ConfigError("scenarios", "unknown scenario '" + name + "'");
}

const FitConfig& find_fit(const Config& cfg, const std::string& name) {
  for (const auto& f : cfg.fits) {
    if (f.name == name) return f;
  }
  throw ConfigError("calibration.fits", "unknown fit '" + name + "'");
}

calibration::ModelBinding make_binding(const Config& cfg, const FitConfig& fit) {
  if (fit.binding == "actuator") return bindings::actuator_binding(cfg.finger.actuator);
  if (fit.binding == "exoskeleton") return bindings::exoskeleton_binding(cfg.finger.exoskeleton);
  if (fit.binding == "finger") return bindings::finger_binding(cfg.finger);
  if (fit.binding == "plant") return bindings::plant_binding(cfg.plant, cfg.finger, 1);
  throw ConfigError("calibration.fits", "unknown binding '" + fit.binding + "'");
}

calibration::ObservationSet load_fit_observations(const Config& cfg, const FitConfig& fit) {
  std::filesystem::path p(fit.observations);
  if (p.is_relative()) p = std::filesystem::path(cfg.base_dir) / p;
  return calibration::load_observations(p.string());
}

void apply_fit(Config& cfg, const FitConfig& fit, const calibration::ParameterMap& params) {
  if (fit.binding == "actuator") cfg.finger.actuator = bindings::apply(cfg.finger.actuator, params);
  if (fit.binding == "exoskeleton") {
    cfg.finger.exoskeleton = bindings::apply(cfg.finger.exoskeleton, params);
  }
  if (fit.binding == "finger") cfg.finger = bindings::apply(cfg.finger, params);
  if (fit.binding == "plant") cfg.plant = bindings::apply(cfg.plant, params);
  finalize(cfg);
}

}  // namespace softhand::config
