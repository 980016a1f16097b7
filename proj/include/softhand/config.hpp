#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "softhand/calibration.hpp"
#include "softhand/controller.hpp"
#include "softhand/errors.hpp"
#include "softhand/finger.hpp"
#include "softhand/pneumatics.hpp"

namespace softhand::config {

enum class ScenarioKind {
  elongation_sweep,
  deflection_sweep,
  finger_sweep,
  force_sweep,
  staircase,
  hold,
  hysteresis_loop,
  leak_recovery,
};

const char* kind_name(ScenarioKind k);
const std::vector<std::string>& kind_names();

struct ElementConfig {
  std::string name;
  int finger_count = 1;
  double plant_scale = 1.0;  // multiplies conductances and tube volume
};

struct ScenarioConfig {
  std::string name;
  ScenarioKind kind = ScenarioKind::elongation_sweep;
  int repetitions = 5;
  std::uint64_t seed = 1;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json assertions = nlohmann::json::object();
};

struct FitConfig {
  std::string name;
  std::string binding;  // actuator | exoskeleton | finger | plant
  std::string observations;  // CSV path, relative to the config file
  std::vector<calibration::ParameterBound> bounds;
  calibration::FitOptions options;
};

struct Config {
  finger::FingerSpec finger;  // holds the actuator and exoskeleton specs
  double obstacle_distance = 40.0e-3;    // m
  double force_plateau_pressure = 80.0e3;  // Pa; <= 0 disables the contact limit
  pneumatics::PlantConfig plant;
  controller::ControllerConfig controller;
  std::vector<ElementConfig> elements;
  std::vector<FitConfig> fits;
  std::vector<ScenarioConfig> scenarios;
  std::string base_dir = ".";
};

/// Every violated invariant with its key path; empty when the tree is valid.
std::vector<ConfigIssue> validate(const nlohmann::json& tree);

/// Parse and validate; throws ConfigError listing every issue.
Config parse(const nlohmann::json& tree, const std::string& base_dir = ".");
Config load(const std::string& path);
nlohmann::json read_json(const std::string& path);

/// Recompute derived quantities (contact thrust limit) after a spec change.
void finalize(Config& cfg);

pneumatics::PlantConfig element_plant(const Config& cfg, const ElementConfig& e);
std::vector<controller::ElementSetup> element_setups(const Config& cfg);
int element_index(const Config& cfg, const std::string& name);

const ScenarioConfig& find_scenario(const Config& cfg, const std::string& name);
const FitConfig& find_fit(const Config& cfg, const std::string& name);

calibration::ModelBinding make_binding(const Config& cfg, const FitConfig& fit);
calibration::ObservationSet load_fit_observations(const Config& cfg, const FitConfig& fit);

/// Fold fitted parameters back into the configuration.
void apply_fit(Config& cfg, const FitConfig& fit, const calibration::ParameterMap& params);

}  // namespace softhand::config
