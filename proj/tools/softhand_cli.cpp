#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "softhand/config.hpp"
#include "softhand/errors.hpp"
#include "softhand/materials.hpp"
#include "softhand/scenario.hpp"

namespace {

using namespace softhand;

enum Exit { pass = 0, assertion_failure = 1, config_error = 2, simulation_error = 3 };

struct Options {
  std::string config = "config/default.json";
  std::vector<std::string> scenarios;
  std::vector<std::string> fits;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string what = "finger";
  double from = 0.0, to = 100.0, step = 5.0;
};

nlohmann::json fit_json(const config::FitConfig& f, const calibration::FitResult& r) {
  nlohmann::json j;
  j["fit"] = f.name;
  j["binding"] = f.binding;
  j["parameters"] = r.parameters;
  j["residual_rms"] = r.residual_rms;
  j["iterations"] = r.iterations;
  j["evaluations"] = r.evaluations;
  j["converged"] = r.converged;
  return j;
}

calibration::FitResult calibrate_one(config::Config& cfg, const std::string& name,
                                     std::optional<std::uint64_t> seed) {
  const auto& f = config::find_fit(cfg, name);
  auto opt = f.options;
  if (seed) opt.seed = *seed;
  const auto result = calibration::fit(config::make_binding(cfg, f),
                                       f.bounds, config::load_fit_observations(cfg, f), opt);
  config::apply_fit(cfg, f, result.parameters);
  return result;
}

int cmd_validate(const Options& o) {
  const auto tree = config::read_json(o.config);
  const auto issues = config::validate(tree);
  for (const auto& i : issues) std::cout << i.key << ": " << i.message << '\n';
  if (!issues.empty()) return config_error;
  std::cout << o.config << ": ok\n";
  return pass;
}

int cmd_list(const Options& o) {
  std::cout << "presets:\n";
  for (const auto& n : materials::preset_names()) std::cout << "  " << n << '\n';
  std::cout << "scenario kinds:\n";
  for (const auto& n : config::kind_names()) std::cout << "  " << n << '\n';
  if (!std::filesystem::exists(o.config)) return pass;
  const auto cfg = config::load(o.config);
  std::cout << "elements:\n";
  for (const auto& e : cfg.elements) {
    std::cout << "  " << e.name << " (" << e.finger_count << " finger"
              << (e.finger_count > 1 ? "s" : "") << ")\n";
  }
  std::cout << "scenarios:\n";
  for (const auto& s : cfg.scenarios) {
    std::cout << "  " << s.name << " [" << config::kind_name(s.kind) << ", " << s.repetitions
              << " rep]\n";
  }
  std::cout << "fits:\n";
  for (const auto& f : cfg.fits) std::cout << "  " << f.name << " [" << f.binding << "]\n";
  return pass;
}

int cmd_calibrate(const Options& o) {
  auto cfg = config::load(o.config);
  std::vector<std::string> names = o.fits;
  if (names.empty()) {
    for (const auto& f : cfg.fits) names.push_back(f.name);
  }
  std::filesystem::create_directories(o.out_dir);
  for (const auto& n : names) {
    const auto r = calibrate_one(cfg, n, o.seed);
    const auto j = fit_json(config::find_fit(cfg, n), r);
    std::cout << j.dump(2) << '\n';
    std::ofstream(std::filesystem::path(o.out_dir) / (n + "_fit.json")) << j.dump(2) << '\n';
  }
  return pass;
}

int cmd_run(const Options& o) {
  auto cfg = config::load(o.config);
  for (const auto& f : o.fits) calibrate_one(cfg, f, std::nullopt);
  std::vector<std::string> names = o.scenarios;
  if (names.empty()) {
    for (const auto& s : cfg.scenarios) names.push_back(s.name);
  }
  bool ok = true;
  for (const auto& n : names) {
    const auto report = scenario::run_scenario(cfg, n, o.seed);
    scenario::write_report(report, o.out_dir);
    for (const auto& a : report.assertions) {
      std::cout << (a.passed ? "PASS " : "FAIL ") << report.scenario << '.' << a.name << "  "
                << a.detail << '\n';
    }
    if (report.assertions.empty()) std::cout << "DONE " << report.scenario << '\n';
    ok = ok && report.passed();
  }
  return ok ? pass : assertion_failure;
}

int cmd_sweep(const Options& o) {
  auto cfg = config::load(o.config);
  for (const auto& f : o.fits) calibrate_one(cfg, f, std::nullopt);
  static const std::map<std::string, std::pair<config::ScenarioKind, const char*>> kinds = {
      {"elongation", {config::ScenarioKind::elongation_sweep, "pressures_kPa"}},
      {"deflection", {config::ScenarioKind::deflection_sweep, "loads_N"}},
      {"finger", {config::ScenarioKind::finger_sweep, "pressures_kPa"}},
      {"force", {config::ScenarioKind::force_sweep, "pressures_kPa"}},
  };
  const auto it = kinds.find(o.what);
  if (it == kinds.end()) throw ConfigError("--what", "unknown sweep '" + o.what + "'");
  config::ScenarioConfig sc;
  sc.name = o.what + "_sweep";
  sc.kind = it->second.first;
  sc.repetitions = 1;
  sc.parameters[it->second.second] = {{"from", o.from}, {"to", o.to}, {"step", o.step}};
  cfg.scenarios.push_back(sc);
  const auto report = scenario::run_scenario(cfg, sc.name, o.seed);
  for (const auto& path : scenario::write_report(report, o.out_dir)) std::cout << path << '\n';
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft finger simulation and control toolkit"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed = 0;

  const auto common = [&](CLI::App* c) {
    c->add_option("--config", o.config, "configuration file")->capture_default_str();
    c->add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
    c->add_option("--seed", seed, "override the random seed");
  };
  auto* run = app.add_subcommand("run", "run scenarios and check their assertions");
  common(run);
  run->add_option("--scenario", o.scenarios, "scenario name (default: all)");
  run->add_option("--fit", o.fits, "calibration fit to apply first");
  auto* validate = app.add_subcommand("validate", "check a configuration file");
  common(validate);
  auto* list = app.add_subcommand("list", "list presets, scenarios and fits");
  common(list);
  auto* cal = app.add_subcommand("calibrate", "fit model parameters to observations");
  common(cal);
  cal->add_option("--fit", o.fits, "fit name (default: all)");
  auto* sweep = app.add_subcommand("sweep", "tabulate one model over a grid");
  common(sweep);
  sweep->add_option("--what", o.what, "elongation | deflection | finger | force")
      ->capture_default_str();
  sweep->add_option("--from", o.from)->capture_default_str();
  sweep->add_option("--to", o.to)->capture_default_str();
  sweep->add_option("--step", o.step)->capture_default_str();
  sweep->add_option("--fit", o.fits, "calibration fit to apply first");

  CLI11_PARSE(app, argc, argv);
  for (auto* c : {run, validate, list, cal, sweep}) {
    if (c->count("--seed")) o.seed = seed;
  }
  try {
    if (*run) return cmd_run(o);
    if (*validate) return cmd_validate(o);
    if (*list) return cmd_list(o);
    if (*cal) return cmd_calibrate(o);
    if (*sweep) return cmd_sweep(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config_error;
  } catch (const SimulationError& e) {
    std::cerr << "simulation error at t = " << e.time() << " s: " << e.what() << '\n';
    return simulation_error;
  } catch (const calibration::ObjectiveError& e) {
    std::cerr << "calibration error: " << e.what() << " at";
    for (const auto& [k, v] : e.parameters()) std::cerr << ' ' << k << '=' << v;
    std::cerr << '\n';
    return simulation_error;
  } catch (const std::exception& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return simulation_error;
  }
  return pass;
}
